// JSON documents: fan files, invariants reports, constants and count
// artifacts. Key order is fixed so identical configurations produce
// byte-identical output.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricint/constants.hpp"
#include "toricint/counting.hpp"
#include "toricint/faces.hpp"
#include "toricint/fan.hpp"

namespace toricint {

using Json = nlohmann::ordered_json;

inline Json fan_to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim;
  Json rays = Json::array();
  for (const IntVec& r : f.rays) {
    Json row = Json::array();
    for (const Int& x : r) row.push_back(static_cast<long long>(x));
    rays.push_back(row);
  }
  j["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : f.max_cones) cones.push_back(c);
  j["max_cones"] = cones;
  j["labels"] = f.ray_labels;
  return j;
}

inline Fan fan_from_json(const Json& j) {
  Fan f;
  f.dim = j.at("dim").get<std::size_t>();
  for (const auto& row : j.at("rays")) {
    IntVec r;
    for (const auto& x : row) r.push_back(Int(x.get<long long>()));
    f.rays.push_back(std::move(r));
  }
  for (const auto& c : j.at("max_cones")) f.max_cones.push_back(c.get<std::vector<std::size_t>>());
  f.ray_labels = j.at("labels").get<std::vector<std::string>>();
  validate_fan(f);
  return f;
}

inline Fan fan_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open fan file: " + path);
  Json j;
  in >> j;
  return fan_from_json(j);
}

inline Json face_names_json(const ArchFace& face, const std::vector<std::string>& names) {
  Json per_place = Json::array();
  for (const FaceSet& f : face.per_place) {
    Json comp = Json::array();
    for (std::size_t c : f) comp.push_back(names.at(c));
    per_place.push_back(comp);
  }
  return per_place;
}

inline Json face_report_to_json(const FaceReport& rep, const std::vector<std::string>& names) {
  Json j;
  j["face"] = face_names_json(rep.face, names);
  j["maximal"] = rep.maximal;
  j["b"] = rep.b;
  j["b_prime"] = rep.b_prime;
  Json tors = Json::array();
  for (const Int& t : rep.pic_torsion) tors.push_back(t.str());
  j["torsion"] = tors;
  if (rep.alpha_defined)
    j["alpha"] = rat_str(rep.alpha);
  else
    j["alpha"] = nullptr;
  j["strictly_convex"] = rep.strictly_convex;
  j["obstructed"] = rep.obstructed;
  if (rep.witness) {
    Json w = Json::array();
    for (const Int& x : *rep.witness) w.push_back(static_cast<long long>(x));
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  Json delta = Json::array();
  for (std::size_t c : rep.delta_components) delta.push_back(names.at(c));
  j["delta"] = delta;
  return j;
}

inline Json analysis_to_json(const PairAnalysis& a, const std::vector<std::string>& names) {
  Json j;
  j["schema"] = "1";
  Json faces = Json::array();
  for (const FaceReport& r : a.maximal_reports) faces.push_back(face_report_to_json(r, names));
  j["faces"] = faces;
  if (a.has_contributing) {
    j["b_max"] = a.contributing.b_max;
    Json cf = Json::array();
    for (const ArchFace& f : a.contributing.faces) cf.push_back(face_names_json(f, names));
    j["contributing"] = cf;
  } else {
    j["b_max"] = nullptr;
    j["contributing"] = Json::array();
  }
  return j;
}

inline std::string real_str(const Real& x, int digits = 25) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

inline Json constant_to_json(const LeadingConstant& lc, const EulerProductResult& euler) {
  Json j;
  j["schema"] = "1";
  j["c"] = real_str(lc.c);
  j["c_fin"] = real_str(lc.c_fin);
  j["c_inf"] = rat_str(lc.c_inf);
  j["tail_bound"] = real_str(lc.enclosure_radius, 6);
  j["exponent"] = lc.log_exponent;
  j["cutoff"] = euler.cutoff_prime;
  return j;
}

inline const char* method_name(CountMethod m) {
  switch (m) {
    case CountMethod::enumerate: return "enumerate";
    case CountMethod::enumerate_safe: return "enumerate_safe";
    case CountMethod::sieve: return "sieve";
  }
  return "enumerate";
}

inline CountMethod method_from_name(const std::string& s) {
  if (s == "enumerate") return CountMethod::enumerate;
  if (s == "enumerate_safe") return CountMethod::enumerate_safe;
  if (s == "sieve") return CountMethod::sieve;
  throw ArgumentError("unknown method: " + s);
}

// Elapsed time is deliberately not part of the artifact: identical
// configurations must serialize byte-identically.
inline Json count_to_json(const CountQuery& q, const CountResult& r) {
  Json j;
  j["schema"] = "1";
  j["bound"] = r.bound;
  j["method"] = method_name(r.method);
  j["workers"] = q.workers;
  j["n_points"] = r.n_points.str();
  j["raw_tuples"] = r.raw_tuples.str();
  return j;
}

inline Json fit_to_json(const FitReport& fit, const std::vector<double>& bounds,
                        double c_reference) {
  Json j;
  j["schema"] = "1";
  j["bounds"] = bounds;
  Json coeffs;
  coeffs["b_log2"] = fit.coeff_log2;
  coeffs["b_log"] = fit.coeff_log1;
  coeffs["b_const"] = fit.coeff_log0;
  j["coefficients"] = coeffs;
  j["c_reference"] = c_reference;
  j["ratios"] = fit.ratios;
  j["remainders"] = fit.remainders;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot open output file: " + path);
  out << content;
}

inline std::string points_to_csv(const std::vector<PointRecord>& pts) {
  std::ostringstream os;
  os << "a1,b0,b1,c0,c1,height\n";
  for (const PointRecord& p : pts)
    os << p.a1 << ',' << p.b0 << ',' << p.b1 << ',' << p.c0 << ',' << p.c1 << ','
       << p.height_value << '\n';
  return os.str();
}

}  // namespace toricint
