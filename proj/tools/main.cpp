// Command-line front end: count, points, invariants, alpha, constant, fit,
// report. Artifacts are JSON (stable key order) or RFC-4180 CSV.
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricint/json_io.hpp"

namespace {

using namespace toricint;

unsigned default_workers() {
  if (const char* env = std::getenv("TORICINT_WORKERS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

struct FanChoice {
  ToricPair pair;
  std::string source;
};

FanChoice load_pair(const std::string& fan_arg, const std::string& boundary_arg) {
  FanChoice fc;
  fc.source = fan_arg;
  if (fan_arg == "builtin:X") {
    fc.pair = make_builtin_x_pair();
  } else if (fan_arg == "builtin:P1") {
    fc.pair = make_gm_pair();
  } else {
    fc.pair.fan = fan_from_file(fan_arg);
    if (boundary_arg.empty())
      throw ArgumentError("--boundary is required with a fan file");
  }
  if (!boundary_arg.empty()) {
    fc.pair.boundary.clear();
    fc.pair.component_names.clear();
    std::stringstream ss(boundary_arg);
    std::string label;
    while (std::getline(ss, label, ',')) {
      fc.pair.boundary.push_back(fc.pair.fan.ray_index(label));
      fc.pair.component_names.push_back(label);
    }
  }
  return fc;
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

Json invariants_json(const FanChoice& fc, unsigned places_n) {
  std::vector<Place> places;
  for (unsigned i = 0; i < places_n; ++i) places.push_back(real_place("v" + std::to_string(i)));
  PairAnalysis a = analyze_pair(fc.pair, places);
  Json j = analysis_to_json(a, fc.pair.component_names);
  j["fan"] = fc.source;
  return j;
}

Json count_artifact(u64 bound, const std::string& method, unsigned workers) {
  CountQuery q{bound, method_from_name(method), workers};
  CountResult r = count(q);
  std::cerr << "count: bound=" << bound << " n_points=" << r.n_points.str()
            << " elapsed=" << r.elapsed_seconds << "s\n";
  return count_to_json(q, r);
}

Json constant_artifact(u64 cutoff, unsigned workers, bool precision_report) {
  ToricPair pair = make_builtin_x_pair();
  PairAnalysis a = analyze_pair(pair, {real_place()});
  const FaceReport* chosen = nullptr;
  for (const FaceReport& r : a.maximal_reports)
    if (!r.obstructed) chosen = &r;
  if (!chosen) throw NoContributingFaceError("no unobstructed face");
  EulerProductResult euler = builtin_euler_product(cutoff, workers);
  LeadingConstant lc =
      assemble_leading_constant(*chosen, archimedean_surface_volume_renormalized(), euler);
  Json j = constant_to_json(lc, euler);
  if (precision_report) {
    j["partial_log_sum"] = real_str(euler.partial_log_sum);
    j["arch_volume"] = real_str(archimedean_surface_volume().value, 6);
    j["arch_volume_renormalized"] = rat_str(archimedean_surface_volume_renormalized());
    j["alpha"] = rat_str(chosen->alpha);
    j["b"] = chosen->b;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integral points of bounded height on a blown-up toric threefold"};
  app.require_subcommand(1);

  std::string fan_arg = "builtin:X";
  std::string boundary_arg;
  std::string out_path;
  unsigned workers = default_workers();

  auto* cmd_count = app.add_subcommand("count", "count integral points of height <= bound");
  u64 bound = 1;
  std::string method = "enumerate";
  bool as_json = false;
  cmd_count->add_option("--bound", bound, "height bound")->required();
  cmd_count->add_option("--method", method, "enumerate | enumerate_safe | sieve");
  cmd_count->add_option("--workers", workers, "worker threads");
  cmd_count->add_flag("--json", as_json, "print the JSON artifact to stdout");
  cmd_count->add_option("--out", out_path, "write the JSON artifact to a file");

  auto* cmd_points = app.add_subcommand("points", "emit all points of height <= bound as CSV");
  u64 pbound = 9;
  std::string csv_path;
  cmd_points->add_option("--bound", pbound, "height bound")->required();
  cmd_points->add_option("--csv", csv_path, "output CSV path (stdout if omitted)");

  auto* cmd_inv = app.add_subcommand("invariants", "per-face invariants of the boundary complex");
  unsigned places_n = 1;
  cmd_inv->add_option("--fan", fan_arg, "builtin:X | builtin:P1 | path to a fan JSON file");
  cmd_inv->add_option("--boundary", boundary_arg, "comma-separated boundary ray labels");
  cmd_inv->add_option("--places", places_n, "number of real places");
  cmd_inv->add_option("--out", out_path, "output path (stdout if omitted)");

  auto* cmd_alpha = app.add_subcommand("alpha", "alpha constant of one face");
  std::string face_arg;
  cmd_alpha->add_option("--fan", fan_arg, "builtin:X | builtin:P1 | path to a fan JSON file");
  cmd_alpha->add_option("--boundary", boundary_arg, "comma-separated boundary ray labels");
  cmd_alpha->add_option("--face", face_arg, "comma-separated component names, e.g. M or E1,E2")
      ->required();
  cmd_alpha->add_option("--out", out_path, "output path (stdout if omitted)");

  auto* cmd_const = app.add_subcommand("constant", "leading constant of the asymptotic formula");
  u64 cutoff = 1000000;
  bool precision_report = false;
  cmd_const->add_option("--cutoff", cutoff, "Euler product cutoff prime bound");
  cmd_const->add_option("--workers", workers, "worker threads");
  cmd_const->add_flag("--precision-report", precision_report, "include the precision breakdown");
  cmd_const->add_option("--out", out_path, "output path (stdout if omitted)");

  auto* cmd_fit = app.add_subcommand("fit", "fit counts against B log^2 B, B log B, B");
  std::vector<std::string> count_files;
  u64 fit_cutoff = 1000000;
  cmd_fit->add_option("--counts", count_files, "count artifact JSON files")->required();
  cmd_fit->add_option("--cutoff", fit_cutoff, "Euler product cutoff for the reference constant");
  cmd_fit->add_option("--workers", workers, "worker threads");
  cmd_fit->add_option("--out", out_path, "output path (stdout if omitted)");

  auto* cmd_report = app.add_subcommand("report", "combined invariants + constant + counts");
  std::vector<std::string> report_counts;
  u64 report_cutoff = 1000000;
  cmd_report->add_option("--counts", report_counts, "count artifact JSON files");
  cmd_report->add_option("--cutoff", report_cutoff, "Euler product cutoff");
  cmd_report->add_option("--workers", workers, "worker threads");
  cmd_report->add_option("--out", out_path, "output path (stdout if omitted)");

  try {
    app.parse(argc, argv);

    if (cmd_count->parsed()) {
      Json j = count_artifact(bound, method, workers);
      if (!out_path.empty()) write_text_file(out_path, j.dump(2) + "\n");
      if (as_json || out_path.empty()) std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (cmd_points->parsed()) {
      std::string csv = points_to_csv(emit_points(pbound));
      if (csv_path.empty())
        std::cout << csv;
      else
        write_text_file(csv_path, csv);
      return 0;
    }
    if (cmd_inv->parsed()) {
      FanChoice fc = load_pair(fan_arg, boundary_arg);
      emit(invariants_json(fc, places_n), out_path);
      return 0;
    }
    if (cmd_alpha->parsed()) {
      FanChoice fc = load_pair(fan_arg, boundary_arg);
      ArchFace face;
      face.places = {real_place()};
      FaceSet fs;
      std::stringstream ss(face_arg);
      std::string name;
      while (std::getline(ss, name, ',')) fs.insert(fc.pair.component_index(name));
      face.per_place = {fs};
      FaceReport rep = face_report(fc.pair, face);
      Json j;
      j["schema"] = "1";
      j["face"] = face_names_json(face, fc.pair.component_names);
      j["alpha"] = rep.alpha_defined ? Json(rat_str(rep.alpha)) : Json(nullptr);
      j["b"] = rep.b;
      j["b_prime"] = rep.b_prime;
      j["strictly_convex"] = rep.strictly_convex;
      j["obstructed"] = rep.obstructed;
      emit(j, out_path);
      return 0;
    }
    if (cmd_const->parsed()) {
      emit(constant_artifact(cutoff, workers, precision_report), out_path);
      return 0;
    }
    if (cmd_fit->parsed() || cmd_report->parsed()) {
      const auto& files = cmd_fit->parsed() ? count_files : report_counts;
      const u64 cut = cmd_fit->parsed() ? fit_cutoff : report_cutoff;
      std::vector<double> bounds, counts, vols;
      for (const std::string& f : files) {
        std::ifstream in(f);
        if (!in) throw ArgumentError("cannot open count artifact: " + f);
        Json j;
        in >> j;
        bounds.push_back(j.at("bound").get<double>());
        counts.push_back(std::stod(j.at("n_points").get<std::string>()));
      }
      Json fit_json;
      EulerProductResult euler = builtin_euler_product(cut, workers);
      if (!bounds.empty()) {
        for (double b : bounds) vols.push_back(static_cast<double>(v_exact(b).value));
        const double c_fin = static_cast<double>(euler.value);
        const double c_ref = 4.0 * c_fin;
        if (cmd_fit->parsed() || bounds.size() >= 4) {
          FitReport fit = fit_leading(bounds, counts, c_fin, vols);
          fit_json = fit_to_json(fit, bounds, c_ref);
        }
      }
      if (cmd_fit->parsed()) {
        emit(fit_json, out_path);
        return 0;
      }
      // report: compose the theorem's decomposition.
      ToricPair pair = make_builtin_x_pair();
      PairAnalysis a = analyze_pair(pair, {real_place()});
      const FaceReport* chosen = nullptr;
      for (const FaceReport& r : a.maximal_reports)
        if (!r.obstructed) chosen = &r;
      if (!chosen) throw NoContributingFaceError("no unobstructed face");
      LeadingConstant lc =
          assemble_leading_constant(*chosen, archimedean_surface_volume_renormalized(), euler);
      Json j;
      j["schema"] = "1";
      j["invariants"] = analysis_to_json(a, pair.component_names);
      j["constant"] = constant_to_json(lc, euler);
      Json cj = Json::array();
      for (const std::string& f : files) {
        std::ifstream in(f);
        Json one;
        in >> one;
        cj.push_back(one);
      }
      j["counts"] = cj;
      if (!fit_json.is_null()) j["fit"] = fit_json;
      emit(j, out_path);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const RegimeError& e) {
    std::cerr << "unsupported regime: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
