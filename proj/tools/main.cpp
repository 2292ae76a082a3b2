// Command-line driver. Subcommands: construct, verify, flow, forms-info,
// points, selftest. JSON-valued options accept inline JSON, @path to read a
// file, or "-" for stdin; reports go to --out or stdout.
//
// Exit codes: 0 success/verified, 1 verification failure, 2 bad input or
// pipeline error.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "arcjac/error.hpp"
#include "arcjac/io.hpp"
#include "arcjac/selfcheck.hpp"

namespace {

using arcjac::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string slurp(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json load_json_value(const std::string& text) {
  if (text == "-") return arcjac::parse_json_text(slurp(std::cin));
  if (!text.empty() && text[0] == '@') {
    std::ifstream f(text.substr(1));
    if (!f) throw arcjac::ValidationError("cannot open " + text.substr(1));
    return arcjac::parse_json_text(slurp(f));
  }
  return arcjac::parse_json_text(text);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw arcjac::ValidationError("cannot write " + out_path);
  f << j.dump(2) << "\n";
}

std::vector<arcjac::AffinePoint> points_from_json(const json& j) {
  std::vector<arcjac::AffinePoint> pts;
  if (!j.is_array()) throw arcjac::ValidationError("fixture points must be an array");
  for (const auto& p : j) {
    if (p.is_array()) {
      if (p.size() != 2) throw arcjac::ValidationError("fixture point needs two entries");
      pts.push_back({arcjac::parse_rational(p[0].get<std::string>()),
                     arcjac::parse_rational(p[1].get<std::string>())});
    } else {
      pts.push_back(arcjac::point_from_json(p));
    }
  }
  return pts;
}

// Curve from --curve JSON or --fixture-points + genus.
arcjac::HyperellipticCurve resolve_curve(const std::string& curve_arg,
                                         const std::string& fixture_arg, int genus) {
  if (!curve_arg.empty() && !fixture_arg.empty())
    throw arcjac::ValidationError("give either --curve or --fixture-points, not both");
  if (!curve_arg.empty()) return arcjac::curve_from_json(load_json_value(curve_arg));
  if (!fixture_arg.empty()) {
    auto pts = points_from_json(load_json_value(fixture_arg));
    if (genus <= 0) genus = static_cast<int>(pts.size());
    return arcjac::curve_through_points(pts, genus);
  }
  throw arcjac::ValidationError("a curve is required: --curve or --fixture-points");
}

struct ConstructArgs {
  std::string curve, fixture, target, out;
  int vars = 1;
  int order = 0;
  arcjac::ConstructOptions options;
};

int cmd_construct(const ConstructArgs& args) {
  json tj = load_json_value(args.target);
  int vars = args.vars;
  int order = args.order;
  if (tj.is_object()) {
    vars = tj.value("vars", vars);
    order = tj.value("order", order);
  }
  if (vars < 1) throw arcjac::ValidationError("need --vars >= 1");
  if (order < 2) throw arcjac::ValidationError("need --order >= 2");
  std::vector<arcjac::TruncatedSeries> target = arcjac::target_from_json(tj, vars, order);
  arcjac::HyperellipticCurve curve =
      resolve_curve(args.curve, args.fixture, static_cast<int>(target.size()));
  arcjac::SurjectivityReport report = arcjac::verify_surjectivity(curve, target, args.options);
  emit(arcjac::surjectivity_report_to_json(report, curve, target, args.options), args.out);
  return report.pass ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& report_arg, const std::string& out_path) {
  json rj = load_json_value(report_arg);
  arcjac::HyperellipticCurve curve = arcjac::curve_from_json(rj.at("curve"));
  json tj = rj.at("target");
  int vars = tj.at("vars").get<int>();
  int order = tj.at("order").get<int>();
  std::vector<arcjac::TruncatedSeries> target = arcjac::target_from_json(tj, vars, order);
  arcjac::ZeroCycle cycle = arcjac::cycle_from_json(rj.at("cycle"));
  arcjac::AbelJacobiClass cls = arcjac::class_of_cycle(curve, cycle);

  bool pass = true;
  json component_pass = json::array();
  for (int j = 0; j < curve.genus(); ++j) {
    bool okj = (cls.components[j] == arcjac::normal_form(arcjac::d(target[j])));
    component_pass.push_back(okj);
    pass = pass && okj;
  }
  // Flag claims that do not match the recomputation.
  bool consistent = true;
  if (rj.contains("class")) {
    arcjac::AbelJacobiClass claimed =
        arcjac::class_from_json(rj.at("class"), vars, order, curve.genus());
    consistent = (claimed == cls);
  }
  emit(json{{"pass", pass},
            {"component_pass", component_pass},
            {"claimed_class_consistent", consistent},
            {"class", arcjac::class_to_json(cls)}},
       out_path);
  return pass && consistent ? kExitPass : kExitFail;
}

int cmd_flow(const std::string& problem_arg, const std::string& out_path) {
  arcjac::FlowProblem problem = arcjac::flow_problem_from_json(load_json_value(problem_arg));
  arcjac::FlowSolution solution = arcjac::solve_flow(problem);
  arcjac::FlowResidual residual = arcjac::verify_flow(problem, solution.phi);
  emit(json{{"problem", arcjac::flow_problem_to_json(problem)},
            {"solution", arcjac::flow_solution_to_json(solution)},
            {"residual", arcjac::flow_residual_to_json(residual)}},
       out_path);
  return residual.ok ? kExitPass : kExitFail;
}

int cmd_forms_info(int vars, int order, int degree, const std::string& out_path) {
  const arcjac::DeRhamSpace& space = arcjac::omega_space(vars, order, degree);
  emit(arcjac::dimension_report_to_json(space), out_path);
  return kExitPass;
}

struct PointsArgs {
  std::string curve, fixture, required, out;
  int genus = 0;
  arcjac::ConstructOptions options;
};

int cmd_points(const PointsArgs& args) {
  arcjac::HyperellipticCurve curve = resolve_curve(args.curve, args.fixture, args.genus);
  const int g = curve.genus();
  std::set<int> required;
  if (args.required.empty()) {
    for (int j = 0; j < g; ++j) required.insert(j);
  } else {
    std::stringstream ss(args.required);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      required.insert(std::stoi(item));
    }
  }
  std::vector<arcjac::AffinePoint> candidates = arcjac::find_rational_points(curve, args.options.bound);
  if (args.options.seed != 0) {
    std::mt19937 rng(args.options.seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
  }
  std::size_t cursor = 0;
  auto stream = [&]() -> std::optional<arcjac::AffinePoint> {
    if (cursor >= candidates.size()) return std::nullopt;
    return candidates[cursor++];
  };
  auto evaluate = [&](const arcjac::AffinePoint& p) {
    std::vector<arcjac::Rational> col(g, arcjac::Rational(0));
    arcjac::Rational inv2y = arcjac::Rational(1) / (arcjac::Rational(2) * p.y);
    arcjac::Rational power(1);
    for (int i = 0; i < g; ++i) {
      col[i] = power * inv2y;
      power *= p.x;
    }
    return col;
  };
  arcjac::PointSelection<arcjac::AffinePoint> sel = arcjac::choose_points<arcjac::AffinePoint>(
      g, stream, evaluate, required, arcjac::SelectionOptions{args.options.candidate_budget});
  json out = arcjac::selection_to_json(sel);
  out["curve"] = arcjac::curve_to_json(curve);
  emit(out, args.out);
  return kExitPass;
}

int cmd_selftest(unsigned int seed, const std::string& out_path) {
  std::vector<std::string> failures = arcjac::selfcheck::run_selftest(seed);
  emit(json{{"pass", failures.empty()}, {"failures", failures}}, out_path);
  return failures.empty() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact infinitesimal class-map pipeline on hyperelliptic curves"};
  app.require_subcommand(1);

  ConstructArgs cons;
  CLI::App* construct = app.add_subcommand(
      "construct", "build a cycle realizing a target class and verify the round trip");
  construct->add_option("--curve", cons.curve, "curve JSON ({s_coeffs}), @file, or -");
  construct->add_option("--fixture-points", cons.fixture,
                        "interpolate a curve through these points: [[x,y],...]");
  construct->add_option("--target", cons.target, "target JSON {h, vars, order} or bare array")
      ->required();
  construct->add_option("--vars", cons.vars, "ambient variable count N");
  construct->add_option("--order", cons.order, "truncation order M (>= 2)");
  construct->add_option("--bound", cons.options.bound, "rational point search height");
  construct->add_option("--seed", cons.options.seed, "candidate shuffle seed (0 = natural order)");
  construct->add_option("--budget", cons.options.candidate_budget,
                        "candidate budget (0 = 64 * genus)");
  construct->add_option("--out", cons.out, "output path (default stdout)");

  std::string verify_report = "-", verify_out;
  CLI::App* verify =
      app.add_subcommand("verify", "recompute the class of a report's cycle and recheck it");
  verify->add_option("--report", verify_report, "report JSON, @file, or - (default stdin)");
  verify->add_option("--out", verify_out, "output path (default stdout)");

  std::string flow_problem = "-", flow_out;
  CLI::App* flow = app.add_subcommand("flow", "solve a flow system and report the residual");
  flow->add_option("--problem", flow_problem, "problem JSON, @file, or - (default stdin)");
  flow->add_option("--out", flow_out, "output path (default stdout)");

  int fi_vars = 1, fi_order = 2, fi_degree = 1;
  std::string fi_out;
  CLI::App* forms = app.add_subcommand("forms-info", "dimension report for a form space");
  forms->add_option("--vars", fi_vars, "variable count N")->required();
  forms->add_option("--order", fi_order, "truncation order M")->required();
  forms->add_option("--degree", fi_degree, "form degree p")->required();
  forms->add_option("--out", fi_out, "output path (default stdout)");

  PointsArgs pargs;
  CLI::App* points = app.add_subcommand("points", "select arc centers with minor certificates");
  points->add_option("--curve", pargs.curve, "curve JSON ({s_coeffs}), @file, or -");
  points->add_option("--fixture-points", pargs.fixture, "interpolate a curve through these points");
  points->add_option("--genus", pargs.genus, "genus for --fixture-points (default: point count)");
  points->add_option("--required-rows", pargs.required, "comma-separated row indices (default all)");
  points->add_option("--bound", pargs.options.bound, "rational point search height");
  points->add_option("--seed", pargs.options.seed, "candidate shuffle seed");
  points->add_option("--budget", pargs.options.candidate_budget, "candidate budget (0 = 64 * genus)");
  points->add_option("--out", pargs.out, "output path (default stdout)");

  unsigned int selftest_seed = 1;
  std::string selftest_out;
  CLI::App* selftest = app.add_subcommand("selftest", "run the slow oracles against the fast paths");
  selftest->add_option("--seed", selftest_seed, "random seed");
  selftest->add_option("--out", selftest_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (construct->parsed()) return cmd_construct(cons);
    if (verify->parsed()) return cmd_verify(verify_report, verify_out);
    if (flow->parsed()) return cmd_flow(flow_problem, flow_out);
    if (forms->parsed()) return cmd_forms_info(fi_vars, fi_order, fi_degree, fi_out);
    if (points->parsed()) return cmd_points(pargs);
    if (selftest->parsed()) return cmd_selftest(selftest_seed, selftest_out);
  } catch (const arcjac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
