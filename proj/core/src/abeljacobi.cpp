#include "arcjac/abeljacobi.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "arcjac/error.hpp"

namespace arcjac {

ZeroCycle::ZeroCycle(HyperellipticCurve curve, int num_vars, int order)
    : curve_(std::move(curve)), num_vars_(num_vars), order_(order) {
  if (num_vars < 0 || order < 1) throw ValidationError("bad ambient ring parameters");
}

void ZeroCycle::add(const FormalArc& arc, long multiplicity) {
  if (arc.num_vars() != num_vars_ || arc.order() != order_)
    throw ValidationError("arc ambient ring differs from the cycle's");
  if (!curve_.contains(arc.center)) throw ValidationError("arc center is not on the cycle's curve");
  if (multiplicity == 0) return;
  arcs_.emplace_back(arc, multiplicity);
}

ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b) {
  if (!(a.curve() == b.curve())) throw ValidationError("cycles live on different curves");
  if (a.num_vars() != b.num_vars() || a.order() != b.order())
    throw ValidationError("cycles have different ambient rings");
  ZeroCycle r = a;
  for (const auto& [arc, n] : b.arcs()) r.add(arc, n);
  return r;
}

ZeroCycle operator-(const ZeroCycle& a) {
  ZeroCycle r(a.curve(), a.num_vars(), a.order());
  for (const auto& [arc, n] : a.arcs()) r.add(arc, -n);
  return r;
}

AbelJacobiClass operator+(const AbelJacobiClass& a, const AbelJacobiClass& b) {
  if (a.components.size() != b.components.size())
    throw ValidationError("class genus mismatch");
  AbelJacobiClass r;
  r.components.reserve(a.components.size());
  for (std::size_t j = 0; j < a.components.size(); ++j)
    r.components.push_back(a.components[j] + b.components[j]);
  return r;
}

AbelJacobiClass class_of_cycle(const HyperellipticCurve& c, const ZeroCycle& cycle) {
  if (!(cycle.curve() == c)) throw ValidationError("cycle lives on a different curve");
  AbelJacobiClass cls;
  cls.components.reserve(c.genus());
  for (int j = 1; j <= c.genus(); ++j) {
    DifferentialForm acc(cycle.num_vars(), cycle.order(), 1);
    for (const auto& [arc, n] : cycle.arcs()) acc = acc + Rational(n) * pullback(c, j, arc);
    cls.components.push_back(normal_form(acc));
  }
  return cls;
}

namespace {

void validate_target(const HyperellipticCurve& c, const std::vector<TruncatedSeries>& target) {
  if (static_cast<int>(target.size()) != c.genus())
    throw ValidationError("target length must equal the genus");
  for (const auto& h : target) {
    if (h.num_vars() != target[0].num_vars() || h.order() != target[0].order())
      throw ValidationError("target components live in different rings");
    if (h.constant_term() != 0)
      throw ValidationError("target components must have zero constant term");
  }
}

}  // namespace

Construction construct_cycle_detailed(const HyperellipticCurve& c,
                                      const std::vector<TruncatedSeries>& target,
                                      const ConstructOptions& options) {
  validate_target(c, target);
  const int g = c.genus();
  const int num_vars = target[0].num_vars();
  const int order = target[0].order();

  // d(h) = 0 exactly for constants, and targets have no constant term, so
  // the directions that matter are those with h_j != 0.
  std::set<int> required;
  for (int j = 0; j < g; ++j)
    if (!target[j].is_zero()) required.insert(j);

  ZeroCycle cycle(c, num_vars, order);
  if (required.empty()) return Construction{std::move(cycle), {}, {}, true};

  std::vector<AffinePoint> candidates = find_rational_points(c, options.bound);
  if (options.seed != 0) {
    std::mt19937 rng(options.seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
  }
  std::size_t cursor = 0;
  auto stream = [&]() -> std::optional<AffinePoint> {
    if (cursor >= candidates.size()) return std::nullopt;
    return candidates[cursor++];
  };
  auto evaluate = [&](const AffinePoint& p) {
    std::vector<Rational> col(g, Rational(0));
    Rational inv2y = Rational(1) / (Rational(2) * p.y);
    Rational power(1);
    for (int i = 0; i < g; ++i) {
      col[i] = power * inv2y;
      power *= p.x;
    }
    return col;
  };
  PointSelection<AffinePoint> selection = choose_points<AffinePoint>(
      g, stream, evaluate, required, SelectionOptions{options.candidate_budget});

  Matrix<TruncatedSeries> ratios = ratio_matrix(c, selection.sites, order);

  std::vector<DirectionData> directions;
  for (int j : required) {
    FlowProblem problem;
    problem.size = g;
    problem.base_vars = 0;
    problem.order = order;
    problem.matrix.assign(g, std::vector<FlowSeries>(g, FlowSeries(0, order)));
    problem.rhs.assign(g, TruncatedSeries(0, order));
    for (int i = 0; i < g; ++i) {
      for (int l = 0; l < g; ++l)
        problem.matrix[i][l] = FlowSeries::from_univariate(ratios.at(i, l));
      problem.rhs[i] = TruncatedSeries::constant(0, order, i == j ? 1 : 0);
    }
    FlowSolution solution = solve_flow(problem);
    std::vector<TruncatedSeries> vel = initial_velocities(problem);
    DirectionData data;
    data.direction = j;
    data.problem = problem;
    data.phi = solution.phi;
    data.velocities.reserve(g);
    for (const auto& v : vel) data.velocities.push_back(v.constant_term());
    for (int l = 0; l < g; ++l) {
      TruncatedSeries xi = substitute(solution.phi[l].to_univariate(), target[j]);
      cycle.add(make_arc(c, selection.sites[l], xi), 1);
    }
    directions.push_back(std::move(data));
  }
  return Construction{std::move(cycle), std::move(selection), std::move(directions), false};
}

ZeroCycle construct_cycle(const HyperellipticCurve& c, const std::vector<TruncatedSeries>& target,
                          const ConstructOptions& options) {
  return construct_cycle_detailed(c, target, options).cycle;
}

SurjectivityReport verify_surjectivity(const HyperellipticCurve& c,
                                       const std::vector<TruncatedSeries>& target,
                                       const ConstructOptions& options) {
  Construction built = construct_cycle_detailed(c, target, options);
  AbelJacobiClass cls = class_of_cycle(c, built.cycle);

  SurjectivityReport report{false,
                            {},
                            true,
                            true,
                            std::move(built),
                            std::move(cls),
                            {}};
  const int g = c.genus();
  report.expected.reserve(g);
  for (int j = 0; j < g; ++j) report.expected.push_back(normal_form(d(target[j])));

  bool all = true;
  for (int j = 0; j < g; ++j) {
    bool okj = (report.cycle_class.components[j] == report.expected[j]);
    report.component_pass.push_back(okj);
    all = all && okj;
  }

  for (const auto& dir : report.construction.directions)
    for (const auto& v : dir.velocities)
      if (v == 0) report.velocities_nonzero = false;

  // Linear certificate: a target with a nonzero linear t_0 part must produce
  // arcs with a nonzero linear t_0 part (velocity * linear coefficient).
  const int num_vars = target[0].num_vars();
  Exponents lin(num_vars, 0);
  if (num_vars > 0) lin[0] = 1;
  std::size_t arc_index = 0;
  for (const auto& dir : report.construction.directions) {
    bool target_linear = num_vars > 0 && target[dir.direction].coeff(lin) != 0 &&
                         target[dir.direction].order() > 1;
    for (int l = 0; l < g; ++l, ++arc_index) {
      if (!target_linear) continue;
      const FormalArc& arc = report.construction.cycle.arcs()[arc_index].first;
      if (arc.displacement.coeff(lin) == 0) report.arcs_nonconstant = false;
    }
  }

  report.pass = all && report.velocities_nonzero && report.arcs_nonconstant;
  return report;
}

namespace {

// k[t_1..t_B]/m^M -> k[t_0..t_B]/m^M, prepending a zero exponent for t_0.
TruncatedSeries lift_base(const TruncatedSeries& r) {
  TruncatedSeries out(r.num_vars() + 1, r.order());
  for (const auto& [e, c] : r.terms()) {
    Exponents full;
    full.reserve(e.size() + 1);
    full.push_back(0);
    full.insert(full.end(), e.begin(), e.end());
    out.add_term(full, c);
  }
  return out;
}

// f(phi) in the total-degree ring: Horner over f's argument powers with the
// R-coefficients lifted. phi must be nilpotent (zero constant term).
TruncatedSeries eval_entry_total(const FlowSeries& f, const TruncatedSeries& phi) {
  TruncatedSeries r(phi.num_vars(), phi.order());
  for (int k = f.order() - 1; k >= 0; --k) r = r * phi + lift_base(f.coeff(k));
  return r;
}

}  // namespace

std::vector<DifferentialForm> wedge_identity_residuals(const FlowProblem& problem,
                                                       const std::vector<FlowSeries>& phi) {
  problem.validate();
  if (static_cast<int>(phi.size()) != problem.size)
    throw ValidationError("solution length != system size");
  const int num_vars = problem.base_vars + 1;
  const int order = problem.order;

  std::vector<int> rest_indices(problem.base_vars);
  for (int i = 0; i < problem.base_vars; ++i) rest_indices[i] = i + 1;
  DifferentialForm rest = DifferentialForm::from_terms(
      num_vars, order, problem.base_vars, {{Exponents(num_vars, 0), rest_indices, Rational(1)}});
  std::vector<int> vol_indices(num_vars);
  for (int i = 0; i < num_vars; ++i) vol_indices[i] = i;
  DifferentialForm volume = DifferentialForm::from_terms(
      num_vars, order, num_vars, {{Exponents(num_vars, 0), vol_indices, Rational(1)}});

  std::vector<TruncatedSeries> phi_total;
  phi_total.reserve(problem.size);
  for (const auto& f : phi) phi_total.push_back(f.to_total_degree());

  std::vector<DifferentialForm> residuals;
  residuals.reserve(problem.size);
  for (int i = 0; i < problem.size; ++i) {
    DifferentialForm acc(num_vars, order, num_vars);
    for (int l = 0; l < problem.size; ++l) {
      TruncatedSeries coeff = eval_entry_total(problem.matrix[i][l], phi_total[l]);
      acc = acc + coeff * wedge(d(phi_total[l]), rest);
    }
    acc = acc - lift_base(problem.rhs[i]) * volume;
    residuals.push_back(normal_form(acc));
  }
  return residuals;
}

ZeroCycle truncate_cycle(const ZeroCycle& cycle, int new_order) {
  ZeroCycle out(cycle.curve(), cycle.num_vars(), new_order);
  for (const auto& [arc, n] : cycle.arcs())
    out.add(make_arc(cycle.curve(), arc.center, truncated(arc.displacement, new_order)), n);
  return out;
}

AbelJacobiClass truncate_class(const AbelJacobiClass& cls, int new_order) {
  AbelJacobiClass out;
  out.components.reserve(cls.components.size());
  for (const auto& w : cls.components) out.components.push_back(normal_form(truncate_form(w, new_order)));
  return out;
}

}  // namespace arcjac
