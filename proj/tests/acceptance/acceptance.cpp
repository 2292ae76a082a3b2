// Acceptance suite for the cycle-construction pipeline. Every check is exact
// (rational equality, no tolerances). One summary line per criterion; the
// process exits 0 only if all eight hold.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "arcjac/abeljacobi.hpp"
#include "arcjac/curve.hpp"
#include "arcjac/error.hpp"
#include "arcjac/flow.hpp"
#include "arcjac/forms.hpp"
#include "arcjac/io.hpp"
#include "arcjac/points.hpp"
#include "arcjac/selfcheck.hpp"
#include "arcjac/series.hpp"

namespace {

using namespace arcjac;

int g_failures_here = 0;

void check(bool ok, const std::string& what) {
  if (ok) return;
  ++g_failures_here;
  std::cerr << "  [FAIL] " << what << "\n";
}

Rational rnd_rational(std::mt19937& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  return Rational(num(rng)) / Rational(den(rng));
}

TruncatedSeries rnd_ideal_series(std::mt19937& rng, int num_vars, int order, int height) {
  std::bernoulli_distribution keep(0.5);
  TruncatedSeries s(num_vars, order);
  std::vector<Exponents> stack;
  Exponents cur;
  // Depth-first enumeration of exponent vectors with total degree < order.
  struct Rec {
    int n, m;
    std::vector<Exponents>& out;
    void go(Exponents& e, int used) {
      if (static_cast<int>(e.size()) == n) {
        out.push_back(e);
        return;
      }
      for (int d = 0; used + d < m; ++d) {
        e.push_back(d);
        go(e, used + d);
        e.pop_back();
      }
    }
  } rec{num_vars, order, stack};
  rec.go(cur, 0);
  for (const Exponents& e : stack) {
    if (total_degree(e) == 0) continue;
    if (keep(rng)) s.add_term(e, rnd_rational(rng, height));
  }
  return s;
}

std::vector<TruncatedSeries> rnd_target(std::mt19937& rng, int genus, int num_vars, int order,
                                        int height) {
  std::vector<TruncatedSeries> h;
  for (int j = 0; j < genus; ++j) h.push_back(rnd_ideal_series(rng, num_vars, order, height));
  return h;
}

HyperellipticCurve fixture(int genus) {
  switch (genus) {
    case 1:
      return curve_through_points({{Rational(1), Rational(2)}}, 1);
    case 2:
      return curve_through_points({{Rational(1), Rational(2)}, {Rational(2), Rational(3)}}, 2);
    default:
      return curve_through_points({{Rational(1), Rational(2)},
                                   {Rational(2), Rational(3)},
                                   {Rational(3), Rational(5)}},
                                  3);
  }
}

DifferentialForm expected_component(const TruncatedSeries& h) {
  return normal_form(d(DifferentialForm::from_series(h)));
}

// 1. Class round trip: class_of_cycle(construct_cycle(h)) == (dh_1..dh_g)
// over genus 1..3 fixtures, 1 or 2 ambient variables, orders 2..5, 20 random
// targets of coefficient height <= 10 per configuration.
void criterion_round_trip() {
  std::mt19937 rng(101);
  for (int g = 1; g <= 3; ++g) {
    HyperellipticCurve c = fixture(g);
    for (int n = 1; n <= 2; ++n) {
      for (int m = 2; m <= 5; ++m) {
        for (int it = 0; it < 20; ++it) {
          std::vector<TruncatedSeries> target = rnd_target(rng, g, n, m, 10);
          ZeroCycle cycle = construct_cycle(c, target);
          AbelJacobiClass cls = class_of_cycle(c, cycle);
          for (int j = 0; j < g; ++j)
            check(cls.components[j] == expected_component(target[j]),
                  "class component mismatch at g=" + std::to_string(g) + " n=" +
                      std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  }
}

FlowProblem rnd_flow_problem(std::mt19937& rng, int size, int base_vars, int order, int height) {
  for (;;) {
    FlowProblem p;
    p.size = size;
    p.base_vars = base_vars;
    p.order = order;
    p.matrix.assign(size, {});
    for (int i = 0; i < size; ++i)
      for (int l = 0; l < size; ++l) {
        FlowSeries f(base_vars, order);
        for (int j = 0; j < order; ++j) {
          TruncatedSeries coeff = rnd_ideal_series(rng, base_vars, order, height);
          coeff = coeff + TruncatedSeries::constant(base_vars, order, rnd_rational(rng, height));
          f.set_coeff(j, coeff);
        }
        p.matrix[i].push_back(f);
      }
    for (int i = 0; i < size; ++i) {
      TruncatedSeries b = rnd_ideal_series(rng, base_vars, order, height);
      p.rhs.push_back(b + TruncatedSeries::constant(base_vars, order, rnd_rational(rng, height)));
    }
    if (determinant(p.leading_matrix()).constant_term() != 0) return p;
  }
}

// 2. Flow identity and uniqueness: residuals vanish through t-order M-2 and
// the fast solver agrees exactly with the iterative oracle on 50+ random
// unit-leading systems (sizes 1..3, orders 2..5, base ring 0 or 1 variables).
void criterion_flow() {
  std::mt19937 rng(102);
  int done = 0;
  while (done < 54) {
    int size = 1 + static_cast<int>(rng() % 3);
    int base_vars = static_cast<int>(rng() % 2);
    int order = 2 + static_cast<int>(rng() % 4);
    FlowProblem p = rnd_flow_problem(rng, size, base_vars, order, 5);
    FlowSolution fast = solve_flow(p);
    check(fast.valid_order == order - 1, "valid_order != order - 1");
    FlowResidual res = verify_flow(p, fast.phi);
    check(res.ok, "flow residual does not vanish to the valid order");
    FlowSolution slow = selfcheck::picard_flow(p);
    check(fast.phi == slow.phi, "solver disagrees with the iterative oracle");
    ++done;
  }
}

// 3. Wedge identity: for solved systems over one extra base variable and
// rhs the first unit vector, sum_l f_il(phi_l) dphi_l ^ dt_1 equals
// delta_{i0} dt_0 ^ dt_1 in Omega^2, orders 2..4.
void criterion_wedge() {
  std::mt19937 rng(103);
  for (int order = 2; order <= 4; ++order) {
    for (int it = 0; it < 6; ++it) {
      int size = 1 + static_cast<int>(rng() % 3);
      FlowProblem p = rnd_flow_problem(rng, size, 1, order, 4);
      for (int i = 0; i < size; ++i)
        p.rhs[i] = TruncatedSeries::constant(1, order, i == 0 ? 1 : 0);
      std::vector<FlowSeries> phi = solve_flow(p).phi;
      std::vector<DifferentialForm> residuals = wedge_identity_residuals(p, phi);
      for (const DifferentialForm& r : residuals)
        check(r == DifferentialForm(2, order, 2), "wedge identity residual nonzero");
    }
  }
}

// 4. De Rham complex: d o d = 0 and the graded Leibniz rule on 100+ random
// forms (up to 3 variables, order 5); quotient dimensions against the
// enumeration oracle on the full grid N <= 3, M <= 4, p <= N; and for one
// variable dim Omega^1 = M - 1 with d surjective onto it.
void criterion_derham() {
  std::mt19937 rng(104);
  std::bernoulli_distribution keep(0.4);
  auto rnd_form = [&](int n, int m, int p) {
    DifferentialForm w(n, m, p);
    // Sparse random combination over all keys of the free module.
    std::vector<Exponents> exps;
    Exponents cur;
    struct Rec {
      int n, m;
      std::vector<Exponents>& out;
      void go(Exponents& e, int used) {
        if (static_cast<int>(e.size()) == n) {
          out.push_back(e);
          return;
        }
        for (int d = 0; used + d < m; ++d) {
          e.push_back(d);
          go(e, used + d);
          e.pop_back();
        }
      }
    } rec{n, m, exps};
    rec.go(cur, 0);
    std::vector<std::vector<int>> sets;
    std::vector<int> idx;
    struct Comb {
      int n, p;
      std::vector<std::vector<int>>& out;
      void go(std::vector<int>& cur, int next) {
        if (static_cast<int>(cur.size()) == p) {
          out.push_back(cur);
          return;
        }
        for (int i = next; i < n; ++i) {
          cur.push_back(i);
          go(cur, i + 1);
          cur.pop_back();
        }
      }
    } comb{n, p, sets};
    comb.go(idx, 0);
    for (const Exponents& e : exps)
      for (const std::vector<int>& J : sets)
        if (keep(rng)) w.add_term(e, J, rnd_rational(rng, 6));
    return w;
  };

  int done = 0;
  while (done < 102) {
    int n = 1 + static_cast<int>(rng() % 3);
    int m = 2 + static_cast<int>(rng() % 4);
    int pa = static_cast<int>(rng() % (n + 1));
    int pb = static_cast<int>(rng() % (n + 1 - pa));
    DifferentialForm a = rnd_form(n, m, pa);
    DifferentialForm b = rnd_form(n, m, pb);
    check(d(d(a)) == DifferentialForm(n, m, pa + 2), "d o d != 0");
    DifferentialForm sign_term = wedge(a, d(b));
    if (pa % 2 == 1) sign_term = -sign_term;
    check(d(wedge(a, b)) == wedge(d(a), b) + sign_term, "graded Leibniz rule fails");
    ++done;
  }

  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 4; ++m)
      for (int p = 0; p <= n; ++p)
        check(omega_space(n, m, p).dim_total() ==
                  selfcheck::omega_dimension_by_enumeration(n, m, p),
              "quotient dimension disagrees with enumeration at (" + std::to_string(n) + "," +
                  std::to_string(m) + "," + std::to_string(p) + ")");

  for (int m = 2; m <= 6; ++m) {
    const DeRhamSpace& space = omega_space(1, m, 1);
    check(space.dim_total() == m - 1, "univariate dim Omega^1 != M - 1");
    check(space.dim_exact() == m - 1, "univariate d is not surjective onto Omega^1");
  }
}

// 5. Pullback integrality: along 100 random arcs centered at non-Weierstrass
// rational points, all basis pullbacks complete (every division is by a
// unit) and the results are closed and exact.
void criterion_integrality() {
  std::mt19937 rng(105);
  std::vector<HyperellipticCurve> curves = {fixture(1), fixture(2), fixture(3)};
  std::vector<std::vector<AffinePoint>> centers;
  for (const HyperellipticCurve& c : curves) centers.push_back(find_rational_points(c, 8));

  int done = 0;
  while (done < 100) {
    std::size_t which = rng() % curves.size();
    const HyperellipticCurve& c = curves[which];
    if (centers[which].empty()) continue;
    const AffinePoint& p = centers[which][rng() % centers[which].size()];
    int n = 1 + static_cast<int>(rng() % 2);
    int m = 2 + static_cast<int>(rng() % 4);
    TruncatedSeries xi = rnd_ideal_series(rng, n, m, 6);
    bool completed = true;
    try {
      FormalArc arc = make_arc(c, p, xi);
      for (int j = 1; j <= c.genus(); ++j) {
        DifferentialForm w = pullback(c, j, arc);
        check(is_closed(w), "pullback not closed");
        check(is_exact(w), "pullback not exact");
      }
    } catch (const Error&) {
      completed = false;
    }
    check(completed, "pullback raised on a non-Weierstrass center");
    ++done;
  }
}

// 6. Additivity: class_of_cycle(a + b) == class_of_cycle(a) + class_of_cycle(b)
// on random cycle pairs, both constructed and hand-assembled.
void criterion_additivity() {
  std::mt19937 rng(106);
  for (int it = 0; it < 10; ++it) {
    int g = 1 + static_cast<int>(rng() % 2);
    HyperellipticCurve c = fixture(g);
    int n = 1 + static_cast<int>(rng() % 2);
    int m = 2 + static_cast<int>(rng() % 3);
    ZeroCycle a = construct_cycle(c, rnd_target(rng, g, n, m, 6));
    ZeroCycle b = construct_cycle(c, rnd_target(rng, g, n, m, 6));
    check(class_of_cycle(c, a + b) == class_of_cycle(c, a) + class_of_cycle(c, b),
          "class map not additive on constructed cycles");
  }
  // Hand-assembled cycles with mixed multiplicities.
  HyperellipticCurve c = fixture(2);
  std::vector<AffinePoint> pts = find_rational_points(c, 6);
  for (int it = 0; it < 10 && pts.size() >= 2; ++it) {
    int n = 1 + static_cast<int>(rng() % 2);
    int m = 2 + static_cast<int>(rng() % 3);
    auto make = [&]() {
      ZeroCycle z(c, n, m);
      int arcs = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < arcs; ++k) {
        const AffinePoint& p = pts[rng() % pts.size()];
        long mult = static_cast<long>(rng() % 5) - 2;
        z.add(make_arc(c, p, rnd_ideal_series(rng, n, m, 5)), mult);
      }
      return z;
    };
    ZeroCycle a = make();
    ZeroCycle b = make();
    check(class_of_cycle(c, a + b) == class_of_cycle(c, a) + class_of_cycle(c, b),
          "class map not additive on hand-assembled cycles");
  }
}

// 7. Truncation compatibility: construct at order 6, push down to every
// smaller order >= 2, and compare against the truncated targets; the two
// routes (truncate the cycle, truncate the class) agree.
void criterion_truncation() {
  std::mt19937 rng(107);
  for (int g = 1; g <= 2; ++g) {
    HyperellipticCurve c = fixture(g);
    for (int n = 1; n <= 2; ++n) {
      for (int it = 0; it < 5; ++it) {
        std::vector<TruncatedSeries> target = rnd_target(rng, g, n, 6, 6);
        ZeroCycle z = construct_cycle(c, target);
        AbelJacobiClass full = class_of_cycle(c, z);
        for (int m = 2; m < 6; ++m) {
          ZeroCycle zm = truncate_cycle(z, m);
          AbelJacobiClass clsm = class_of_cycle(c, zm);
          check(clsm == truncate_class(full, m), "cycle/class truncations disagree");
          for (int j = 0; j < g; ++j)
            check(clsm.components[j] == expected_component(truncated(target[j], m)),
                  "truncated class misses the truncated target at m=" + std::to_string(m));
        }
      }
    }
  }
}

// 8. Selection certificates: every produced PointSelection re-verifies from
// scratch (nonzero determinant, all required row-deleted minors nonzero),
// and pure monomial families up to size 4 succeed within the default budget
// of 64 per row.
void criterion_certificates() {
  std::mt19937 rng(108);
  auto reverify = [&](const PointSelection<AffinePoint>& sel, const std::set<int>& required) {
    check(determinant(sel.evaluation) == sel.determinant, "stored determinant mismatch");
    check(sel.determinant != 0, "certificate determinant vanishes");
    for (int r : required) {
      std::vector<Rational> minors = row_deleted_minors(sel.evaluation, r);
      auto it = sel.row_deleted.find(r);
      check(it != sel.row_deleted.end(), "required row missing from certificate");
      if (it == sel.row_deleted.end()) continue;
      check(it->second == minors, "stored minors mismatch");
      for (const Rational& v : minors) check(v != 0, "required row-deleted minor vanishes");
    }
  };

  for (int g = 1; g <= 3; ++g) {
    HyperellipticCurve c = fixture(g);
    for (int it = 0; it < 4; ++it) {
      std::vector<TruncatedSeries> target = rnd_target(rng, g, 1, 3, 6);
      Construction out = construct_cycle_detailed(c, target);
      if (out.trivial) continue;
      std::set<int> required;
      for (const DirectionData& dir : out.directions) required.insert(dir.direction);
      reverify(out.selection, required);
    }
  }

  for (int g = 1; g <= 4; ++g) {
    long next = 1;
    auto stream = [&]() -> std::optional<long> { return next++; };
    auto evaluate = [&](long s) {
      std::vector<Rational> col(g, Rational(1));
      for (int i = 1; i < g; ++i) col[i] = col[i - 1] * Rational(s);
      return col;
    };
    std::set<int> required;
    for (int j = 0; j < g; ++j) required.insert(j);
    PointSelection<long> sel = choose_points<long>(g, stream, evaluate, required);
    check(static_cast<int>(sel.sites.size()) == g, "monomial family selection incomplete");
    check(sel.candidates_consumed <= 64 * g, "monomial family exceeded the candidate budget");
    check(sel.determinant != 0, "monomial family determinant vanishes");
    for (const auto& [row, minors] : sel.row_deleted)
      for (const Rational& v : minors) check(v != 0, "monomial family minor vanishes");
  }
}

struct Criterion {
  const char* label;
  void (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"1 class round trip over genus 1..3 fixtures", criterion_round_trip},
      {"2 flow identity and agreement with the iterative oracle", criterion_flow},
      {"3 wedge identity for unit-vector systems", criterion_wedge},
      {"4 de Rham complex laws and quotient dimensions", criterion_derham},
      {"5 pullback integrality along random arcs", criterion_integrality},
      {"6 additivity of the class map", criterion_additivity},
      {"7 truncation compatibility of cycles and classes", criterion_truncation},
      {"8 selection certificates and monomial-family budgets", criterion_certificates},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    g_failures_here = 0;
    try {
      c.run();
    } catch (const std::exception& e) {
      ++g_failures_here;
      std::cerr << "  [FAIL] unexpected exception: " << e.what() << "\n";
    }
    bool ok = g_failures_here == 0;
    std::cout << "criterion " << c.label << ": " << (ok ? "pass" : "FAIL") << "\n";
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
