#pragma once

#include <utility>
#include <vector>

#include "arcjac/curve.hpp"
#include "arcjac/flow.hpp"
#include "arcjac/forms.hpp"
#include "arcjac/points.hpp"

namespace arcjac {

// Family of relative 0-cycles sum n_l ([arc_l] - [center_l]) on one curve,
// all arcs in the same ambient ring (num_vars, order).
class ZeroCycle {
 public:
  ZeroCycle(HyperellipticCurve curve, int num_vars, int order);

  void add(const FormalArc& arc, long multiplicity);

  const HyperellipticCurve& curve() const { return curve_; }
  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  const std::vector<std::pair<FormalArc, long>>& arcs() const { return arcs_; }

 private:
  HyperellipticCurve curve_;
  int num_vars_, order_;
  std::vector<std::pair<FormalArc, long>> arcs_;
};

// Formal sum (same curve and ambient ring required).
ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b);
// Multiplicities negated.
ZeroCycle operator-(const ZeroCycle& a);

// Value of the class map on a cycle, written against the dual basis of
// w_1..w_g: component j is a 1-form in Omega^1 of the ambient ring. For
// cycles of arcs the components are closed and exact.
struct AbelJacobiClass {
  std::vector<DifferentialForm> components;

  friend bool operator==(const AbelJacobiClass& a, const AbelJacobiClass& b) {
    return a.components == b.components;
  }
  friend bool operator!=(const AbelJacobiClass& a, const AbelJacobiClass& b) { return !(a == b); }
};

AbelJacobiClass operator+(const AbelJacobiClass& a, const AbelJacobiClass& b);

// Component j = sum_l n_l * pullback(c, j, arc_l), in normal form. Additive
// in the cycle; constant arcs contribute nothing.
AbelJacobiClass class_of_cycle(const HyperellipticCurve& c, const ZeroCycle& cycle);

struct ConstructOptions {
  int bound = 25;            // rational point search height
  unsigned int seed = 0;     // 0 keeps the deterministic candidate order
  int candidate_budget = 0;  // 0 means 64 * genus
};

// Everything produced for one target direction j: the univariate flow system
// built from the ratio matrix at the selected points, its solution, and the
// initial velocities phi_l'(0).
struct DirectionData {
  int direction;  // 0-based row index j
  FlowProblem problem;
  std::vector<FlowSeries> phi;
  std::vector<Rational> velocities;
};

struct Construction {
  ZeroCycle cycle;
  PointSelection<AffinePoint> selection;  // empty when the target is zero
  std::vector<DirectionData> directions;
  bool trivial = false;  // target was identically zero
};

// Realizes a prescribed class: returns a cycle whose class has component j
// equal to d(target[j]). Pipeline: select genus arc centers whose evaluation
// matrix carries the required-row minor certificates, solve the unit-vector
// flow system for every j with target[j] != 0, then reparametrize the flows
// by s -> target[j] to get the arc displacements. Targets live in the
// maximal ideal of a common ring; target.size() must equal the genus.
Construction construct_cycle_detailed(const HyperellipticCurve& c,
                                      const std::vector<TruncatedSeries>& target,
                                      const ConstructOptions& options = {});
ZeroCycle construct_cycle(const HyperellipticCurve& c, const std::vector<TruncatedSeries>& target,
                          const ConstructOptions& options = {});

struct SurjectivityReport {
  bool pass = false;
  std::vector<bool> component_pass;   // class component j == d(target[j])
  bool velocities_nonzero = false;    // every direction's phi_l'(0) != 0
  bool arcs_nonconstant = false;      // linear certificate (see below)
  Construction construction;
  AbelJacobiClass cycle_class;
  std::vector<DifferentialForm> expected;  // normal forms of d(target[j])
};

// Runs construct_cycle, then recomputes the class through pullbacks (an
// independent path from the flow solve) and compares component-wise against
// d(target[j]) with exact equality. The arc certificate checks that whenever
// target[j] has a nonzero linear t_0 coefficient, every direction-j arc has
// a nonzero linear t_0 coefficient too.
SurjectivityReport verify_surjectivity(const HyperellipticCurve& c,
                                       const std::vector<TruncatedSeries>& target,
                                       const ConstructOptions& options = {});

// Residuals of the top-degree wedge identity for a solved flow system over
// R = (N-1 variables): component i is the normal form of
//   sum_l f_il(phi_l) d(phi_l) ^ dt_1 ^ ... ^ dt_{N-1}  -  b_i dt_0 ^ ... ^ dt_{N-1}
// in Omega^N of the total-degree ring on N = base_vars + 1 variables. All
// residuals vanish for solutions of solve_flow.
std::vector<DifferentialForm> wedge_identity_residuals(const FlowProblem& problem,
                                                       const std::vector<FlowSeries>& phi);

// Truncation down to a smaller order; arcs are rebuilt so the square-root
// cache stays consistent (substitution commutes with truncation).
ZeroCycle truncate_cycle(const ZeroCycle& cycle, int new_order);
AbelJacobiClass truncate_class(const AbelJacobiClass& cls, int new_order);

}  // namespace arcjac
