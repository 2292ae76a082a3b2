#pragma once

#include <string>
#include <vector>

#include "arcjac/flow.hpp"

namespace arcjac::selfcheck {

// Dimension of Omega^p for the ring (num_vars, order) by direct enumeration:
// builds the free module and the relation rows from scratch (its own
// monomial order and pivot convention) and subtracts a dense-elimination
// rank. Shares no code with the DeRhamSpace quotient machinery.
int omega_dimension_by_enumeration(int num_vars, int order, int degree);

// Solves the flow system by Picard iteration: repeatedly solve the *linear*
// system A(t) psi = b with A(t) = [f_il(phi_l(t))] over the full series ring
// (adjugate inversion), then integrate psi in t. Starting from zero this
// reaches the exact solution as a fixed point. Independent of the
// constant-matrix recursion used by solve_flow.
FlowSolution picard_flow(const FlowProblem& problem, int max_iterations = 0);

// Cross-checks the fast paths against the oracles at desk scale, plus a few
// arithmetic round trips. Returns human-readable failure descriptions;
// empty means everything agreed.
std::vector<std::string> run_selftest(unsigned int seed = 1);

}  // namespace arcjac::selfcheck
