#include "arcjac/selfcheck.hpp"

#include <map>
#include <random>
#include <sstream>

#include "arcjac/error.hpp"
#include "arcjac/forms.hpp"
#include "arcjac/linalg.hpp"

namespace arcjac::selfcheck {

namespace {

// All exponent vectors with entries in [0, cap] in odometer (counting) order.
std::vector<Exponents> odometer(int num_vars, int cap) {
  std::vector<Exponents> out;
  Exponents e(num_vars, 0);
  while (true) {
    out.push_back(e);
    int pos = 0;
    while (pos < num_vars && e[pos] == cap) {
      e[pos] = 0;
      ++pos;
    }
    if (pos == num_vars) break;
    if (num_vars == 0) break;
    e[pos] += 1;
  }
  return out;
}

std::vector<unsigned> bitmasks_with_popcount(int num_vars, int count) {
  std::vector<unsigned> out;
  if (count < 0) return out;
  for (unsigned mask = 0; mask < (1u << num_vars); ++mask)
    if (__builtin_popcount(mask) == count) out.push_back(mask);
  return out;
}

// Plain forward-elimination rank with first-nonzero pivots; deliberately a
// separate implementation from the library's elimination routines.
int gauss_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size();
  int rank = 0;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < cols && next_row < rows.size(); ++c) {
    std::size_t p = next_row;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next_row]);
    for (std::size_t i = next_row + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[next_row][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[next_row][j];
    }
    ++next_row;
    ++rank;
  }
  return rank;
}

}  // namespace

int omega_dimension_by_enumeration(int num_vars, int order, int degree) {
  if (num_vars < 0 || order < 1) throw ValidationError("bad ring parameters");
  if (degree < 0 || degree > num_vars) return 0;

  std::vector<std::pair<Exponents, unsigned>> keys;
  std::map<std::pair<Exponents, unsigned>, int> index;
  auto masks = bitmasks_with_popcount(num_vars, degree);
  for (const auto& e : odometer(num_vars, order - 1)) {
    if (total_degree(e) >= order) continue;
    for (unsigned mask : masks) {
      index.emplace(std::make_pair(e, mask), static_cast<int>(keys.size()));
      keys.emplace_back(e, mask);
    }
  }

  std::vector<std::vector<Rational>> rows;
  auto sub_masks = bitmasks_with_popcount(num_vars, degree - 1);
  for (const auto& mu : odometer(num_vars, order)) {
    if (total_degree(mu) != order) continue;
    for (unsigned sub : sub_masks) {
      std::vector<Rational> row(keys.size(), Rational(0));
      bool nonzero = false;
      for (int i = 0; i < num_vars; ++i) {
        if (mu[i] == 0) continue;
        if (sub & (1u << i)) continue;
        Exponents e(mu);
        e[i] -= 1;
        unsigned mask = sub | (1u << i);
        // Wedge sign: dt_i moves past the differentials with smaller index.
        int below = __builtin_popcount(sub & ((1u << i) - 1));
        Rational c = Rational(mu[i]);
        if (below % 2 != 0) c = -c;
        row[index.at(std::make_pair(e, mask))] += c;
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return static_cast<int>(keys.size()) - gauss_rank(std::move(rows));
}

FlowSolution picard_flow(const FlowProblem& problem, int max_iterations) {
  problem.validate();
  const int n = problem.size;
  const int order = problem.order;
  if (max_iterations <= 0) max_iterations = order + 2;

  std::vector<FlowSeries> b;
  b.reserve(n);
  for (const auto& r : problem.rhs) b.push_back(FlowSeries::constant(r, order));

  std::vector<FlowSeries> phi(n, FlowSeries(problem.base_vars, order));
  for (int it = 0; it < max_iterations; ++it) {
    Matrix<FlowSeries> a(n, n, FlowSeries(problem.base_vars, order));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) a.at(i, l) = compose(problem.matrix[i][l], phi[l]);
    std::vector<FlowSeries> psi = solve_linear(a, b);
    std::vector<FlowSeries> next;
    next.reserve(n);
    for (const auto& p : psi) next.push_back(antiderivative_t(p));
    if (next == phi) return FlowSolution{std::move(phi), order - 1};
    phi = std::move(next);
  }
  throw Error("picard iteration failed to reach a fixed point");
}

namespace {

Rational rand_rational(std::mt19937& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  return Rational(num(rng)) / Rational(den(rng));
}

TruncatedSeries rand_series(std::mt19937& rng, int num_vars, int order, int height,
                            bool zero_constant) {
  TruncatedSeries s(num_vars, order);
  // Sparse-ish random element: a few random monomials.
  std::uniform_int_distribution<int> expo(0, order - 1);
  int tries = 2 * (num_vars + 1) + 2;
  for (int t = 0; t < tries; ++t) {
    Exponents e(num_vars, 0);
    int budget = expo(rng);
    for (int i = 0; i < num_vars && budget > 0; ++i) {
      std::uniform_int_distribution<int> part(0, budget);
      e[i] = part(rng);
      budget -= e[i];
    }
    if (zero_constant && total_degree(e) == 0) continue;
    s.add_term(e, rand_rational(rng, height));
  }
  return s;
}

FlowProblem rand_flow_problem(std::mt19937& rng, int size, int base_vars, int order) {
  FlowProblem p;
  p.size = size;
  p.base_vars = base_vars;
  p.order = order;
  p.matrix.assign(size, std::vector<FlowSeries>(size, FlowSeries(base_vars, order)));
  p.rhs.assign(size, TruncatedSeries(base_vars, order));
  while (true) {
    for (int i = 0; i < size; ++i)
      for (int l = 0; l < size; ++l) {
        FlowSeries f(base_vars, order);
        for (int k = 0; k < order && k <= 2; ++k)
          f.set_coeff(k, rand_series(rng, base_vars, order, 2, false));
        p.matrix[i][l] = f;
      }
    TruncatedSeries det = determinant(p.leading_matrix());
    if (det.constant_term() != 0) break;  // retry until F(0) is a unit
  }
  for (int i = 0; i < size; ++i) p.rhs[i] = rand_series(rng, base_vars, order, 2, false);
  return p;
}

}  // namespace

std::vector<std::string> run_selftest(unsigned int seed) {
  std::vector<std::string> failures;
  auto fail = [&](const std::string& what) { failures.push_back(what); };

  // Omega dimensions: quotient machinery vs direct enumeration.
  for (int num_vars = 0; num_vars <= 3; ++num_vars)
    for (int order = 1; order <= 4; ++order)
      for (int degree = 0; degree <= num_vars; ++degree) {
        int fast = omega_space(num_vars, order, degree).dim_total();
        int slow = omega_dimension_by_enumeration(num_vars, order, degree);
        if (fast != slow) {
          std::ostringstream os;
          os << "omega dimension mismatch at (" << num_vars << "," << order << "," << degree
             << "): " << fast << " vs " << slow;
          fail(os.str());
        }
      }

  std::mt19937 rng(seed == 0 ? 1 : seed);

  // Flow solver vs Picard fixed point, plus residual vanishing.
  std::uniform_int_distribution<int> size_dist(1, 3);
  std::uniform_int_distribution<int> base_dist(0, 1);
  std::uniform_int_distribution<int> order_dist(2, 4);
  for (int trial = 0; trial < 25; ++trial) {
    FlowProblem p = rand_flow_problem(rng, size_dist(rng), base_dist(rng), order_dist(rng));
    FlowSolution fast = solve_flow(p);
    FlowSolution slow = picard_flow(p);
    if (!(fast.phi == slow.phi)) {
      std::ostringstream os;
      os << "flow solutions disagree on trial " << trial;
      fail(os.str());
    }
    if (!verify_flow(p, fast.phi).ok) {
      std::ostringstream os;
      os << "flow residual nonzero on trial " << trial;
      fail(os.str());
    }
  }

  // Square roots against squaring, inverses against multiplying back.
  for (int trial = 0; trial < 10; ++trial) {
    TruncatedSeries f = rand_series(rng, 1, 5, 3, false);
    Rational c = f.constant_term();
    if (c == 0) continue;
    TruncatedSeries square = f * f;
    if (sqrt_unit(square, c) != f) fail("sqrt_unit failed to invert squaring");
    TruncatedSeries prod = f * invert_unit(f);
    if (prod != ring_one(f)) fail("invert_unit failed to invert");
  }

  return failures;
}

}  // namespace arcjac::selfcheck
