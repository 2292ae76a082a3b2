#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "arcjac/abeljacobi.hpp"
#include "arcjac/curve.hpp"
#include "arcjac/flow.hpp"
#include "arcjac/forms.hpp"
#include "arcjac/series.hpp"

namespace {

using namespace arcjac;

// Deterministic dense-ish inputs; the RNG seed is fixed so runs compare.
TruncatedSeries dense_series(int num_vars, int order, unsigned int seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  TruncatedSeries s(num_vars, order);
  Exponents e(num_vars, 0);
  // Walk all exponent vectors of total degree < order.
  for (;;) {
    s.add_term(e, Rational(num(rng)) / Rational(den(rng)));
    int i = 0;
    while (i < num_vars) {
      ++e[i];
      if (total_degree(e) < order) break;
      e[i] = 0;
      ++i;
    }
    if (i == num_vars) break;
  }
  return s;
}

void BM_series_multiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  TruncatedSeries a = dense_series(n, m, 11);
  TruncatedSeries b = dense_series(n, m, 12);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_series_multiply)->Args({1, 8})->Args({2, 6})->Args({3, 5});

void BM_series_invert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  TruncatedSeries a = dense_series(n, m, 13) + TruncatedSeries::constant(n, m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(invert_unit(a));
}
BENCHMARK(BM_series_invert)->Args({1, 8})->Args({2, 6});

void BM_omega_normal_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  DifferentialForm w(n, m, 1);
  TruncatedSeries coeff = dense_series(n, m, 14);
  for (int i = 0; i < n; ++i)
    for (const auto& [e, c] : coeff.terms()) w.add_term(e, {i}, c);
  omega_space(n, m, 1);  // cache warm-up outside the loop
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(w));
}
BENCHMARK(BM_omega_normal_form)->Args({2, 5})->Args({3, 4});

void BM_solve_flow(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  FlowProblem p;
  p.size = size;
  p.base_vars = 1;
  p.order = order;
  p.matrix.assign(size, {});
  unsigned int seed = 15;
  for (int i = 0; i < size; ++i)
    for (int l = 0; l < size; ++l) {
      FlowSeries f(1, order);
      for (int j = 0; j < order; ++j) {
        TruncatedSeries c = dense_series(1, order, seed++);
        if (j == 0 && i == l) c = c + TruncatedSeries::constant(1, order, 7);
        if (j == 0 && i != l) c = c - TruncatedSeries::constant(1, order, c.constant_term());
        f.set_coeff(j, c);
      }
      p.matrix[i].push_back(f);
    }
  for (int i = 0; i < size; ++i) p.rhs.push_back(dense_series(1, order, seed++));
  for (auto _ : state) benchmark::DoNotOptimize(solve_flow(p));
}
BENCHMARK(BM_solve_flow)->Args({2, 4})->Args({3, 5});

void BM_construct_cycle(benchmark::State& state) {
  const int genus = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  std::vector<AffinePoint> pts = {{Rational(1), Rational(2)}, {Rational(2), Rational(3)}};
  pts.resize(genus);
  HyperellipticCurve c = curve_through_points(pts, genus);
  std::vector<TruncatedSeries> target;
  for (int j = 0; j < genus; ++j) {
    TruncatedSeries h = dense_series(1, order, 30 + static_cast<unsigned int>(j));
    target.push_back(h - TruncatedSeries::constant(1, order, h.constant_term()));
  }
  for (auto _ : state) {
    ZeroCycle z = construct_cycle(c, target);
    benchmark::DoNotOptimize(class_of_cycle(c, z));
  }
}
BENCHMARK(BM_construct_cycle)->Args({1, 4})->Args({2, 4});

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
