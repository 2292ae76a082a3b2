#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arcjac/error.hpp"
#include "arcjac/series.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using namespace arcjac;
using testsupport::q;
using testsupport::u;

TEST_CASE("rational parsing accepts decimal integers and fractions only") {
  CHECK(parse_rational("3/6") == q("1/2"));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("+4/2") == Rational(2));
  CHECK(rational_to_string(q("-3/9")) == "-1/3");
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("0x10"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.5"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("2/"), ValidationError);
  CHECK_THROWS_AS(parse_rational(" 1"), ValidationError);
}

TEST_CASE("rational square roots") {
  Rational r;
  CHECK(rational_sqrt(q("4/9"), &r));
  CHECK(r == q("2/3"));
  CHECK(rational_sqrt(Rational(0), &r));
  CHECK(r == 0);
  CHECK_FALSE(rational_sqrt(Rational(2), &r));
  CHECK_FALSE(rational_sqrt(Rational(-4), &r));
}

TEST_CASE("addition") {
  CHECK((u(3, {"1", "1"}) + u(3, {"-1", "-1"})).is_zero());
  CHECK(u(3, {"0", "1"}) + u(3, {"0", "1"}) == u(3, {"0", "2"}));
  CHECK(u(3, {"1", "0", "1"}) + u(3, {"0", "0", "1"}) == u(3, {"1", "0", "2"}));
}

TEST_CASE("multiplication truncates at the ideal power") {
  CHECK(u(3, {"1", "1"}) * u(3, {"1", "-1"}) == u(3, {"1", "0", "-1"}));
  CHECK(u(2, {"1", "1"}) * u(2, {"1", "-1"}) == u(2, {"1"}));
  TruncatedSeries t0 = TruncatedSeries::variable(2, 2, 0);
  TruncatedSeries t1 = TruncatedSeries::variable(2, 2, 1);
  CHECK((t0 * t1).is_zero());
}

TEST_CASE("substitution examples") {
  CHECK(substitute(u(3, {"1", "1"}), u(3, {"0", "1", "1"})) == u(3, {"1", "1", "1"}));
  CHECK(substitute(u(4, {"0", "0", "1"}), u(4, {"0", "1", "1"})) == u(4, {"0", "0", "1", "2"}));
  CHECK(substitute(u(4, {"5"}), u(4, {"0", "3", "1"})) == u(4, {"5"}));
  CHECK_THROWS_AS(substitute(u(3, {"1", "1"}), u(3, {"1", "1"})), ValidationError);
}

TEST_CASE("substitution lands in the ring of the inner series") {
  TruncatedSeries g(2, 3);
  g.add_term({1, 0}, 1);
  g.add_term({0, 1}, 1);
  TruncatedSeries fg = substitute(u(3, {"1", "0", "1"}), g);  // 1 + (t0+t1)^2
  TruncatedSeries expected(2, 3);
  expected.add_term({0, 0}, 1);
  expected.add_term({2, 0}, 1);
  expected.add_term({1, 1}, 2);
  expected.add_term({0, 2}, 1);
  CHECK(fg == expected);
}

TEST_CASE("derivatives") {
  CHECK(derivative(u(4, {"0", "0", "1"}), 0) == u(4, {"0", "2"}));
  TruncatedSeries t0t1(2, 3);
  t0t1.add_term({1, 1}, 1);
  CHECK(derivative(t0t1, 0) == TruncatedSeries::variable(2, 3, 1));
  CHECK(derivative(u(4, {"9"}), 0).is_zero());
}

TEST_CASE("unit inversion") {
  CHECK(invert_unit(u(4, {"1", "-1"})) == u(4, {"1", "1", "1", "1"}));
  CHECK(invert_unit(u(4, {"2"})) == u(4, {"1/2"}));
  CHECK(invert_unit(u(4, {"1", "0", "0", "1"})) == u(4, {"1", "0", "0", "-1"}));
  CHECK_THROWS_AS(invert_unit(u(4, {"0", "1"})), NonUnitError);
}

TEST_CASE("square roots of units") {
  CHECK(sqrt_unit(u(4, {"4"}), Rational(2)) == u(4, {"2"}));
  CHECK(sqrt_unit(u(4, {"1", "2"}), Rational(1)) == u(4, {"1", "1", "-1/2", "1/2"}));
  TruncatedSeries f = u(7, {"1", "0", "0", "1"});
  TruncatedSeries r = sqrt_unit(f, Rational(1));
  CHECK(r == u(7, {"1", "0", "0", "1/2", "0", "0", "-1/8"}));
  CHECK(r == testsupport::sqrt_by_matching(f, Rational(1)));
  CHECK_THROWS_AS(sqrt_unit(u(4, {"0", "1"}), Rational(0)), NonUnitError);
  CHECK_THROWS_AS(sqrt_unit(u(4, {"4"}), Rational(3)), NotASquareError);
}

TEST_CASE("canonical form is maintained") {
  TruncatedSeries s(2, 3);
  s.add_term({1, 0}, q("1/2"));
  s.add_term({1, 0}, q("-1/2"));
  CHECK(s.is_zero());
  CHECK(s.terms().empty());
  s.add_term({2, 1}, Rational(7));  // degree 3 >= order: dropped
  CHECK(s.is_zero());

  CHECK_THROWS_AS(TruncatedSeries::from_terms(2, 3, {{{2, 1}, Rational(1)}}), ValidationError);
  CHECK_THROWS_AS(TruncatedSeries::from_terms(2, 3, {{{1}, Rational(1)}}), ValidationError);
  CHECK_THROWS_AS(TruncatedSeries::from_terms(2, 3, {{{-1, 0}, Rational(1)}}), ValidationError);
  // Duplicates accumulate.
  TruncatedSeries acc =
      TruncatedSeries::from_terms(1, 3, {{{1}, Rational(1)}, {{1}, Rational(2)}});
  CHECK(acc == u(3, {"0", "3"}));
}

TEST_CASE("ring mismatch is an error") {
  CHECK_THROWS_AS(u(3, {"1"}) + u(4, {"1"}), RingMismatchError);
  CHECK_THROWS_AS(u(3, {"1"}) * TruncatedSeries::constant(2, 3, 1), RingMismatchError);
}

TEST_CASE("order one collapses everything to scalars") {
  TruncatedSeries t = TruncatedSeries::variable(1, 1, 0);
  CHECK(t.is_zero());
  CHECK(TruncatedSeries::constant(1, 1, 5).constant_term() == 5);
}

TEST_CASE("zero variables gives plain rationals") {
  TruncatedSeries a = TruncatedSeries::constant(0, 4, q("2/3"));
  TruncatedSeries b = TruncatedSeries::constant(0, 4, Rational(3));
  CHECK((a * b).constant_term() == 2);
  CHECK(invert_unit(a).constant_term() == q("3/2"));
}

TEST_CASE("ring axioms on random series") {
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + static_cast<int>(rng() % 3);
    int m = 2 + static_cast<int>(rng() % 4);
    TruncatedSeries a = testsupport::rnd_series(rng, n, m, 6);
    TruncatedSeries b = testsupport::rnd_series(rng, n, m, 6);
    TruncatedSeries c = testsupport::rnd_series(rng, n, m, 6);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937 rng(12);
  for (int it = 0; it < 30; ++it) {
    int m = 2 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 2);
    TruncatedSeries f = testsupport::rnd_series(rng, 1, m, 6);
    TruncatedSeries g = testsupport::rnd_series(rng, 1, m, 6);
    TruncatedSeries h = testsupport::rnd_series(rng, n, m, 6, true);
    CHECK(substitute(f * g, h) == substitute(f, h) * substitute(g, h));
    CHECK(substitute(f + g, h) == substitute(f, h) + substitute(g, h));
  }
}

TEST_CASE("inverse and square root identities on random units") {
  std::mt19937 rng(13);
  for (int it = 0; it < 30; ++it) {
    int n = 1 + static_cast<int>(rng() % 2);
    int m = 2 + static_cast<int>(rng() % 5);
    TruncatedSeries f = testsupport::rnd_unit_series(rng, n, m, 5);
    CHECK(f * invert_unit(f) == TruncatedSeries::constant(n, m, 1));
    TruncatedSeries sq = f * f;
    TruncatedSeries r = sqrt_unit(sq, f.constant_term());
    CHECK(r * r == sq);
    CHECK(r == f);  // branch fixed by the constant term
  }
}

TEST_CASE("univariate inverse and square root match coefficient matching") {
  std::mt19937 rng(14);
  for (int it = 0; it < 20; ++it) {
    int m = 2 + static_cast<int>(rng() % 6);
    TruncatedSeries f = testsupport::rnd_unit_series(rng, 1, m, 5);
    CHECK(invert_unit(f) == testsupport::invert_by_matching(f));
    Rational c = f.constant_term();
    CHECK(sqrt_unit(f * f, c) == testsupport::sqrt_by_matching(f * f, c));
  }
}

TEST_CASE("operations commute with truncation") {
  std::mt19937 rng(15);
  for (int it = 0; it < 25; ++it) {
    int n = 1 + static_cast<int>(rng() % 2);
    int big = 3 + static_cast<int>(rng() % 3);
    int small = 2 + static_cast<int>(rng() % (big - 1));
    TruncatedSeries a = testsupport::rnd_unit_series(rng, n, big, 5);
    TruncatedSeries b = testsupport::rnd_series(rng, n, big, 5);
    CHECK(truncated(a + b, small) == truncated(a, small) + truncated(b, small));
    CHECK(truncated(a * b, small) == truncated(a, small) * truncated(b, small));
    CHECK(truncated(invert_unit(a), small) == invert_unit(truncated(a, small)));
    TruncatedSeries sq = a * a;
    CHECK(truncated(sqrt_unit(sq, a.constant_term()), small) ==
          sqrt_unit(truncated(sq, small), a.constant_term()));

    TruncatedSeries f = testsupport::rnd_series(rng, 1, big, 5);
    TruncatedSeries g = testsupport::rnd_series(rng, n, big, 5, true);
    CHECK(truncated(substitute(f, g), small) ==
          substitute(truncated(f, small), truncated(g, small)));
  }
}

TEST_CASE("substitute_var hits one variable at a time") {
  TruncatedSeries f(2, 4);
  f.add_term({1, 0}, 1);
  f.add_term({0, 2}, 1);
  TruncatedSeries g(2, 4);  // t1^2
  g.add_term({0, 2}, 1);
  TruncatedSeries out = substitute_var(f, 0, g);
  TruncatedSeries expected(2, 4);
  expected.add_term({0, 2}, 2);
  CHECK(out == expected);
  // Substituting the untouched variable leaves it alone.
  CHECK(substitute_var(f, 1, TruncatedSeries::variable(2, 4, 1)) == f);
}

TEST_CASE("pow matches repeated multiplication") {
  TruncatedSeries a = u(5, {"1", "2", "0", "-1"});
  TruncatedSeries acc = TruncatedSeries::constant(1, 5, 1);
  for (int k = 0; k <= 6; ++k) {
    CHECK(pow(a, k) == acc);
    acc = acc * a;
  }
}
