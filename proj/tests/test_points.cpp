#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <set>
#include <vector>

#include "arcjac/error.hpp"
#include "arcjac/points.hpp"
#include "support/helpers.hpp"

using namespace arcjac;

namespace {

// Candidate stream over a fixed list of rationals.
struct ListStream {
  std::vector<Rational> values;
  std::size_t cursor = 0;
  std::optional<Rational> operator()() {
    if (cursor >= values.size()) return std::nullopt;
    return values[cursor++];
  }
};

// Evaluation of the monomial family 1, x, ..., x^{g-1}.
struct MonomialEval {
  int g;
  std::vector<Rational> operator()(const Rational& x) const {
    std::vector<Rational> col(g, Rational(0));
    Rational p(1);
    for (int i = 0; i < g; ++i) {
      col[i] = p;
      p = p * x;
    }
    return col;
  }
};

void reverify(const PointSelection<Rational>& sel, const std::set<int>& required) {
  REQUIRE(sel.evaluation.rows() == sel.evaluation.cols());
  CHECK(determinant(sel.evaluation) == sel.determinant);
  CHECK(sel.determinant != 0);
  for (int r : required) {
    auto it = sel.row_deleted.find(r);
    REQUIRE(it != sel.row_deleted.end());
    std::vector<Rational> minors = row_deleted_minors(sel.evaluation, r);
    CHECK(minors == it->second);
    for (const Rational& m : minors) CHECK(m != 0);
  }
}

}  // namespace

TEST_CASE("two functions on the line skip the site that kills a minor") {
  // Functions {1, x} on candidates 0,1,2,3 with row 0 required: a selection
  // containing x = 0 has a vanishing row-0-deleted minor, so the greedy pick
  // (0, 1) is repaired to (1, 2).
  ListStream stream{{Rational(0), Rational(1), Rational(2), Rational(3)}};
  PointSelection<Rational> sel =
      choose_points<Rational>(2, stream, MonomialEval{2}, {0});
  CHECK(sel.sites == std::vector<Rational>{Rational(1), Rational(2)});
  CHECK(sel.determinant == 1);
  CHECK(sel.row_deleted.at(0) == std::vector<Rational>{Rational(2), Rational(1)});
  CHECK(sel.candidates_consumed == 3);
  reverify(sel, {0});
}

TEST_CASE("single site selection uses the empty minor convention") {
  ListStream stream{{Rational(7)}};
  auto eval = [](const Rational& x) { return std::vector<Rational>{x}; };
  PointSelection<Rational> sel = choose_points<Rational>(1, stream, eval, {0});
  CHECK(sel.sites == std::vector<Rational>{Rational(7)});
  CHECK(sel.determinant == 7);
  CHECK(sel.row_deleted.at(0) == std::vector<Rational>{Rational(1)});
}

TEST_CASE("vandermonde selection at size three") {
  ListStream stream{{Rational(1), Rational(2), Rational(3), Rational(4)}};
  PointSelection<Rational> sel =
      choose_points<Rational>(3, stream, MonomialEval{3}, {0});
  CHECK(sel.sites == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  CHECK(sel.determinant == 2);
  CHECK(sel.row_deleted.at(0) == std::vector<Rational>{Rational(6), Rational(6), Rational(2)});
  reverify(sel, {0});
}

TEST_CASE("all rows may be required at once") {
  ListStream stream{{Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)}};
  std::set<int> all{0, 1, 2};
  PointSelection<Rational> sel = choose_points<Rational>(3, stream, MonomialEval{3}, all);
  reverify(sel, all);
  CHECK(sel.candidates_consumed <= 5);
}

TEST_CASE("monomial families succeed quickly for small sizes") {
  for (int g = 1; g <= 4; ++g) {
    std::vector<Rational> candidates;
    for (int k = 1; k <= 64 * g; ++k) candidates.push_back(Rational(k));
    ListStream stream{candidates};
    PointSelection<Rational> sel = choose_points<Rational>(g, stream, MonomialEval{g}, {0});
    CHECK(sel.candidates_consumed <= g + 2);
    reverify(sel, {0});
  }
}

TEST_CASE("determinism under a fixed stream") {
  std::vector<Rational> vals{Rational(3), Rational(-1), Rational(4), Rational(1),
                             Rational(5), Rational(9),  Rational(2), Rational(6)};
  PointSelection<Rational> a =
      choose_points<Rational>(3, ListStream{vals}, MonomialEval{3}, {0, 1});
  PointSelection<Rational> b =
      choose_points<Rational>(3, ListStream{vals}, MonomialEval{3}, {0, 1});
  CHECK(a.sites == b.sites);
  CHECK(a.determinant == b.determinant);
  CHECK(a.candidates_consumed == b.candidates_consumed);
}

TEST_CASE("exhaustion reports the best rank reached") {
  // Every candidate gives the same column, so rank stalls at 1.
  ListStream stream{{Rational(1), Rational(1), Rational(1)}};
  try {
    choose_points<Rational>(2, stream, MonomialEval{2}, {0});
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(e.best_rank == 1);
    CHECK(e.candidates_consumed == 3);
  }
}

TEST_CASE("budget caps consumption") {
  std::vector<Rational> same(100, Rational(2));
  ListStream stream{same};
  SelectionOptions opts;
  opts.candidate_budget = 5;
  try {
    choose_points<Rational>(2, stream, MonomialEval{2}, {0}, opts);
    FAIL("expected exhaustion");
  } catch (const ExhaustionError& e) {
    CHECK(e.candidates_consumed <= 5);
  }
}

TEST_CASE("bad arguments are rejected") {
  ListStream stream{{Rational(1)}};
  CHECK_THROWS_AS(choose_points<Rational>(0, stream, MonomialEval{1}, {}), ValidationError);
  ListStream stream2{{Rational(1)}};
  CHECK_THROWS_AS(choose_points<Rational>(1, stream2, MonomialEval{1}, {5}), ValidationError);
}

TEST_CASE("a zero valued candidate is dropped only when it breaks a minor") {
  // With no required rows, x = 0 is a perfectly good site.
  ListStream stream{{Rational(0), Rational(1)}};
  PointSelection<Rational> sel = choose_points<Rational>(2, stream, MonomialEval{2}, {});
  CHECK(sel.sites == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(sel.determinant != 0);
}
