#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "arcjac/linalg.hpp"

namespace arcjac {

// Outcome of choose_points: g accepted sites with the full evaluation matrix
// and the certificate data (determinant plus, for every required row, the
// unsigned minors with that row deleted). All certificate entries are
// recomputed from the matrix by the caller's own tools if desired; nothing
// here is trusted state.
template <typename Site>
struct PointSelection {
  std::vector<Site> sites;
  Matrix<Rational> evaluation{0, 0, Rational(0)};  // entry (i, k) = f_i(sites[k])
  Rational determinant{0};
  std::map<int, std::vector<Rational>> row_deleted;  // required row -> minors per column
  int candidates_consumed = 0;
};

struct SelectionOptions {
  // Maximum candidates drawn from the stream; 0 means 64 * g.
  int candidate_budget = 0;
};

// Greedy selection of g sites from a candidate stream so that the g x g
// evaluation matrix [f_i(site_k)] is invertible and, for every required row
// r, all minors with row r deleted are nonzero.
//
// next_candidate: () -> std::optional<Site>; empty means the stream is done.
// evaluate: Site -> std::vector<Rational> of length g (the matrix column).
//
// A candidate is accepted when it extends the leading principal minor chain
// nonsingularly. At full size the certificate is checked; if a required
// minor vanishes, sites appearing in that minor are dropped (the deleted
// column's site is exonerated) and the search refills from the stream.
// Throws ExhaustionError with the best rank reached when the budget or the
// stream runs out.
template <typename Site, typename Stream, typename Eval>
PointSelection<Site> choose_points(int g, Stream&& next_candidate, Eval&& evaluate,
                                   const std::set<int>& required_rows,
                                   const SelectionOptions& options = {}) {
  if (g < 1) throw ValidationError("need at least one site");
  for (int r : required_rows)
    if (r < 0 || r >= g) throw ValidationError("required row index out of range");
  const int budget = options.candidate_budget > 0 ? options.candidate_budget : 64 * g;

  std::vector<Site> sites;
  std::vector<std::vector<Rational>> columns;
  int consumed = 0;
  int best_rank = 0;

  // Leading `rows` rows of the currently selected columns, optionally
  // extended by one candidate column.
  auto build = [&](int rows, const std::vector<Rational>* extra) -> Matrix<Rational> {
    int cols = static_cast<int>(columns.size()) + (extra ? 1 : 0);
    Matrix<Rational> m(rows, cols, Rational(0));
    for (int k = 0; k < static_cast<int>(columns.size()); ++k)
      for (int i = 0; i < rows; ++i) m.at(i, k) = columns[k][i];
    if (extra)
      for (int i = 0; i < rows; ++i) m.at(i, cols - 1) = (*extra)[i];
    return m;
  };

  while (true) {
    while (static_cast<int>(sites.size()) < g) {
      if (consumed >= budget) {
        std::ostringstream os;
        os << "candidate budget " << budget << " exhausted with rank " << best_rank << " of " << g;
        throw ExhaustionError(os.str(), best_rank, consumed);
      }
      std::optional<Site> cand = next_candidate();
      if (!cand) {
        std::ostringstream os;
        os << "candidate stream exhausted with rank " << best_rank << " of " << g;
        throw ExhaustionError(os.str(), best_rank, consumed);
      }
      ++consumed;
      std::vector<Rational> col = evaluate(*cand);
      if (static_cast<int>(col.size()) != g)
        throw ValidationError("evaluation column has wrong length");
      int m = static_cast<int>(sites.size());
      Matrix<Rational> lead = build(m + 1, &col);
      if (determinant(lead) == 0) continue;  // keeps the leading-minor chain nonsingular
      sites.push_back(*cand);
      columns.push_back(std::move(col));
      best_rank = std::max(best_rank, static_cast<int>(sites.size()));
    }

    Matrix<Rational> full = build(g, nullptr);
    Rational det = determinant(full);
    std::map<int, std::vector<Rational>> minors;
    std::set<int> implicated;
    bool ok = det != 0;
    for (int r : required_rows) {
      std::vector<Rational> row_minors = row_deleted_minors(full, r);
      for (int c = 0; c < g; ++c) {
        if (row_minors[c] != 0) continue;
        ok = false;
        // The minor that vanished uses every selected column except c.
        for (int k = 0; k < g; ++k)
          if (k != c) implicated.insert(k);
      }
      minors.emplace(r, std::move(row_minors));
    }
    if (ok) {
      PointSelection<Site> sel;
      sel.sites = std::move(sites);
      sel.evaluation = std::move(full);
      sel.determinant = std::move(det);
      sel.row_deleted = std::move(minors);
      sel.candidates_consumed = consumed;
      return sel;
    }
    if (det == 0 || implicated.size() == static_cast<std::size_t>(g)) {
      // No column is exonerated; start over with fresh candidates.
      sites.clear();
      columns.clear();
    } else {
      for (auto it = implicated.rbegin(); it != implicated.rend(); ++it) {
        sites.erase(sites.begin() + *it);
        columns.erase(columns.begin() + *it);
      }
    }
  }
}

}  // namespace arcjac
