#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "arcjac/flow.hpp"
#include "arcjac/forms.hpp"
#include "arcjac/series.hpp"

// Printers so failed assertions show values instead of {?}.
namespace arcjac {

inline std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
  return os << series_to_string(s);
}

inline std::ostream& operator<<(std::ostream& os, const DifferentialForm& w) {
  return os << form_to_string(w);
}

}  // namespace arcjac

namespace testsupport {

inline arcjac::Rational q(const std::string& text) { return arcjac::parse_rational(text); }

// Univariate series from ascending coefficient literals: u(4, {"1","0","-1/2"})
// is 1 - t^2/2 in k[t]/t^4.
inline arcjac::TruncatedSeries u(int order, std::initializer_list<const char*> coeffs) {
  arcjac::TruncatedSeries s(1, order);
  int k = 0;
  for (const char* c : coeffs) s.add_term({k++}, q(c));
  return s;
}

inline arcjac::TruncatedSeries term(int num_vars, int order, const arcjac::Exponents& e,
                                    const std::string& c) {
  arcjac::TruncatedSeries s(num_vars, order);
  s.add_term(e, q(c));
  return s;
}

// c * t^e dt_J as a free representative.
inline arcjac::DifferentialForm form_term(int num_vars, int order, const arcjac::Exponents& e,
                                          const std::vector<int>& indices, const std::string& c) {
  arcjac::DifferentialForm w(num_vars, order, static_cast<int>(indices.size()));
  w.add_term(e, indices, q(c));
  return w;
}

// Image of a flow problem under the order surjection M -> new_order (both the
// t-adic length and the base ring shrink).
inline arcjac::FlowSeries truncate_flow_series(const arcjac::FlowSeries& f, int new_order) {
  arcjac::FlowSeries g(f.base_vars(), new_order);
  for (int j = 0; j < new_order; ++j) g.set_coeff(j, arcjac::truncated(f.coeff(j), new_order));
  return g;
}

inline arcjac::FlowProblem truncate_flow_problem(const arcjac::FlowProblem& p, int new_order) {
  arcjac::FlowProblem out;
  out.size = p.size;
  out.base_vars = p.base_vars;
  out.order = new_order;
  out.matrix.resize(p.size);
  for (int i = 0; i < p.size; ++i)
    for (int l = 0; l < p.size; ++l)
      out.matrix[i].push_back(truncate_flow_series(p.matrix[i][l], new_order));
  for (int i = 0; i < p.size; ++i) out.rhs.push_back(arcjac::truncated(p.rhs[i], new_order));
  return out;
}

}  // namespace testsupport
