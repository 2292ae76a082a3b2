#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "arcjac/abeljacobi.hpp"
#include "arcjac/curve.hpp"
#include "arcjac/flow.hpp"
#include "arcjac/forms.hpp"
#include "arcjac/points.hpp"
#include "arcjac/series.hpp"

// JSON interchange. Rationals travel as decimal strings so exactness
// survives serialization; ring parameters (num_vars, order) are carried by
// the enclosing objects, not by every series. Parse problems throw
// ValidationError (never raw nlohmann exceptions).

namespace arcjac {

using json = nlohmann::json;

json parse_json_text(const std::string& text);

json rational_to_json(const Rational& value);           // decimal string
Rational rational_from_json(const json& j);

json series_to_json(const TruncatedSeries& s);          // list of term records
TruncatedSeries series_from_json(const json& j, int num_vars, int order);

json form_to_json(const DifferentialForm& w);           // {degree, terms}
DifferentialForm form_from_json(const json& j, int num_vars, int order);

// Terms carry exponents of length base_vars + 1 with the t power first.
json flow_series_to_json(const FlowSeries& f);
FlowSeries flow_series_from_json(const json& j, int base_vars, int order);

json flow_problem_to_json(const FlowProblem& p);        // {size, base_vars, order, matrix, rhs}
FlowProblem flow_problem_from_json(const json& j);
json flow_solution_to_json(const FlowSolution& s);      // {phi, valid_order}
json flow_residual_to_json(const FlowResidual& r);      // {ok, max_valid_order, residual_terms}

json curve_to_json(const HyperellipticCurve& c);        // {s_coeffs}
HyperellipticCurve curve_from_json(const json& j);
json point_to_json(const AffinePoint& p);               // {x, y}
AffinePoint point_from_json(const json& j);
json arc_to_json(const FormalArc& a);                   // {center, displacement}
FormalArc arc_from_json(const json& j, const HyperellipticCurve& c, int num_vars, int order);

// {curve, vars, order, arcs: [{center, displacement, multiplicity}]}.
// Arc square roots are recomputed on load, so a loaded cycle is always
// internally consistent.
json cycle_to_json(const ZeroCycle& z);
ZeroCycle cycle_from_json(const json& j);

json class_to_json(const AbelJacobiClass& cls);         // {components}
AbelJacobiClass class_from_json(const json& j, int num_vars, int order, int genus);

json selection_to_json(const PointSelection<AffinePoint>& sel);

// {h, vars, order}; series_from_json applied per component.
json target_to_json(const std::vector<TruncatedSeries>& target);
std::vector<TruncatedSeries> target_from_json(const json& j, int default_vars, int default_order);

// Dimension report {vars, order, degree, dim_total, dim_closed, dim_exact, basis}.
json dimension_report_to_json(const DeRhamSpace& space);

// Full verification report, embedding the inputs for reproducibility.
json surjectivity_report_to_json(const SurjectivityReport& report,
                                 const HyperellipticCurve& curve,
                                 const std::vector<TruncatedSeries>& target,
                                 const ConstructOptions& options);

}  // namespace arcjac
