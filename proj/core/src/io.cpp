#include "arcjac/io.hpp"

#include "arcjac/error.hpp"

namespace arcjac {

namespace {

// nlohmann throws its own exception hierarchy; the library contract is
// ValidationError for all malformed input.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

Exponents exponents_from_json(const json& j, int expected_len) {
  return guarded("bad exponents", [&] {
    Exponents e = j.get<Exponents>();
    if (static_cast<int>(e.size()) != expected_len)
      throw ValidationError("exponent vector has wrong length");
    return e;
  });
}

Rational term_value(const json& t) {
  // Explicit return type: gmpxx division yields a lazy expression object that
  // would otherwise escape the lambda holding references to num and den.
  return guarded("bad term", [&]() -> Rational {
    Rational num = parse_rational(t.at("numerator").get<std::string>());
    Rational den = parse_rational(t.at("denominator").get<std::string>());
    if (den == 0) throw ValidationError("zero denominator");
    return num / den;
  });
}

void split_rational(const Rational& v, json& t) {
  t["numerator"] = v.get_num().get_str();
  t["denominator"] = v.get_den().get_str();
}

}  // namespace

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON");
  return j;
}

json rational_to_json(const Rational& value) { return rational_to_string(value); }

Rational rational_from_json(const json& j) {
  return guarded("bad rational", [&] { return parse_rational(j.get<std::string>()); });
}

json series_to_json(const TruncatedSeries& s) {
  json out = json::array();
  for (const auto& [e, c] : s.terms()) {
    json t;
    t["exponents"] = e;
    split_rational(c, t);
    out.push_back(std::move(t));
  }
  return out;
}

TruncatedSeries series_from_json(const json& j, int num_vars, int order) {
  return guarded("bad series", [&] {
    if (!j.is_array()) throw ValidationError("series must be an array of terms");
    TruncatedSeries s(num_vars, order);
    for (const auto& t : j) {
      Exponents e = exponents_from_json(t.at("exponents"), num_vars);
      for (int v : e)
        if (v < 0) throw ValidationError("negative exponent");
      if (total_degree(e) >= order) throw ValidationError("term degree exceeds truncation order");
      s.add_term(e, term_value(t));
    }
    return s;
  });
}

json form_to_json(const DifferentialForm& w) {
  json terms = json::array();
  for (const auto& [k, c] : w.terms()) {
    json t;
    t["exponents"] = k.exponents;
    t["index_set"] = k.indices;
    split_rational(c, t);
    terms.push_back(std::move(t));
  }
  return json{{"degree", w.degree()}, {"terms", std::move(terms)}};
}

DifferentialForm form_from_json(const json& j, int num_vars, int order) {
  return guarded("bad form", [&] {
    int degree = j.at("degree").get<int>();
    std::vector<std::tuple<Exponents, std::vector<int>, Rational>> terms;
    for (const auto& t : j.at("terms")) {
      terms.emplace_back(exponents_from_json(t.at("exponents"), num_vars),
                         t.at("index_set").get<std::vector<int>>(), term_value(t));
    }
    return DifferentialForm::from_terms(num_vars, order, degree, terms);
  });
}

json flow_series_to_json(const FlowSeries& f) {
  json out = json::array();
  for (int j = 0; j < f.order(); ++j) {
    for (const auto& [e, c] : f.coeff(j).terms()) {
      json t;
      Exponents full;
      full.reserve(e.size() + 1);
      full.push_back(j);
      full.insert(full.end(), e.begin(), e.end());
      t["exponents"] = full;
      split_rational(c, t);
      out.push_back(std::move(t));
    }
  }
  return out;
}

FlowSeries flow_series_from_json(const json& j, int base_vars, int order) {
  return guarded("bad flow series", [&] {
    if (!j.is_array()) throw ValidationError("flow series must be an array of terms");
    FlowSeries f(base_vars, order);
    for (const auto& t : j) {
      Exponents full = exponents_from_json(t.at("exponents"), base_vars + 1);
      int tpow = full[0];
      if (tpow < 0 || tpow >= order) throw ValidationError("t power out of range");
      Exponents rest(full.begin() + 1, full.end());
      if (total_degree(rest) >= order)
        throw ValidationError("coefficient degree exceeds truncation order");
      TruncatedSeries c = f.coeff(tpow);
      c.add_term(rest, term_value(t));
      f.set_coeff(tpow, c);
    }
    return f;
  });
}

json flow_problem_to_json(const FlowProblem& p) {
  json matrix = json::array();
  for (const auto& row : p.matrix) {
    json jrow = json::array();
    for (const auto& entry : row) jrow.push_back(flow_series_to_json(entry));
    matrix.push_back(std::move(jrow));
  }
  json rhs = json::array();
  for (const auto& b : p.rhs) rhs.push_back(series_to_json(b));
  return json{{"size", p.size},
              {"base_vars", p.base_vars},
              {"order", p.order},
              {"matrix", std::move(matrix)},
              {"rhs", std::move(rhs)}};
}

FlowProblem flow_problem_from_json(const json& j) {
  return guarded("bad flow problem", [&] {
    FlowProblem p;
    p.size = j.at("size").get<int>();
    p.base_vars = j.value("base_vars", 0);
    p.order = j.at("order").get<int>();
    if (p.size < 1) throw ValidationError("flow system size must be >= 1");
    if (p.order < 2) throw ValidationError("flow problems need truncation order >= 2");
    if (p.base_vars < 0) throw ValidationError("base_vars must be nonnegative");
    const json& matrix = j.at("matrix");
    if (static_cast<int>(matrix.size()) != p.size)
      throw ValidationError("matrix row count != size");
    p.matrix.assign(p.size, std::vector<FlowSeries>(p.size, FlowSeries(p.base_vars, p.order)));
    for (int i = 0; i < p.size; ++i) {
      if (static_cast<int>(matrix[i].size()) != p.size)
        throw ValidationError("matrix column count != size");
      for (int l = 0; l < p.size; ++l)
        p.matrix[i][l] = flow_series_from_json(matrix[i][l], p.base_vars, p.order);
    }
    const json& rhs = j.at("rhs");
    if (static_cast<int>(rhs.size()) != p.size) throw ValidationError("rhs length != size");
    p.rhs.assign(p.size, TruncatedSeries(p.base_vars, p.order));
    for (int i = 0; i < p.size; ++i) p.rhs[i] = series_from_json(rhs[i], p.base_vars, p.order);
    return p;
  });
}

json flow_solution_to_json(const FlowSolution& s) {
  json phi = json::array();
  for (const auto& f : s.phi) phi.push_back(flow_series_to_json(f));
  return json{{"phi", std::move(phi)}, {"valid_order", s.valid_order}};
}

json flow_residual_to_json(const FlowResidual& r) {
  json terms = json::array();
  for (const auto& comp : r.components) terms.push_back(flow_series_to_json(comp));
  return json{{"ok", r.ok},
              {"max_valid_order", r.valid_order},
              {"residual_terms", std::move(terms)}};
}

json curve_to_json(const HyperellipticCurve& c) {
  json coeffs = json::array();
  for (const auto& v : c.s().coeffs()) coeffs.push_back(rational_to_string(v));
  return json{{"s_coeffs", std::move(coeffs)}};
}

HyperellipticCurve curve_from_json(const json& j) {
  return guarded("bad curve", [&] {
    std::vector<Rational> coeffs;
    for (const auto& v : j.at("s_coeffs")) coeffs.push_back(parse_rational(v.get<std::string>()));
    return make_curve(coeffs);
  });
}

json point_to_json(const AffinePoint& p) {
  return json{{"x", rational_to_string(p.x)}, {"y", rational_to_string(p.y)}};
}

AffinePoint point_from_json(const json& j) {
  return guarded("bad point", [&] {
    return AffinePoint{parse_rational(j.at("x").get<std::string>()),
                       parse_rational(j.at("y").get<std::string>())};
  });
}

json arc_to_json(const FormalArc& a) {
  return json{{"center", point_to_json(a.center)},
              {"displacement", series_to_json(a.displacement)}};
}

FormalArc arc_from_json(const json& j, const HyperellipticCurve& c, int num_vars, int order) {
  return guarded("bad arc", [&] {
    AffinePoint center = point_from_json(j.at("center"));
    TruncatedSeries disp = series_from_json(j.at("displacement"), num_vars, order);
    return make_arc(c, center, disp);
  });
}

json cycle_to_json(const ZeroCycle& z) {
  json arcs = json::array();
  for (const auto& [arc, n] : z.arcs()) {
    json a = arc_to_json(arc);
    a["multiplicity"] = n;
    arcs.push_back(std::move(a));
  }
  return json{{"curve", curve_to_json(z.curve())},
              {"vars", z.num_vars()},
              {"order", z.order()},
              {"arcs", std::move(arcs)}};
}

ZeroCycle cycle_from_json(const json& j) {
  return guarded("bad cycle", [&] {
    HyperellipticCurve curve = curve_from_json(j.at("curve"));
    int vars = j.at("vars").get<int>();
    int order = j.at("order").get<int>();
    ZeroCycle z(curve, vars, order);
    for (const auto& a : j.at("arcs")) {
      long mult = a.value("multiplicity", 1L);
      z.add(arc_from_json(a, curve, vars, order), mult);
    }
    return z;
  });
}

json class_to_json(const AbelJacobiClass& cls) {
  json comps = json::array();
  for (const auto& w : cls.components) comps.push_back(form_to_json(w));
  return json{{"components", std::move(comps)}};
}

AbelJacobiClass class_from_json(const json& j, int num_vars, int order, int genus) {
  return guarded("bad class", [&] {
    AbelJacobiClass cls;
    const json& comps = j.at("components");
    if (static_cast<int>(comps.size()) != genus)
      throw ValidationError("class component count != genus");
    for (const auto& c : comps) cls.components.push_back(form_from_json(c, num_vars, order));
    return cls;
  });
}

json selection_to_json(const PointSelection<AffinePoint>& sel) {
  json sites = json::array();
  for (const auto& p : sel.sites) sites.push_back(point_to_json(p));
  json matrix = json::array();
  for (int i = 0; i < sel.evaluation.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < sel.evaluation.cols(); ++k)
      row.push_back(rational_to_string(sel.evaluation.at(i, k)));
    matrix.push_back(std::move(row));
  }
  json minors = json::array();
  for (const auto& [row, values] : sel.row_deleted) {
    json vals = json::array();
    for (const auto& v : values) vals.push_back(rational_to_string(v));
    minors.push_back(json{{"row", row}, {"values", std::move(vals)}});
  }
  return json{{"sites", std::move(sites)},
              {"matrix", std::move(matrix)},
              {"determinant", rational_to_string(sel.determinant)},
              {"minors", std::move(minors)},
              {"candidates_consumed", sel.candidates_consumed}};
}

json target_to_json(const std::vector<TruncatedSeries>& target) {
  json h = json::array();
  for (const auto& s : target) h.push_back(series_to_json(s));
  json out{{"h", std::move(h)}};
  if (!target.empty()) {
    out["vars"] = target[0].num_vars();
    out["order"] = target[0].order();
  }
  return out;
}

std::vector<TruncatedSeries> target_from_json(const json& j, int default_vars,
                                              int default_order) {
  return guarded("bad target", [&] {
    const json* h = &j;
    int vars = default_vars;
    int order = default_order;
    if (j.is_object()) {
      h = &j.at("h");
      vars = j.value("vars", default_vars);
      order = j.value("order", default_order);
    }
    if (!h->is_array()) throw ValidationError("target must carry a list of series");
    std::vector<TruncatedSeries> target;
    for (const auto& comp : *h) target.push_back(series_from_json(comp, vars, order));
    return target;
  });
}

json dimension_report_to_json(const DeRhamSpace& space) {
  json basis = json::array();
  for (const auto& key : space.basis())
    basis.push_back(json{{"exponents", key.exponents}, {"index_set", key.indices}});
  return json{{"vars", space.num_vars()},   {"order", space.order()},
              {"degree", space.degree()},   {"dim_total", space.dim_total()},
              {"dim_closed", space.dim_closed()}, {"dim_exact", space.dim_exact()},
              {"basis", std::move(basis)}};
}

json surjectivity_report_to_json(const SurjectivityReport& report,
                                 const HyperellipticCurve& curve,
                                 const std::vector<TruncatedSeries>& target,
                                 const ConstructOptions& options) {
  json directions = json::array();
  for (const auto& dir : report.construction.directions) {
    json phis = json::array();
    for (const auto& f : dir.phi) phis.push_back(flow_series_to_json(f));
    json vels = json::array();
    for (const auto& v : dir.velocities) vels.push_back(rational_to_string(v));
    directions.push_back(
        json{{"direction", dir.direction}, {"phi", std::move(phis)}, {"velocities", std::move(vels)}});
  }
  json expected = json::array();
  for (const auto& w : report.expected) expected.push_back(form_to_json(w));
  json out{{"pass", report.pass},
           {"component_pass", report.component_pass},
           {"velocities_nonzero", report.velocities_nonzero},
           {"arcs_nonconstant", report.arcs_nonconstant},
           {"curve", curve_to_json(curve)},
           {"target", target_to_json(target)},
           {"options",
            json{{"bound", options.bound},
                 {"seed", options.seed},
                 {"candidate_budget", options.candidate_budget}}},
           {"cycle", cycle_to_json(report.construction.cycle)},
           {"class", class_to_json(report.cycle_class)},
           {"expected", std::move(expected)},
           {"directions", std::move(directions)},
           {"trivial", report.construction.trivial}};
  if (!report.construction.trivial) out["certificate"] = selection_to_json(report.construction.selection);
  return out;
}

}  // namespace arcjac
