#include "wkb/jsonio.hpp"

#include <charconv>
#include <string>

namespace wkb {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return cplx{j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw invalid_argument("complex value must be a number or a [re, im] array");
  return cplx{j[0].get<double>(), j[1].get<double>()};
}

cplx parse_cplx(std::string_view text) {
  const auto parse_part = [&](std::string_view part) {
    double v = 0.0;
    const char* b = part.data();
    const char* e = b + part.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e)
      throw invalid_argument("bad complex literal: '" + std::string(text) +
                             "' (expected re or re,im)");
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return cplx{parse_part(text), 0.0};
  return cplx{parse_part(text.substr(0, comma)), parse_part(text.substr(comma + 1))};
}

json polynomial_json(const Polynomial& p) {
  json c = json::array();
  for (const cplx& a : p.coeffs()) c.push_back(cplx_json(a));
  return json{{"type", "polynomial"}, {"coefficients", c}, {"expression", p.str()}};
}

Polynomial polynomial_from_json(const json& j) {
  if (j.is_string()) return Polynomial::parse(j.get<std::string>());
  if (!j.contains("coefficients"))
    throw invalid_argument("polynomial JSON needs a 'coefficients' array");
  std::vector<cplx> c;
  for (const auto& a : j.at("coefficients")) c.push_back(cplx_from_json(a));
  return Polynomial(std::move(c));
}

json path_json(const OrientedPath& p) {
  json nodes = json::array();
  for (const cplx& n : p.nodes) nodes.push_back(cplx_json(n));
  json kinds = json::array();
  for (std::size_t s = 0; s < p.segments(); ++s)
    kinds.push_back(p.kind(s) == OrientedPath::Kind::line ? "line" : "arc");
  return json{{"type", "path"},
              {"nodes", nodes},
              {"kinds", kinds},
              {"arc_center", cplx_json(p.arc_center)}};
}

OrientedPath path_from_json(const json& j) {
  OrientedPath p;
  for (const auto& n : j.at("nodes")) p.nodes.push_back(cplx_from_json(n));
  if (j.contains("kinds")) {
    for (const auto& k : j.at("kinds")) {
      const std::string s = k.get<std::string>();
      if (s != "line" && s != "arc") throw invalid_argument("path segment kind must be line|arc");
      p.kinds.push_back(s == "line" ? OrientedPath::Kind::line : OrientedPath::Kind::arc);
    }
  }
  if (j.contains("arc_center")) p.arc_center = cplx_from_json(j.at("arc_center"));
  p.validate();
  return p;
}

json series_json(const AsymptoticSeries& s) {
  json c = json::array();
  for (const cplx& a : s.coeffs) c.push_back(cplx_json(a));
  return json{{"type", "series"},
              {"signature", s.signature},
              {"anchor_sector", s.anchor_sector},
              {"anchor_point", cplx_json(s.anchor_point)},
              {"at_point", cplx_json(s.at_point)},
              {"coefficients", c}};
}

AsymptoticSeries series_from_json(const json& j) {
  AsymptoticSeries s;
  s.signature = j.at("signature").get<int>();
  s.anchor_sector = j.value("anchor_sector", 0);
  if (j.contains("anchor_point")) s.anchor_point = cplx_from_json(j.at("anchor_point"));
  if (j.contains("at_point")) s.at_point = cplx_from_json(j.at("at_point"));
  for (const auto& a : j.at("coefficients")) s.coeffs.push_back(cplx_from_json(a));
  return s;
}

json graph_json(const StokesGraph& g) {
  json tps = json::array();
  for (const auto& tp : g.tps.points)
    tps.push_back(json{{"location", cplx_json(tp.location)}, {"multiplicity", tp.multiplicity}});

  json lines = json::array();
  for (const auto& ln : g.lines) {
    json samples = json::array();
    for (const auto& s : ln.samples) samples.push_back(cplx_json(s.x));
    json entry{{"origin", ln.origin}, {"finite", ln.finite}, {"samples", samples}};
    if (ln.finite)
      entry["terminus_turning_point"] = ln.terminus_tp;
    else {
      entry["terminus_sector"] = ln.terminus_sector;
      entry["asymptotic_angle"] = ln.asymptotic_angle;
    }
    lines.push_back(entry);
  }

  json sectors = json::array();
  for (const auto& s : g.sectors) {
    sectors.push_back(json{{"index", s.index},
                           {"theta_lo", s.theta_lo},
                           {"theta_hi", s.theta_hi},
                           {"signature", s.signature},
                           {"anchor", cplx_json(s.anchor)},
                           {"bounding_lines", s.bounding_lines}});
  }

  return json{{"type", "stokes_graph"},
              {"characteristic", polynomial_json(g.q.base)},
              {"energy", cplx_json(g.q.energy)},
              {"phase", g.phase},
              {"R_infinity", g.R_infinity},
              {"turning_points", tps},
              {"lines", lines},
              {"sectors", sectors}};
}

json pade_json(const PadeApproximant& p) {
  json poles = json::array();
  for (std::size_t i = 0; i < p.poles.size(); ++i) {
    poles.push_back(json{{"location", cplx_json(p.poles[i])},
                         {"residue", cplx_json(p.residues[i])},
                         {"froissart", bool(p.froissart[i])}});
  }
  json num = json::array(), den = json::array();
  for (const cplx& c : p.numerator) num.push_back(cplx_json(c));
  for (const cplx& c : p.denominator) den.push_back(cplx_json(c));
  return json{{"type", "pade"},       {"L", p.L},           {"M", p.M},
              {"numerator", num},     {"denominator", den}, {"poles", poles}};
}

json forecast_json(const SingularityForecast& f) {
  json fixed = json::array();
  for (const cplx& z : f.fixed) fixed.push_back(cplx_json(z));
  return json{{"moving", cplx_json(f.moving)}, {"fixed", fixed}};
}

json connection_json(const ConnectionData& c) {
  return json{{"type", "connection"},
              {"from", c.from},
              {"basis", json::array({c.basis_a, c.basis_b})},
              {"lambda", cplx_json(c.lambda)},
              {"alpha", cplx_json(c.alpha)},
              {"beta", cplx_json(c.beta)},
              {"fit_residual", c.fit_residual}};
}

json eigen_json(const std::vector<EigenResult>& levels) {
  json arr = json::array();
  for (const auto& e : levels) {
    arr.push_back(json{{"index", e.index},
                       {"energy", e.energy},
                       {"wronskian_residual", e.wronskian_residual}});
  }
  return json{{"type", "eigenvalues"}, {"levels", arr}};
}

json lemma3_json(const Lemma3Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"lambda", row.lambda},
                        {"bs_value", cplx_json(row.borel_sum)},
                        {"oracle_value", cplx_json(row.oracle)},
                        {"rhs_eq30", cplx_json(row.reconstructed)},
                        {"residuals",
                         json{{"sum_oracle", row.resid_sum_oracle},
                              {"sum_recon", row.resid_sum_recon},
                              {"oracle_recon", row.resid_oracle_recon}}}});
  }
  return json{{"type", "pair_solution_report"},
              {"rows", rows},
              {"slope_fit", json{{"slope", r.slope}, {"predicted", r.predicted_slope}}}};
}

json suite_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        json{{"name", c.name}, {"residual", c.value}, {"bound", c.bound}, {"pass", c.pass}});
  }
  return json{{"type", "verify_report"},
              {"suite", r.suite},
              {"pass", r.passed()},
              {"checks", checks}};
}

}  // namespace wkb
