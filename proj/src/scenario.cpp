#include "ahx/scenario.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "ahx/cole.hpp"
#include "ahx/expr.hpp"
#include "ahx/extension.hpp"

namespace ahx::scenario {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ValidationError, path + ": " + what);
}

// ---------------------------------------------------------------------------
// schema helpers

void allow_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) invalid(path, "expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) invalid(path, "unknown field '" + it.key() + "'");
  }
}

const Json& need(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) invalid(path, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string need_string(const Json& j, const std::string& path, const char* key) {
  const Json& v = need(j, path, key);
  if (!v.is_string()) invalid(path + "." + key, "expected a string");
  return v.get<std::string>();
}

long long as_int(const Json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer()) invalid(path, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi) invalid(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) invalid(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(path, "not finite");
  return x;
}

Complex as_complex(const Json& v, const std::string& path) {
  if (v.is_number()) return {as_number(v, path), 0.0};
  if (v.is_array() && v.size() == 2) return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
  invalid(path, "expected a number or [re, im]");
}

std::vector<std::string> string_list(const Json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) invalid(path, "expected a non-empty array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) invalid(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

Json cj(Complex c) { return Json::array({c.real(), c.imag()}); }

Json cj(const CVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(cj(c));
  return a;
}

Json cj(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(cj(c));
  return a;
}

// ---------------------------------------------------------------------------
// schema

const std::set<std::string> kOps = {"extend",  "norm",    "characters", "discriminant", "tractable",
                                    "quotient", "zero_divisor", "spectral", "cole",  "silov",
                                    "compare", "tower",   "cole_tower"};

void validate_points(const Json& p, const std::string& path, bool poly) {
  const std::string kind = need_string(p, path, "kind");
  if (kind == "disc") {
    allow_keys(p, path, {"kind", "boundary", "interior_count", "interior_radius", "interior"});
    as_int(need(p, path, "boundary"), path + ".boundary", 1, 100000);
    if (p.contains("interior_count")) as_int(p["interior_count"], path + ".interior_count", 0, 100000);
    if (p.contains("interior_radius")) {
      const double r = as_number(p["interior_radius"], path + ".interior_radius");
      if (!(r > 0.0 && r < 1.0)) invalid(path + ".interior_radius", "must lie in (0, 1)");
    }
    if (p.contains("interior")) {
      if (!p["interior"].is_array()) invalid(path + ".interior", "expected an array");
      for (std::size_t i = 0; i < p["interior"].size(); ++i) {
        as_complex(p["interior"][i], path + ".interior[" + std::to_string(i) + "]");
      }
    }
  } else if (kind == "coords") {
    allow_keys(p, path, {"kind", "coords"});
    const Json& c = need(p, path, "coords");
    if (!c.is_array() || c.empty()) invalid(path + ".coords", "expected a non-empty array");
    for (std::size_t i = 0; i < c.size(); ++i) as_complex(c[i], path + ".coords[" + std::to_string(i) + "]");
  } else if (kind == "interval") {
    allow_keys(p, path, {"kind", "segments", "extra"});
    const Json& s = need(p, path, "segments");
    if (!s.is_array() || s.empty()) invalid(path + ".segments", "expected a non-empty array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string sp = path + ".segments[" + std::to_string(i) + "]";
      allow_keys(s[i], sp, {"from", "to", "count"});
      as_number(need(s[i], sp, "from"), sp + ".from");
      as_number(need(s[i], sp, "to"), sp + ".to");
      as_int(need(s[i], sp, "count"), sp + ".count", 1, 100000);
    }
    if (p.contains("extra")) {
      if (!p["extra"].is_array()) invalid(path + ".extra", "expected an array");
      for (std::size_t i = 0; i < p["extra"].size(); ++i) as_complex(p["extra"][i], path + ".extra[" + std::to_string(i) + "]");
    }
  } else if (kind == "abstract") {
    allow_keys(p, path, {"kind", "count"});
    if (poly) invalid(path, "the poly backend needs coordinates");
    as_int(need(p, path, "count"), path + ".count", 1, 100000);
  } else {
    invalid(path + ".kind", "expected disc, coords, interval or abstract");
  }
}

void validate_operation(const Json& op, const std::string& path, const std::set<std::string>& polys,
                        const std::map<std::string, std::string>& elements) {
  const std::string name = need_string(op, path, "op");
  if (!kOps.count(name)) invalid(path + ".op", "unknown operation '" + name + "'");
  const auto need_poly = [&](const char* key) {
    const std::string p = need_string(op, path, key);
    if (!polys.count(p)) invalid(path + "." + key, "unknown polynomial '" + p + "'");
  };
  const auto need_element = [&](const char* key) {
    const std::string e = need_string(op, path, key);
    if (!elements.count(e)) invalid(path + "." + key, "unknown element '" + e + "'");
    return e;
  };
  const auto need_polys = [&](const char* key) {
    for (const auto& p : string_list(need(op, path, key), path + "." + key)) {
      if (!polys.count(p)) invalid(path + "." + key, "unknown polynomial '" + p + "'");
    }
  };
  if (name == "extend" || name == "discriminant" || name == "tractable" || name == "compare") {
    allow_keys(op, path, {"op", "poly"});
    need_poly("poly");
  } else if (name == "quotient") {
    allow_keys(op, path, {"op", "poly", "samples"});
    need_poly("poly");
    if (op.contains("samples")) as_int(op["samples"], path + ".samples", 0, 1000);
  } else if (name == "norm" || name == "zero_divisor" || name == "spectral") {
    allow_keys(op, path, {"op", "element"});
    need_element("element");
  } else if (name == "characters") {
    allow_keys(op, path, {"op", "poly", "tower"});
    if (op.contains("poly") && op.contains("tower")) invalid(path, "give poly or tower, not both");
    if (op.contains("poly")) need_poly("poly");
    if (op.contains("tower")) need_polys("tower");
  } else if (name == "cole") {
    allow_keys(op, path, {"op", "polys", "element"});
    need_polys("polys");
    if (op.contains("element")) {
      const std::string e = need_element("element");
      const auto pl = string_list(op["polys"], path + ".polys");
      if (pl.size() != 1 || elements.at(e) != pl.front()) {
        invalid(path + ".element", "must lie in the extension by the single listed polynomial");
      }
    }
  } else if (name == "silov") {
    allow_keys(op, path, {"op"});
  } else if (name == "tower") {
    allow_keys(op, path, {"op", "polys", "samples"});
    need_polys("polys");
    if (op.contains("samples")) as_int(op["samples"], path + ".samples", 0, 100000);
  } else if (name == "cole_tower") {
    allow_keys(op, path, {"op", "stages", "samples"});
    const Json& st = need(op, path, "stages");
    if (!st.is_array() || st.empty()) invalid(path + ".stages", "expected a non-empty array of stages");
    for (std::size_t k = 0; k < st.size(); ++k) {
      const std::string sp = path + ".stages[" + std::to_string(k) + "]";
      for (const auto& e : string_list(st[k], sp)) expr::Expression::parse(e);
    }
    if (op.contains("samples")) as_int(op["samples"], path + ".samples", 0, 100000);
  }
}

}  // namespace

Tolerances tolerances_from_json(const Json& j, Tolerances t) {
  allow_keys(j, "tolerances", {"root_tol", "rank_rel_tol", "lp_feas_tol", "convex_tol"});
  if (j.contains("root_tol")) t.root_tol = as_number(j["root_tol"], "tolerances.root_tol");
  if (j.contains("rank_rel_tol")) t.rank_rel_tol = as_number(j["rank_rel_tol"], "tolerances.rank_rel_tol");
  if (j.contains("lp_feas_tol")) t.lp_feas_tol = as_number(j["lp_feas_tol"], "tolerances.lp_feas_tol");
  if (j.contains("convex_tol")) t.convex_tol = as_number(j["convex_tol"], "tolerances.convex_tol");
  try {
    t.validate();
  } catch (const Error& e) {
    invalid("tolerances", e.what());
  }
  return t;
}

Json tolerances_to_json(const Tolerances& t) {
  return Json{{"root_tol", t.root_tol}, {"rank_rel_tol", t.rank_rel_tol}, {"lp_feas_tol", t.lp_feas_tol},
              {"convex_tol", t.convex_tol}};
}

void validate(const Json& s) {
  allow_keys(s, "scenario",
             {"name", "description", "seed", "algebra", "polynomials", "elements", "tolerances", "operations", "format",
              "notes"});
  need_string(s, "scenario", "name");
  if (s.contains("description") && !s["description"].is_string()) invalid("scenario.description", "expected a string");
  if (s.contains("notes") && !s["notes"].is_string()) invalid("scenario.notes", "expected a string");
  if (s.contains("seed")) as_int(s["seed"], "scenario.seed", 0, (1LL << 62));
  if (s.contains("format")) {
    const std::string f = need_string(s, "scenario", "format");
    if (f != "json" && f != "table") invalid("scenario.format", "expected json or table");
  }
  if (s.contains("tolerances")) tolerances_from_json(s["tolerances"]);

  const Json& a = need(s, "scenario", "algebra");
  allow_keys(a, "algebra", {"backend", "points", "degree_bound", "functions"});
  const std::string backend = need_string(a, "algebra", "backend");
  if (backend != "pointwise" && backend != "poly") invalid("algebra.backend", "expected pointwise or poly");
  validate_points(need(a, "algebra", "points"), "algebra.points", backend == "poly");
  if (backend == "poly") as_int(need(a, "algebra", "degree_bound"), "algebra.degree_bound", 0, 1000);
  else if (a.contains("degree_bound")) invalid("algebra.degree_bound", "only for the poly backend");
  std::set<std::string> names{"z"};
  if (a.contains("functions")) {
    const Json& f = a["functions"];
    if (!f.is_object()) invalid("algebra.functions", "expected an object");
    for (auto it = f.begin(); it != f.end(); ++it) {
      const std::string fp = "algebra.functions." + it.key();
      expr::Expression::parse(it.key());  // must be a plain identifier
      if (it.key() == "x" || it.key() == "i" || it.key() == "z") invalid(fp, "reserved name");
      if (!it.value().is_array() || it.value().empty()) invalid(fp, "expected an array of values");
      for (std::size_t i = 0; i < it.value().size(); ++i) as_complex(it.value()[i], fp + "[" + std::to_string(i) + "]");
      names.insert(it.key());
    }
  }

  std::set<std::string> polys;
  if (s.contains("polynomials")) {
    const Json& ps = s["polynomials"];
    if (!ps.is_array()) invalid("polynomials", "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string pp = "polynomials[" + std::to_string(i) + "]";
      allow_keys(ps[i], pp, {"name", "expr", "t"});
      const std::string n = need_string(ps[i], pp, "name");
      if (!polys.insert(n).second) invalid(pp + ".name", "duplicate name '" + n + "'");
      const auto e = expr::Expression::parse(need_string(ps[i], pp, "expr"));
      for (const auto& id : e.names()) {
        if (!names.count(id)) invalid(pp + ".expr", "unknown name '" + id + "'");
      }
      if (ps[i].contains("t")) {
        const Json& t = ps[i]["t"];
        if (t.is_string()) {
          if (t != "minimal" && t != "power-sum") invalid(pp + ".t", "expected a number, \"minimal\" or \"power-sum\"");
        } else if (!(as_number(t, pp + ".t") > 0.0)) {
          invalid(pp + ".t", "must be positive");
        }
      }
    }
  }
  std::map<std::string, std::string> elements;
  if (s.contains("elements")) {
    const Json& es = s["elements"];
    if (!es.is_array()) invalid("elements", "expected an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string ep = "elements[" + std::to_string(i) + "]";
      allow_keys(es[i], ep, {"name", "expr", "in"});
      const std::string n = need_string(es[i], ep, "name");
      if (elements.count(n)) invalid(ep + ".name", "duplicate name '" + n + "'");
      std::string in;
      if (es[i].contains("in")) {
        in = need_string(es[i], ep, "in");
        if (!polys.count(in)) invalid(ep + ".in", "unknown polynomial '" + in + "'");
      }
      const auto e = expr::Expression::parse(need_string(es[i], ep, "expr"));
      if (in.empty() && e.uses_x()) invalid(ep + ".expr", "x only makes sense inside an extension ('in')");
      for (const auto& id : e.names()) {
        if (!names.count(id)) invalid(ep + ".expr", "unknown name '" + id + "'");
      }
      elements[n] = in;
    }
  }
  const Json& ops = need(s, "scenario", "operations");
  if (!ops.is_array()) invalid("operations", "expected an array");
  if (ops.empty()) invalid("operations", "no operations requested");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    validate_operation(ops[i], "operations[" + std::to_string(i) + "]", polys, elements);
  }
}

// ---------------------------------------------------------------------------
// execution

namespace {

class Model {
 public:
  Model(const Json& s, const Tolerances& tol, std::uint64_t seed) : tol_(tol), rng_(seed) {
    const Json& a = s["algebra"];
    const bool poly = a["backend"] == "poly";
    PointSet ps = make_points(a["points"]);
    if (poly) ground_ = Algebra::poly_model(ps, a["degree_bound"].get<int>());
    else ground_ = Algebra::pointwise(ps);
    const std::size_t n = ground_->points().size();
    if (ps.has_coords()) {
      CVector z(idx(n));
      for (std::size_t i = 0; i < n; ++i) z[idx(i)] = ps.coord(i);
      vars_["z"] = z;
    }
    if (a.contains("functions")) {
      for (auto it = a["functions"].begin(); it != a["functions"].end(); ++it) {
        if (it.value().size() != n) {
          invalid("algebra.functions." + it.key(), "has " + std::to_string(it.value().size()) + " values for " +
                                                       std::to_string(n) + " points");
        }
        CVector v(idx(n));
        for (std::size_t i = 0; i < n; ++i) v[idx(i)] = as_complex(it.value()[i], it.key());
        vars_[it.key()] = v;
      }
    }
    if (s.contains("polynomials")) {
      for (const auto& p : s["polynomials"]) {
        const std::string name = p["name"];
        poly_json_[name] = p;
        poly_order_.push_back(name);
      }
    }
    if (s.contains("elements")) {
      for (const auto& e : s["elements"]) element_json_[e["name"].get<std::string>()] = e;
    }
  }

  const AlgebraHandle& ground() const { return ground_; }
  const Tolerances& tol() const { return tol_; }
  std::mt19937_64& rng() { return rng_; }
  const std::map<std::string, CVector>& vars() const { return vars_; }
  const std::vector<Complex>& interior() const { return interior_; }

  Element ground_element(const CVector& values, const std::string& what) const {
    if (ground_->backend() == Backend::Pointwise) {
      return Element::from_values(ground_, std::vector<Complex>(values.data(), values.data() + values.size()));
    }
    // Recover the coefficients in z from the sampled values.
    const auto& pts = ground_->points();
    const int d = ground_->degree_bound();
    CMatrix v(idx(pts.size()), d + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Complex p{1.0, 0.0};
      for (int k = 0; k <= d; ++k) {
        v(idx(i), k) = p;
        p *= pts.coord(i);
      }
    }
    const CVector c = v.colPivHouseholderQr().solve(values);
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if ((v * c - values).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      invalid(what, "is not a polynomial of degree <= " + std::to_string(d) + " in z on the sample points");
    }
    return Element::from_values(ground_, std::vector<Complex>(c.data(), c.data() + c.size()));
  }

  MonicPoly poly(const std::string& name) {
    auto it = polys_.find(name);
    if (it != polys_.end()) return it->second;
    const Json& j = poly_json_.at(name);
    const auto x = expr::Expression::parse(j["expr"]).evaluate(vars_, ground_->points().size());
    const auto deg = x.degree(1e-12);
    const std::string where = "polynomial '" + name + "'";
    if (deg < 1) invalid(where, "degree must be at least 1");
    if ((x.coeffs[static_cast<std::size_t>(deg)].array() - 1.0).abs().maxCoeff() > 1e-12) invalid(where, "is not monic");
    std::vector<Element> lower;
    for (std::ptrdiff_t k = 0; k < deg; ++k) lower.push_back(ground_element(x.coeffs[static_cast<std::size_t>(k)], where));
    MonicPoly p(ground_, std::move(lower));
    polys_.emplace(name, p);
    return p;
  }

  std::optional<NormParameter> parameter(const std::string& name) {
    const Json& j = poly_json_.at(name);
    if (!j.contains("t") || j["t"] == "minimal") return std::nullopt;
    if (j["t"] == "power-sum") return power_sum_parameter(poly(name));
    return NormParameter{j["t"].get<double>(), false};
  }

  AlgebraHandle extension(const std::string& name) {
    auto it = extensions_.find(name);
    if (it != extensions_.end()) return it->second;
    AlgebraHandle b = ah_extend(ground_, poly(name), parameter(name));
    extensions_.emplace(name, b);
    return b;
  }

  Element element(const std::string& name) {
    auto it = elements_.find(name);
    if (it != elements_.end()) return it->second;
    const Json& j = element_json_.at(name);
    const auto x = expr::Expression::parse(j["expr"]).evaluate(vars_, ground_->points().size());
    const std::string where = "element '" + name + "'";
    Element out = Element::zero(ground_);
    if (j.contains("in")) {
      const AlgebraHandle b = extension(j["in"]);
      std::vector<Element> coeffs;
      for (const auto& c : x.coeffs) coeffs.push_back(ground_element(c, where));
      out = Element::from_coefficients(b, coeffs);
    } else {
      out = ground_element(x.coeffs.empty() ? CVector::Zero(idx(ground_->points().size())) : x.coeffs.front(), where);
    }
    elements_.emplace(name, out);
    return out;
  }

  std::string poly_text(const std::string& name) const { return poly_json_.at(name)["expr"]; }

 private:
  PointSet make_points(const Json& p) {
    const std::string kind = p["kind"];
    if (kind == "abstract") return PointSet::abstract(p["count"].get<std::size_t>());
    std::vector<Complex> zs;
    if (kind == "disc") {
      const auto n = p["boundary"].get<std::size_t>();
      for (std::size_t j = 0; j < n; ++j) {
        zs.push_back(std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n)));
      }
      zs[0] = Complex(1.0, 0.0);
      if (p.contains("interior")) {
        for (const auto& c : p["interior"]) interior_.push_back(as_complex(c, "interior"));
      }
      const auto count = p.value("interior_count", std::size_t{0});
      const double radius = p.value("interior_radius", 0.45);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t j = 0; j < count; ++j) {
        const double r = radius * std::sqrt(u(rng_));
        interior_.push_back(std::polar(r, 2.0 * M_PI * u(rng_)));
      }
      zs.insert(zs.end(), interior_.begin(), interior_.end());
    } else if (kind == "coords") {
      for (const auto& c : p["coords"]) zs.push_back(as_complex(c, "coords"));
    } else {
      for (const auto& s : p["segments"]) {
        const double a = s["from"], b = s["to"];
        const auto count = s["count"].get<std::size_t>();
        for (std::size_t j = 0; j < count; ++j) {
          const double f = count == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(count - 1);
          zs.emplace_back(a + (b - a) * f, 0.0);
        }
      }
      if (p.contains("extra")) {
        for (const auto& c : p["extra"]) zs.push_back(as_complex(c, "extra"));
      }
    }
    PointSet ps = PointSet::from_coords(zs);
    try {
      ps.validate();
    } catch (const Error& e) {
      invalid("algebra.points", e.what());
    }
    return ps;
  }

  Tolerances tol_;
  std::mt19937_64 rng_;
  AlgebraHandle ground_;
  std::map<std::string, CVector> vars_;
  std::vector<Complex> interior_;
  std::map<std::string, Json> poly_json_;
  std::vector<std::string> poly_order_;
  std::map<std::string, Json> element_json_;
  std::map<std::string, MonicPoly> polys_;
  std::map<std::string, AlgebraHandle> extensions_;
  std::map<std::string, Element> elements_;
};

Json element_json(const Element& e) {
  Json j{{"norm", norm(e)}, {"coords", cj(e.coords())}};
  return j;
}

Json character_json(const Character& h, const PointSet& pts) {
  return Json{{"base_point", h.base_point}, {"label", pts.labels.at(h.base_point)}, {"root_path", cj(h.root_path)}};
}

CVector random_coords(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(idx(n));
  for (auto& c : v) c = Complex(g(rng), g(rng));
  return v;
}

double min_point_modulus(const Element& d) {
  if (d.owner()->backend() == Backend::AHExtension) return std::nan("");
  return d.point_values().cwiseAbs().minCoeff();
}

// ---------------------------------------------------------------------------

Json op_extend(Model& m, const Json& op) {
  const std::string name = op["poly"];
  const MonicPoly p = m.poly(name);
  const AlgebraHandle b = m.extension(name);
  Json coeff_norms = Json::array();
  for (const auto& a : p.lower()) coeff_norms.push_back(norm(a));
  return Json{{"degree", p.degree()},
              {"dim", b->dim()},
              {"t", b->t()},
              {"t_minimal", min_norm_parameter(p).t},
              {"t_power_sum", power_sum_parameter(p).t},
              {"parameter_condition", satisfies_parameter_condition(p, b->t())},
              {"coefficient_norms", coeff_norms},
              {"generator_norm", norm(generator(b))},
              {"describe", b->describe()}};
}

Json op_norm(Model& m, const Json& op) {
  const Element e = m.element(op["element"]);
  Json out = element_json(e);
  if (e.owner()->backend() == Backend::AHExtension) {
    Json cn = Json::array();
    for (const auto& c : e.coefficients()) cn.push_back(norm(c));
    out["t"] = e.owner()->t();
    out["coefficient_norms"] = cn;
  }
  return out;
}

Json op_characters(Model& m, const Json& op) {
  AlgebraHandle a = m.ground();
  if (op.contains("poly")) a = m.extension(op["poly"]);
  if (op.contains("tower")) {
    std::vector<MonicPoly> polys;
    TowerOptions opts;
    for (const auto& n : op["tower"]) {
      polys.push_back(m.poly(n));
      opts.parameters.push_back(m.parameter(n));
    }
    a = standard_extend(m.ground(), polys, opts).top();
  }
  const auto chars = characters(a, m.tol());
  Json list = Json::array();
  for (const auto& h : chars) list.push_back(character_json(h, m.ground()->points()));
  return Json{{"dim", a->dim()}, {"count", chars.size()}, {"characters", list}};
}

Json op_discriminant(Model& m, const Json& op) {
  const MonicPoly p = m.poly(op["poly"]);
  const Element d = discriminant(p);
  return Json{{"discriminant", element_json(d)},
              {"zero", d.is_zero()},
              {"zero_divisor", is_zero_divisor(d, m.tol())},
              {"min_point_modulus", min_point_modulus(d)},
              {"zero_tolerance", kElementTol}};
}

Json op_tractable(Model& m, const Json& op) {
  const std::string name = op["poly"];
  const MonicPoly p = m.poly(name);
  const auto f = tractability_forecast(m.ground(), p, m.tol());
  const auto rad = radical(m.extension(name), m.tol());
  Json basis = Json::array();
  for (const auto& r : rad) basis.push_back(cj(r.coords()));
  const bool tractable = rad.empty();
  const bool consistent = f.prediction == Forecast::Unknown || (f.prediction == Forecast::Tractable) == tractable;
  return Json{{"discriminant", element_json(f.discriminant)},
              {"discriminant_zero", f.discriminant_zero},
              {"discriminant_zero_divisor", f.discriminant_zero_divisor},
              {"discriminant_min_point_modulus", min_point_modulus(f.discriminant)},
              {"zero_tolerance", kElementTol},
              {"base_tractable", f.base_tractable},
              {"binomial", f.binomial},
              {"constant_term_degenerate", f.constant_term_degenerate},
              {"prediction", to_string(f.prediction)},
              {"rule", f.rule},
              {"radical_dimension", rad.size()},
              {"radical_basis", basis},
              {"tractable", tractable},
              {"prediction_consistent", consistent}};
}

Json op_quotient(Model& m, const Json& op) {
  const std::string name = op["poly"];
  const AlgebraHandle b = m.extension(name);
  const QuotientAlgebra q(b, m.tol());
  // alpha evaluated at the class of xbar
  const Element alpha_at_x = map_coeffs(defining_polynomial(b), Homomorphism::embedding(b))(generator(b));
  const CVector root_class = q.project(alpha_at_x);
  const auto samples = op.value("samples", std::size_t{5});
  double defect = 0.0;
  bool converged = true;
  for (std::size_t s = 0; s < samples; ++s) {
    const Element a(m.ground(), random_coords(m.ground()->dim(), m.rng()));
    const auto r = q.norm_detail(q.project(embed(b, a)));
    converged = converged && r.converged;
    defect = std::max(defect, std::abs(r.value - norm(a)));
  }
  return Json{{"parent_dim", b->dim()},
              {"radical_dimension", q.radical().size()},
              {"dim", q.dim()},
              {"identity", q.is_identity()},
              {"tractable", q.is_tractable()},
              {"root_residual", root_class.size() ? root_class.cwiseAbs().maxCoeff() : 0.0},
              {"t", b->t()},
              {"base_isometry_samples", samples},
              {"base_isometry_defect", defect},
              {"norm_solver_converged", converged}};
}

Json op_zero_divisor(Model& m, const Json& op) {
  const Element a = m.element(op["element"]);
  const bool zd = is_zero_divisor(a, m.tol());
  Json out{{"element", element_json(a)}, {"zero", a.is_zero()}, {"zero_divisor", zd}};
  if (zd) {
    const CMatrix k = numerics::null_space(mult_operator(a), m.tol());
    CVector v = k.col(0);
    // pick the phase making the largest entry real and positive
    Eigen::Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    v *= std::abs(v[at]) / v[at];
    const Element ann(a.owner(), v);
    out["annihilator"] = cj(v);
    out["product_norm"] = norm(a * ann);
  }
  return out;
}

Json op_spectral(Model& m, const Json& op) {
  const Element a = m.element(op["element"]);
  const auto est = spectral_radius_estimate(a);
  return Json{{"spectral_radius", spectral_radius(a, m.tol())},
              {"estimate", est ? Json(*est) : Json()},
              {"norm", norm(a)}};
}

Json op_cole(Model& m, const Json& op) {
  std::vector<MonicPoly> polys;
  for (const auto& n : op["polys"]) polys.push_back(m.poly(n));
  const ColeAlgebra c = cole_algebra(m.ground(), polys, m.tol());
  double residual = 0.0;
  for (const auto& fp : c.space) {
    for (std::size_t k = 0; k < polys.size(); ++k) {
      std::vector<Complex> lower;
      for (const auto& a : polys[k].lower()) lower.push_back(a.point_values()[idx(fp.base)]);
      residual = std::max(residual, std::abs(numerics::eval_monic(lower, fp.roots[k])));
    }
  }
  const auto nat = naturality_check(c);
  Json out{{"space_size", c.space.size()},
           {"base_size", c.base_size},
           {"dim", c.dim()},
           {"closure_rounds", c.closure_rounds},
           {"separates_points", c.separates_points()},
           {"fiber_residual", residual},
           {"character_count", nat.character_count},
           {"distinct_evaluations", nat.distinct_evaluations},
           {"natural", nat.natural},
           {"base_full_pointwise", m.ground()->backend() == Backend::Pointwise}};
  if (op.contains("element")) {
    const Element b = m.element(op["element"]);
    const RhoStar r = rho_star(b.owner(), c, m.tol());
    const double cole_sup = r(b).cwiseAbs().maxCoeff();
    const double gelfand = spectral_radius(b, m.tol());
    out["rho_star"] = Json{{"ah_norm", norm(b)},
                           {"cole_sup_norm", cole_sup},
                           {"gelfand_sup_norm", gelfand},
                           {"image_in_algebra", r.image_in_algebra},
                           {"contractive", cole_sup <= gelfand * (1.0 + 1e-12) + 1e-12},
                           {"norm_gap", norm(b) - cole_sup}};
  }
  return out;
}

Json op_silov(Model& m, const Json&) {
  const CMatrix values = function_values(m.ground());
  const auto bd = silov_boundary(values, m.tol());
  const auto& pts = m.ground()->points();
  std::size_t interior_kept = 0;
  Json labels = Json::array();
  for (auto i : bd) {
    labels.push_back(pts.labels[i]);
    if (pts.has_coords() && std::abs(pts.coord(i)) < 1.0 - 1e-12) ++interior_kept;
  }
  double max_interior = 0.0;
  for (const auto& c : m.interior()) max_interior = std::max(max_interior, std::abs(c));
  return Json{{"points", pts.size()},
              {"boundary", bd},
              {"boundary_size", bd.size()},
              {"labels", labels},
              {"interior_samples", m.interior().size()},
              {"interior_max_modulus", max_interior},
              {"interior_kept", interior_kept},
              {"is_boundary", is_boundary(values, bd)},
              {"is_minimal", is_minimal_boundary(values, bd, m.tol())}};
}

Json op_compare(Model& m, const Json& op) {
  const auto c = compare_extensions(m.ground(), m.poly(op["poly"]), m.tol());
  return Json{{"discriminant", element_json(c.discriminant)},
              {"discriminant_zero", c.discriminant_zero},
              {"discriminant_zero_divisor", c.discriminant_zero_divisor},
              {"boundary", c.boundary},
              {"boundary_size", c.boundary.size()},
              {"boundary_min", c.topological.boundary_min},
              {"relative_threshold", c.topological.relative_threshold},
              {"threshold", c.topological.threshold},
              {"topological_zero_divisor", c.topological.verdict},
              {"verdict", c.verdict}};
}

Json op_tower(Model& m, const Json& op) {
  std::vector<MonicPoly> polys;
  TowerOptions opts;
  for (const auto& n : op["polys"]) {
    polys.push_back(m.poly(n));
    opts.parameters.push_back(m.parameter(n));
  }
  const Tower t = standard_extend(m.ground(), polys, opts);
  const auto samples = op.value("samples", std::size_t{20});
  const auto top_chars = characters(t.top(), m.tol());
  Json layers = Json::array();
  bool all_surjective = true;
  for (std::size_t k = 0; k < t.layers.size(); ++k) {
    const auto& layer = t.layers[k];
    const auto chars = characters(layer, m.tol());
    // every character of this layer is the restriction of a top character
    std::vector<bool> hit(chars.size(), false);
    for (const auto& h : top_chars) {
      const Character r = restrict_character(t, h, k, m.tol());
      for (std::size_t i = 0; i < chars.size(); ++i) {
        if ((chars[i].values - r.values).cwiseAbs().maxCoeff() <= 1e-7) hit[i] = true;
      }
    }
    bool surjective = true;
    for (bool h : hit) surjective = surjective && h;
    all_surjective = all_surjective && surjective;
    double defect = 0.0;
    if (k > 0) {
      const Homomorphism emb = t.embedding(k - 1, k);
      for (std::size_t s = 0; s < samples; ++s) {
        const Element a(t.layers[k - 1], random_coords(t.layers[k - 1]->dim(), m.rng()));
        defect = std::max(defect, std::abs(norm(emb(a)) - norm(a)));
      }
    }
    Json lj{{"layer", k},
            {"dim", layer->dim()},
            {"character_count", chars.size()},
            {"tractable", is_tractable(layer, m.tol())},
            {"restriction_surjective", surjective},
            {"embedding_isometry_defect", defect}};
    if (k > 0) {
      lj["t"] = layer->t();
      const Element d = discriminant(defining_polynomial(layer));
      lj["discriminant_zero_divisor"] = d.is_zero() || is_zero_divisor(d, m.tol());
    }
    layers.push_back(lj);
  }
  return Json{{"depth", polys.size()},
              {"top_dim", t.top()->dim()},
              {"top_character_count", top_chars.size()},
              {"restrictions_surjective", all_surjective},
              {"layers", layers}};
}

Json op_cole_tower(Model& m, const Json& op) {
  const Json stages_json = op["stages"];
  std::vector<StageGenerator> stages;
  for (std::size_t k = 0; k < stages_json.size(); ++k) {
    std::vector<expr::Expression> exprs;
    for (const auto& e : stages_json[k]) exprs.push_back(expr::Expression::parse(e));
    stages.push_back([exprs, &m, k](const ColeTower& tower) {
      // names on the current top space: ground functions pulled up, and the
      // root functions of every earlier stage (p<j> for the latest, r<s>_<j>)
      const std::size_t top = tower.depth();
      const auto proj = tower.projection(0, top);
      std::map<std::string, CVector> vars;
      for (const auto& [name, v] : m.vars()) {
        CVector up(idx(proj.size()));
        for (std::size_t i = 0; i < proj.size(); ++i) up[idx(i)] = v[idx(proj[i])];
        vars[name] = up;
      }
      for (std::size_t s = 1; s <= top; ++s) {
        const auto ps = tower.projection(s, top);
        const auto& roots = tower.roots(s);
        for (std::size_t j = 0; j < roots.size(); ++j) {
          CVector up(idx(ps.size()));
          for (std::size_t i = 0; i < ps.size(); ++i) up[idx(i)] = roots[j][idx(ps[i])];
          vars["r" + std::to_string(s) + "_" + std::to_string(j)] = up;
          if (s == top) vars["p" + std::to_string(j)] = up;
        }
      }
      std::vector<SpacePoly> out;
      for (const auto& e : exprs) {
        const auto x = e.evaluate(vars, proj.size());
        const auto deg = x.degree(1e-12);
        const std::string where = "stage " + std::to_string(k + 1) + " polynomial \"" + e.text() + "\"";
        if (deg < 1) invalid(where, "degree must be at least 1");
        if ((x.coeffs[static_cast<std::size_t>(deg)].array() - 1.0).abs().maxCoeff() > 1e-12) invalid(where, "is not monic");
        SpacePoly sp;
        sp.lower.assign(x.coeffs.begin(), x.coeffs.begin() + deg);
        out.push_back(std::move(sp));
      }
      return out;
    });
  }
  const ColeTower tower = cole_tower(m.ground(), stages, m.tol());
  const auto samples = op.value("samples", std::size_t{100});
  const auto report = check_cole_tower(tower, samples, m.rng());
  Json st = Json::array();
  for (std::size_t k = 0; k <= tower.depth(); ++k) {
    Json sj{{"stage", k}, {"space_size", tower.space_size(k)}, {"dim", tower.algebra_basis(k).cols()}};
    if (k > 0) {
      const auto nat = naturality_check(tower.stages[k - 1]);
      sj["character_count"] = nat.character_count;
      sj["separates_points"] = tower.stages[k - 1].separates_points();
    }
    st.push_back(sj);
  }
  return Json{{"depth", tower.depth()},
              {"stages", st},
              {"projections_surjective", report.projections_surjective},
              {"projections_compatible", report.projections_compatible},
              {"max_root_residual", report.max_root_residual},
              {"isometry_samples", report.samples},
              {"max_isometry_defect", report.max_isometry_defect}};
}

// Plain-language reason attached to each verdict in the report.
const std::map<std::string, std::string> kBasis = {
    {"extend", "norm sum ||b_k|| t^k with t^n >= sum ||a_k|| t^k"},
    {"norm", "reduced representative; no infimum needed"},
    {"characters", "base character plus one root of h(alpha) per layer"},
    {"discriminant", "Sylvester determinant of alpha and alpha'"},
    {"tractable", "discriminant criterion; radical from the Gelfand matrix null space"},
    {"quotient", "quotient by the radical with the infimum norm"},
    {"zero_divisor", "exact per-backend test"},
    {"spectral", "max over characters versus ||a^(2^k)||^(1/2^k)"},
    {"cole", "fiber space of roots, generated subalgebra of functions"},
    {"silov", "greedy removal of points carrying a representing measure"},
    {"compare", "boundary minimum of the discriminant decides topological zero divisors"},
    {"tower", "iterated extensions with coefficients from the ground algebra"},
    {"cole_tower", "iterated fiber spaces with projections between stages"},
};

}  // namespace

Json run(const Json& s, const RunOptions& options) {
  validate(s);
  Tolerances tol = s.contains("tolerances") ? tolerances_from_json(s["tolerances"]) : Tolerances{};
  if (options.tolerances) tol = *options.tolerances;
  const std::uint64_t seed = options.seed ? *options.seed : s.value("seed", std::uint64_t{0});
  Model m(s, tol, seed);

  Json results = Json::array();
  for (const auto& op : s["operations"]) {
    const std::string name = op["op"];
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), name) == options.only.end()) continue;
    Json outputs;
    if (name == "extend") outputs = op_extend(m, op);
    else if (name == "norm") outputs = op_norm(m, op);
    else if (name == "characters") outputs = op_characters(m, op);
    else if (name == "discriminant") outputs = op_discriminant(m, op);
    else if (name == "tractable") outputs = op_tractable(m, op);
    else if (name == "quotient") outputs = op_quotient(m, op);
    else if (name == "zero_divisor") outputs = op_zero_divisor(m, op);
    else if (name == "spectral") outputs = op_spectral(m, op);
    else if (name == "cole") outputs = op_cole(m, op);
    else if (name == "silov") outputs = op_silov(m, op);
    else if (name == "compare") outputs = op_compare(m, op);
    else if (name == "tower") outputs = op_tower(m, op);
    else if (name == "cole_tower") outputs = op_cole_tower(m, op);
    Json inputs = op;
    inputs.erase("op");
    for (const char* key : {"poly", "element"}) {
      if (!op.contains(key)) continue;
      const std::string ref = op[key];
      if (std::string(key) == "poly") inputs["poly_expr"] = m.poly_text(ref);
    }
    results.push_back(Json{{"op", name}, {"inputs", inputs}, {"outputs", outputs}, {"provenance", Json{{"basis", kBasis.at(name)}}}});
  }
  if (results.empty()) invalid("operations", "nothing left to run after filtering");

  Json ground{{"backend", to_string(m.ground()->backend())},
              {"dim", m.ground()->dim()},
              {"points", m.ground()->points().size()}};
  if (m.ground()->backend() == Backend::PolyModel) ground["degree_bound"] = m.ground()->degree_bound();
  Json report{{"scenario", s["name"]}, {"seed", seed}, {"tolerances", tolerances_to_json(tol)},
              {"algebra", ground}, {"results", results}};
  if (s.contains("notes")) report["notes"] = s["notes"];
  return report;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {
      "disc-sqrt-z", "example-4-4", "theorem-3-15", "cole-feinstein-counterexample",
      "corollary-2-11", "silov-disc", "cole-tower", "standard-tower"};
  return names;
}

Json generate_example(const std::string& name) {
  const auto disc = [](int boundary, int degree) {
    return Json{{"backend", "poly"},
                {"degree_bound", degree},
                {"points", Json{{"kind", "disc"}, {"boundary", boundary}}}};
  };
  if (name == "disc-sqrt-z") {
    return Json{{"name", name},
                {"description", "disc algebra on 64 boundary samples, square root of z adjoined"},
                {"seed", 7},
                {"algebra", disc(64, 8)},
                {"polynomials", Json::array({Json{{"name", "alpha"}, {"expr", "x^2 - z"}, {"t", 1.0}}})},
                {"elements", Json::array({Json{{"name", "b"}, {"in", "alpha"}, {"expr", "(z+1)/2 + (z-1)/2*x"}}})},
                {"operations", Json::array({Json{{"op", "extend"}, {"poly", "alpha"}},
                                            Json{{"op", "discriminant"}, {"poly", "alpha"}},
                                            Json{{"op", "tractable"}, {"poly", "alpha"}},
                                            Json{{"op", "norm"}, {"element", "b"}},
                                            Json{{"op", "cole"}, {"polys", {"alpha"}}, {"element", "b"}},
                                            Json{{"op", "compare"}, {"poly", "alpha"}}})}};
  }
  if (name == "example-4-4") {
    return Json{{"name", name},
                {"description", "AH norm of f + g xbar against the Cole sup norm on the disc"},
                {"seed", 7},
                {"algebra", disc(64, 8)},
                {"polynomials", Json::array({Json{{"name", "alpha"}, {"expr", "x^2 - z"}, {"t", 1.0}}})},
                {"elements", Json::array({Json{{"name", "f"}, {"expr", "(z+1)/2"}},
                                          Json{{"name", "g"}, {"expr", "(z-1)/2"}},
                                          Json{{"name", "b"}, {"in", "alpha"}, {"expr", "(z+1)/2 + (z-1)/2*x"}}})},
                {"operations", Json::array({Json{{"op", "norm"}, {"element", "f"}},
                                            Json{{"op", "norm"}, {"element", "g"}},
                                            Json{{"op", "norm"}, {"element", "b"}},
                                            Json{{"op", "cole"}, {"polys", {"alpha"}}, {"element", "b"}}})},
                {"notes", "only t = 1 is computed; the claim that no parameter t gives an isometry is not checked"}};
  }
  if (name == "cole-feinstein-counterexample") {
    return Json{{"name", name},
                {"description", "square root of z - 1 over the disc: d vanishes at the boundary point 1"},
                {"seed", 7},
                {"algebra", disc(64, 8)},
                {"polynomials", Json::array({Json{{"name", "alpha"}, {"expr", "x^2 - (z - 1)"}}})},
                {"operations", Json::array({Json{{"op", "discriminant"}, {"poly", "alpha"}},
                                            Json{{"op", "tractable"}, {"poly", "alpha"}},
                                            Json{{"op", "compare"}, {"poly", "alpha"}}})}};
  }
  if (name == "theorem-3-15") {
    return Json{{"name", name},
                {"description", "samples of [1/2, 1] plus the point 0, f0 the inclusion, square root of f0"},
                {"seed", 7},
                {"algebra", Json{{"backend", "pointwise"},
                                 {"points", Json{{"kind", "interval"},
                                                 {"segments", Json::array({Json{{"from", 0.5}, {"to", 1.0}, {"count", 6}}})},
                                                 {"extra", Json::array({0.0})}}}}},
                {"polynomials", Json::array({Json{{"name", "alpha"}, {"expr", "x^2 - z"}}})},
                {"elements", Json::array({Json{{"name", "f0"}, {"expr", "z"}}})},
                {"operations", Json::array({Json{{"op", "zero_divisor"}, {"element", "f0"}},
                                            Json{{"op", "tractable"}, {"poly", "alpha"}},
                                            Json{{"op", "characters"}, {"poly", "alpha"}},
                                            Json{{"op", "quotient"}, {"poly", "alpha"}}})},
                {"notes", "finite mechanism only: f0 vanishes at the sample 0, so it is a zero divisor and the "
                          "extension has a radical; the full statement concerns the completion of an incomplete "
                          "algebra and is out of scope"}};
  }
  if (name == "corollary-2-11") {
    return Json{{"name", name},
                {"description", "x^2 - a0 over C^2 with a0 = (1,0) and a0 = (1,2)"},
                {"seed", 7},
                {"algebra", Json{{"backend", "pointwise"},
                                 {"points", Json{{"kind", "abstract"}, {"count", 2}}},
                                 {"functions", Json{{"a", Json::array({1.0, 0.0})}, {"b", Json::array({1.0, 2.0})}}}}},
                {"polynomials", Json::array({Json{{"name", "degenerate"}, {"expr", "x^2 - a"}},
                                             Json{{"name", "regular"}, {"expr", "x^2 - b"}}})},
                {"operations", Json::array({Json{{"op", "tractable"}, {"poly", "degenerate"}},
                                            Json{{"op", "tractable"}, {"poly", "regular"}},
                                            Json{{"op", "characters"}, {"poly", "degenerate"}},
                                            Json{{"op", "quotient"}, {"poly", "degenerate"}}})}};
  }
  if (name == "silov-disc") {
    return Json{{"name", name},
                {"description", "minimal boundary of polynomials of degree <= 6 on 48 circle samples and 20 interior points"},
                {"seed", 7},
                {"algebra", Json{{"backend", "poly"},
                                 {"degree_bound", 6},
                                 {"points", Json{{"kind", "disc"},
                                                 {"boundary", 48},
                                                 {"interior_count", 20},
                                                 {"interior_radius", 0.45}}}}},
                {"operations", Json::array({Json{{"op", "silov"}}})}};
  }
  if (name == "cole-tower") {
    return Json{{"name", name},
                {"description", "two Cole stages: square root of z, then square root of that root"},
                {"seed", 7},
                {"algebra", disc(16, 4)},
                {"operations", Json::array({Json{{"op", "cole_tower"},
                                                 {"stages", Json::array({Json::array({"x^2 - z"}),
                                                                         Json::array({"x^2 - p0"})})},
                                                 {"samples", 100}}})}};
  }
  if (name == "standard-tower") {
    return Json{{"name", name},
                {"description", "x^2 - a then x^3 - b over C^3"},
                {"seed", 7},
                {"algebra", Json{{"backend", "pointwise"},
                                 {"points", Json{{"kind", "abstract"}, {"count", 3}}},
                                 {"functions", Json{{"a", Json::array({2.0, Json::array({0.5, 1.0}), -3.0})},
                                                    {"b", Json::array({1.5, -2.0, Json::array({0.0, 1.0})})}}}}},
                {"polynomials", Json::array({Json{{"name", "p"}, {"expr", "x^2 - a"}},
                                             Json{{"name", "q"}, {"expr", "x^3 - b"}}})},
                {"operations", Json::array({Json{{"op", "tower"}, {"polys", {"p", "q"}}},
                                            Json{{"op", "characters"}, {"tower", {"p", "q"}}}})}};
  }
  throw Error(ErrorKind::UnknownExample, "unknown example '" + name + "'");
}

}  // namespace ahx::scenario
