#include "momentcurve/json_io.hpp"

#include <set>

namespace mc {

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + what + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json rat_to_json(const Rat& x) { return to_string(x); }

Rat rat_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(std::to_string(j.get<long long>()));
  } catch (const std::exception& e) {
    throw InputError(field + ": " + e.what());
  }
  throw InputError(field + ": expected a rational string such as \"-3/4\"");
}

json quad_to_json(const QuadScalar& x) {
  return json{{"a", to_string(x.a())}, {"b", to_string(x.b())}, {"D", to_string(x.D())}};
}

MomentInput moments_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("moments"))
    throw InputError("moment JSON needs the fields \"k\" and \"moments\"");
  if (!j["k"].is_number_integer()) throw InputError("\"k\" must be an integer");
  const long long k = j["k"].get<long long>();
  if (k < 1 || k > 64) throw InputError("\"k\" must lie in 1..64");
  if (!j["moments"].is_array()) throw InputError("\"moments\" must be an array");
  MomentInput in;
  in.beta = MomentSequence(static_cast<int>(k));
  std::set<std::pair<int, int>> seen;
  std::size_t n = 0;
  for (const auto& m : j["moments"]) {
    const std::string where = "moments[" + std::to_string(n++) + "]";
    if (!m.is_object() || !m.contains("i") || !m.contains("j") || !m.contains("v"))
      throw InputError(where + ": expected {\"i\", \"j\", \"v\"}");
    if (!m["i"].is_number_integer() || !m["j"].is_number_integer())
      throw InputError(where + ": \"i\" and \"j\" must be integers");
    const long long i = m["i"].get<long long>(), jj = m["j"].get<long long>();
    if (i < 0 || jj < 0 || i + jj > 2 * k)
      throw InputError(where + ": index (" + std::to_string(i) + "," + std::to_string(jj) + ") outside i+j <= 2k");
    if (!seen.insert({static_cast<int>(i), static_cast<int>(jj)}).second)
      throw InputError(where + ": duplicate moment (" + std::to_string(i) + "," + std::to_string(jj) + ")");
    in.beta(static_cast<int>(i), static_cast<int>(jj)) = rat_from_json(m["v"], where + ".v");
  }
  if (seen.size() != monomial_count(static_cast<int>(2 * k)))
    throw InputError("expected " + std::to_string(monomial_count(static_cast<int>(2 * k))) + " moments for k = " +
                     std::to_string(k) + ", got " + std::to_string(seen.size()));
  if (j.contains("relation")) {
    if (!j["relation"].is_string()) throw InputError("\"relation\" must be a string");
    in.relation = j["relation"].get<std::string>();
  }
  return in;
}

namespace {

template <class F, class Conv>
json moments_json(const MomentSeq<F>& beta, Conv conv) {
  json arr = json::array();
  for (int d = 0; d <= 2 * beta.k(); ++d)
    for (int j = 0; j <= d; ++j) arr.push_back(json{{"i", d - j}, {"j", j}, {"v", conv(beta(d - j, j))}});
  return json{{"k", beta.k()}, {"moments", arr}};
}

json opt_size(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json moments_to_json(const MomentSequence& beta) {
  return moments_json(beta, [](const Rat& x) { return rat_to_json(x); });
}

json moments_to_json(const MomentSeq<QuadScalar>& beta) {
  return moments_json(beta, [](const QuadScalar& x) { return x.is_rational() ? rat_to_json(x.a()) : quad_to_json(x); });
}

json report_to_json(const SolveReport& r) {
  json out;
  out["exists"] = r.exists;
  out["clause"] = r.clause;
  out["minimal_atoms"] = opt_size(r.minimal_atoms);
  out["atom_upper_bound"] = opt_size(r.atom_upper_bound);
  out["witness"] = r.witness ? json{{"t", quad_to_json(r.witness->t)}, {"u", quad_to_json(r.witness->u)}} : json(nullptr);
  json diag = json::object();
  for (const auto& [key, value] : r.diagnostics) diag[key] = value;
  out["diagnostics"] = diag;
  return out;
}

json canon_to_json(const CanonResult& c) {
  json out;
  out["tag"] = tag_name(c.form.tag);
  json params = json::array();
  for (const auto& p : c.form.params) params.push_back(quad_to_json(p));
  out["parameters"] = params;
  out["relation"] = c.form.str();
  const AffineMap& m = c.map;
  out["map"] = json{{"a", to_string(m.a)}, {"b", to_string(m.b)}, {"c", to_string(m.c)},
                    {"d", to_string(m.d)}, {"e", to_string(m.e)}, {"f", to_string(m.f)}};
  out["y_scale_square"] = to_string(c.y_scale_square);
  out["rational"] = c.rational;
  out["steps"] = c.steps;
  out["linear_factor"] = c.linear_factor.str();
  out["conic_factor"] = c.conic_factor.str();
  if (c.rational && c.beta.k() > 0) out["moments"] = moments_to_json(c.beta);
  if (!c.rational && c.beta_q.k() > 0) out["moments"] = moments_to_json(c.beta_q);
  return out;
}

std::string real_to_string(const Real& x) { return x.str(34, std::ios_base::scientific); }

namespace {

json coord_to_json(const std::optional<Rat>& q, const Real& x) {
  if (q) return rat_to_json(*q);
  return json{{"float", real_to_string(x)}};
}

// Returns the float value and, when the entry is a rational string, the rational.
std::pair<Real, std::optional<Rat>> coord_from_json(const json& j, const std::string& where) {
  if (j.is_object()) {
    if (!j.contains("float") || !j["float"].is_string()) throw InputError(where + ": expected {\"float\": \"...\"}");
    try {
      return {Real(j["float"].get<std::string>().c_str()), std::nullopt};
    } catch (const std::exception& e) {
      throw InputError(where + ": bad float: " + e.what());
    }
  }
  if (j.is_number_float()) return {Real(j.get<double>()), std::nullopt};
  const Rat q = rat_from_json(j, where);
  return {to_real(q), q};
}

}  // namespace

json measure_to_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms)
    atoms.push_back(json{{"x", coord_to_json(a.xq, a.x)}, {"y", coord_to_json(a.yq, a.y)}, {"w", coord_to_json(a.wq, a.w)}});
  return json{{"atoms", atoms}};
}

AtomicMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw InputError("measure JSON needs an \"atoms\" array");
  AtomicMeasure mu;
  std::size_t n = 0;
  for (const auto& a : j["atoms"]) {
    const std::string where = "atoms[" + std::to_string(n++) + "]";
    if (!a.is_object() || !a.contains("x") || !a.contains("y") || !a.contains("w"))
      throw InputError(where + ": expected {\"x\", \"y\", \"w\"}");
    auto [x, xq] = coord_from_json(a["x"], where + ".x");
    auto [y, yq] = coord_from_json(a["y"], where + ".y");
    auto [w, wq] = coord_from_json(a["w"], where + ".w");
    mu.atoms.push_back(Atom{x, y, w, xq, yq, wq});
  }
  return mu;
}

}  // namespace mc
