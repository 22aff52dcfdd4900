#include "gadkit/serialize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "gadkit/poly_io.hpp"

namespace gadkit {

namespace {

using json = nlohmann::json;

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  std::string s = buf.data();
  // keep it recognizably a float
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        dump(value, out, indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump(j[i], out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], out, indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string canonical(const json& j) {
  std::string out;
  dump(j, out, 2, 0);
  out += "\n";
  return out;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json poly_json(const Poly& p) {
  json out = json::object();
  for (const auto& [alpha, c] : p.terms()) out[alpha.to_string()] = complex_json(c);
  return out;
}

json vector_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (cplx c : v) out.push_back(complex_json(c));
  return out;
}

json matrix_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

json real_vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json gad_json(const GAD& g) {
  json terms = json::array();
  for (const auto& t : g.terms)
    terms.push_back({{"k", t.k}, {"ell", vector_json(t.ell.coeffs())}, {"omega", poly_json(t.omega)}});
  return {{"n", g.n}, {"d", g.d}, {"terms", std::move(terms)}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json trace_json(const PipelineTrace& t) {
  json points = json::array();
  for (const auto& p : t.points) points.push_back(vector_json(p));
  json supports = json::array();
  for (const auto& l : t.supports) supports.push_back(vector_json(l.coeffs()));
  return {{"rank", t.rank},
          {"supports", std::move(supports)},
          {"multiplicities", t.multiplicities},
          {"nil_indices", t.nil_indices},
          {"points", std::move(points)},
          {"singular_values", real_vector_json(t.singular_values)}};
}

[[noreturn]] void fail(const std::string& what) { throw ParseError(what, 1, 1); }

// Line and column of a byte offset.
ParseError located(const std::string& what, std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return ParseError(what, line, col);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw located("invalid JSON", text, e.byte > 0 ? e.byte - 1 : 0);
  }
}

cplx complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(where + ": expected a number or [re, im]");
}

MultiIndex multi_index_from(const std::string& key, std::size_t nvars, const std::string& where) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')')
    fail(where + ": monomial key '" + key + "' is not of the form (a,b,...)");
  std::vector<int> exps;
  std::size_t pos = 1;
  while (pos < key.size() - 1) {
    std::size_t end = key.find(',', pos);
    if (end == std::string::npos) end = key.size() - 1;
    const std::string part = key.substr(pos, end - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail(where + ": bad exponent in monomial key '" + key + "'");
    exps.push_back(std::stoi(part));
    pos = end + 1;
  }
  if (exps.size() != nvars)
    fail(where + ": monomial key '" + key + "' has " + std::to_string(exps.size()) + " exponents, expected " +
         std::to_string(nvars));
  return MultiIndex(std::move(exps));
}

int int_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(where + ": missing '" + key + "'");
  if (!j[key].is_number_integer()) fail(where + ": '" + key + "' must be an integer");
  return j[key].get<int>();
}

}  // namespace

std::string gad_to_json(const GAD& g) { return canonical(gad_json(g)); }

GAD gad_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("GAD: top level must be an object");
  GAD g;
  g.n = int_field(j, "n", "GAD");
  g.d = int_field(j, "d", "GAD");
  if (g.n < 1) fail("GAD: n must be >= 1");
  if (!j.contains("terms") || !j["terms"].is_array()) fail("GAD: 'terms' must be an array");
  const auto n1 = static_cast<std::size_t>(g.n + 1);
  std::size_t idx = 0;
  for (const auto& t : j["terms"]) {
    const std::string where = "term " + std::to_string(idx++);
    if (!t.is_object()) fail(where + ": must be an object");
    if (!t.contains("ell") || !t["ell"].is_array()) fail(where + ": 'ell' must be an array");
    std::vector<cplx> ell;
    for (const auto& c : t["ell"]) ell.push_back(complex_from(c, where + ".ell"));
    if (ell.size() != n1) fail(where + ": ell must have n+1 = " + std::to_string(n1) + " entries");
    if (!t.contains("omega")) fail(where + ": missing 'omega'");
    Poly omega(n1);
    const json& w = t["omega"];
    if (w.is_string()) {
      omega = parse_poly(w.get<std::string>(), n1);
    } else if (w.is_number() || (w.is_array() && w.size() == 2)) {
      omega = Poly::constant(n1, complex_from(w, where + ".omega"));
    } else if (w.is_object()) {
      for (const auto& [key, c] : w.items())
        omega.add_term(multi_index_from(key, n1, where + ".omega"), complex_from(c, where + ".omega"));
    } else {
      fail(where + ": 'omega' must be a string, a number or a monomial map");
    }
    int k = 0;
    if (t.contains("k")) {
      k = int_field(t, "k", where);
    } else {
      const auto deg = omega.homogeneous_degree();
      if (!deg) fail(where + ": omega is not homogeneous and no k was given");
      k = *deg;
    }
    g.terms.push_back({std::move(omega), LinearForm(std::move(ell)), k});
  }
  validate(g);
  return g;
}

std::string report_to_json(const DecompositionReport& r) {
  const auto& o = r.options;
  const auto& dg = r.diagnostics;
  json options = {{"svd_tol", o.svd_tol},
                  {"cluster_tol", o.cluster_tol},
                  {"nil_tol", o.nil_tol},
                  {"comm_tol", o.comm_tol},
                  {"retry_cap", o.retry_cap},
                  {"coord_trials", o.coord_trials},
                  {"forced_rank", optional_json(o.forced_rank)},
                  {"forced_clusters", optional_json(o.forced_clusters)},
                  {"split", optional_json(o.split)},
                  {"normalize_supports", o.normalize_supports},
                  {"polish_steps", o.polish_steps},
                  {"seed", o.seed}};
  json diagnostics = {{"singular_values", real_vector_json(dg.singular_values)},
                      {"lsq_residual", dg.lsq_residual},
                      {"polish_steps", dg.polish_steps},
                      {"commutator", dg.commutator},
                      {"cond_n0", dg.cond_n0},
                      {"effective_nil_tol", dg.effective_nil_tol},
                      {"localization_attempts", dg.localization_attempts},
                      {"clustering_attempts", dg.clustering_attempts},
                      {"warnings", dg.warnings}};
  const json out = {{"gad", gad_json(r.gad)},
                    {"rank", r.rank},
                    {"multiplicities", r.multiplicities},
                    {"nil_indices", r.nil_indices},
                    {"degrees", r.degrees},
                    {"reconstruction_error", r.reconstruction_error},
                    {"relative_apolar_error", r.relative_apolar_error},
                    {"coord_change", matrix_json(r.coord_change)},
                    {"diagnostics", std::move(diagnostics)},
                    {"options", std::move(options)}};
  return canonical(out);
}

std::string failure_to_json(const DecompositionError& e) {
  const json out = {{"error", e.what()}, {"exit_code", e.exit_code()}, {"trace", trace_json(e.trace())}};
  return canonical(out);
}

std::string dual_series_to_json(const DualSeries& fs) {
  const json out = {{"nvars", fs.nvars()}, {"degree_bound", fs.degree_bound()}, {"values", [&] {
                      json v = json::object();
                      for (const auto& [beta, c] : fs.values()) v[beta.to_string()] = complex_json(c);
                      return v;
                    }()}};
  return canonical(out);
}

BenchConfig bench_config_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("bench config: top level must be an object");
  BenchConfig cfg;
  try {
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("d")) cfg.d = j["d"].get<int>();
    if (j.contains("ks")) cfg.ks = j["ks"].get<std::vector<int>>();
    if (j.contains("eps")) {
      cfg.eps = j["eps"].get<std::vector<double>>();
    } else if (j.contains("eps_min_exp") || j.contains("eps_max_exp") || j.contains("eps_step")) {
      cfg.eps = eps_grid(j.value("eps_min_exp", -14.0), j.value("eps_max_exp", 0.0), j.value("eps_step", 0.5));
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("bases")) cfg.bases = j["bases"].get<int>();
    if (j.contains("auto")) cfg.auto_mode = j["auto"].get<bool>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("svd_tol")) cfg.decomposer.svd_tol = j["svd_tol"].get<double>();
    if (j.contains("cluster_tol")) cfg.decomposer.cluster_tol = j["cluster_tol"].get<double>();
    if (j.contains("nil_tol")) cfg.decomposer.nil_tol = j["nil_tol"].get<double>();
    if (j.contains("polish_steps")) cfg.decomposer.polish_steps = j["polish_steps"].get<int>();
  } catch (const json::type_error& e) {
    fail(std::string("bench config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

}  // namespace gadkit
