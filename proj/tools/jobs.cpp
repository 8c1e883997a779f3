#include "jobs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "hsm/io.hpp"
#include "hsm/multiplier.hpp"
#include "hsm/schur.hpp"
#include "hsm/suites.hpp"
#include "hsm/transforms.hpp"
#include "hsm/vn.hpp"

namespace hsm::cli {

using nlohmann::json;

const std::vector<std::string>& job_kinds() {
  static const std::vector<std::string> kinds = {"schur-norm", "b2-norm",     "fourier-norm", "q-norm",     "transform-pipeline",
                                                 "verify-suite", "cutoff",    "vn-check",     "list-suites"};
  return kinds;
}

namespace {

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty() || p.find('(') != std::string::npos) return p;
  std::filesystem::path path(p);
  return path.is_relative() ? (base / path).lexically_normal().string() : p;
}

template <typename T>
T typed(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void apply_config(JobConfig& cfg, const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "job") {
      cfg.kind = typed<std::string>(value, key);
    } else if (key == "tol" || key == "tolerance") {
      cfg.tolerance = typed<double>(value, key);
    } else if (key == "seed") {
      cfg.seed = typed<std::uint64_t>(value, key);
    } else if (key == "out") {
      cfg.out = resolve(typed<std::string>(value, key), base);
    } else if (key == "format") {
      cfg.format = typed<std::string>(value, key);
    } else if (key == "matrix") {
      cfg.matrix = resolve(typed<std::string>(value, key), base);
    } else if (key == "multiplier") {
      cfg.multiplier = resolve(typed<std::string>(value, key), base);
    } else if (key == "group") {
      cfg.group = resolve(typed<std::string>(value, key), base);
    } else if (key == "window") {
      cfg.window = resolve(typed<std::string>(value, key), base);
    } else if (key == "suite") {
      cfg.suite = typed<std::string>(value, key);
    } else if (key == "instances") {
      cfg.instances = typed<int>(value, key);
    } else if (key == "inner_radius" || key == "inner") {
      cfg.inner_radius = typed<int>(value, key);
    } else if (key == "outer_radius" || key == "outer") {
      cfg.outer_radius = typed<int>(value, key);
    } else if (key == "factors") {
      cfg.factors = typed<bool>(value, key);
    } else if (key == "steps") {
      if (!value.is_array()) throw ParseError("config key 'steps' must be an array");
      cfg.steps = value;
      for (auto& step : cfg.steps) {
        if (!step.is_object()) throw ParseError("each pipeline step must be an object");
        for (const char* k : {"with", "cocycle", "group"}) {
          if (step.contains(k) && step[k].is_string()) step[k] = resolve(step[k].get<std::string>(), base);
        }
      }
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
}

namespace {

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json measured(double value, double tol) { return json{{"value", value}, {"tolerance", tol}}; }

std::string num(double x) {
  std::ostringstream o;
  o << std::setprecision(17) << x;
  return o.str();
}

json multiplier_json(const Multiplier& u) {
  json values = json::array();
  for (int k = 0; k < u.size(); ++k) values.push_back({{"element", u.label(k)}, {"value", complex_json(u[k])}});
  return json{{"carrier", u.on_group() ? "finite group" : u.window()->ambient().name() + " window"},
              {"size", u.size()},
              {"values", values},
              {"provenance", u.provenance()}};
}

std::string carrier_name(const Multiplier& u) {
  if (u.on_group()) return "finite group of order " + std::to_string(u.group()->order());
  return u.window()->ambient().name() + " ball radius " + std::to_string(u.window()->radius());
}

json rows_json(const std::vector<suites::Row>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"name", r.name},
                   {"anchor", r.anchor},
                   {"relation", r.relation},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"slack", r.slack},
                   {"verdict", r.pass ? "pass" : "fail"}});
  }
  return out;
}

void add_rows_csv(JobResult& res, const std::string& suite, const std::vector<suites::Row>& rows) {
  res.csv_header = {"suite", "name", "anchor", "relation", "lhs", "rhs", "slack", "verdict"};
  for (const auto& r : rows) {
    res.csv_rows.push_back({suite, r.name, r.anchor, r.relation, num(r.lhs), num(r.rhs), num(r.slack),
                            r.pass ? "pass" : "fail"});
  }
}

void add_quantity(JobResult& res, const std::string& name, double value, double tol) {
  if (res.csv_header.empty()) res.csv_header = {"quantity", "value", "tolerance"};
  res.csv_rows.push_back({name, num(value), num(tol)});
}

json certificate_json(const CertificateReport& c) {
  return json{{"pass", c.pass},
              {"reconstruction_violation", c.reconstruction_violation},
              {"norm_violation", c.norm_violation},
              {"duality_violation", c.duality_violation},
              {"entry_bound_violation", c.entry_bound_violation},
              {"dual_violation", c.dual_violation},
              {"message", c.message}};
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(complex_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json schur_json(const SchurNormResult& s, bool factors) {
  json j{{"value", measured(s.value, s.tolerance)},
         {"lower_bound", s.lower_bound},
         {"gap", s.gap},
         {"method", s.method},
         {"iterations", s.iterations},
         {"factor_rank", s.p.cols()}};
  if (factors) {
    j["p"] = matrix_json(s.p);
    j["q"] = matrix_json(s.q);
  }
  return j;
}

std::string require_input(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string("missing required input ") + flag);
  return value;
}

Multiplier load_multiplier(const JobConfig& cfg) {
  return io::read_multiplier_spec(require_input(cfg.multiplier, "--multiplier"));
}

// Values of u moved onto a group with the same Cayley table.
Multiplier rebase(const Multiplier& u, const GroupPtr& g, const std::string& step) {
  if (!u.on_group()) throw ValidationError(step + ": needs a finite-group multiplier");
  if (u.group() == g) return u;
  if (u.group()->cayley_table() != g->cayley_table()) {
    throw ValidationError(step + ": multiplier group does not match the expected group");
  }
  Multiplier out(g, u.values(), u.provenance().front());
  for (std::size_t k = 1; k < u.provenance().size(); ++k) out = out.with_step(u.provenance()[k]);
  return out;
}

std::vector<int> labels_of(const json& step, const char* key, const FiniteGroup& g) {
  if (!step.contains(key)) throw ParseError(std::string("pipeline step needs '") + key + "'");
  std::vector<int> out;
  const json& v = step[key];
  if (v.is_string()) return io::parse_labels(g, v.get<std::string>());
  if (!v.is_array()) throw ParseError(std::string("'") + key + "' must be a label list");
  for (const auto& l : v) out.push_back(g.index_of(typed<std::string>(l, key)));
  return out;
}

std::string str_of(const json& step, const char* key) {
  if (!step.contains(key)) throw ParseError(std::string("pipeline step needs '") + key + "'");
  return typed<std::string>(step[key], key);
}

JobResult schur_job(const JobConfig& cfg) {
  JobResult res;
  const auto a = io::read_matrix(require_input(cfg.matrix, "--matrix"));
  SchurOptions opt;
  opt.tolerance = cfg.tolerance;
  const auto s = schur_norm(a, opt);
  const auto cert = verify_certificate(a, s);
  res.pass = cert.pass;
  res.report["results"] = {{"rows", a.rows()}, {"cols", a.cols()}, {"schur_norm", schur_json(s, cfg.factors)},
                           {"certificate", certificate_json(cert)}};
  add_quantity(res, "schur_norm", s.value, s.tolerance);
  add_quantity(res, "lower_bound", s.lower_bound, s.tolerance);
  return res;
}

JobResult b2_job(const JobConfig& cfg) {
  JobResult res;
  const auto u = load_multiplier(cfg);
  const auto b = b2_norm(u, cfg.tolerance);
  const auto cert = verify_certificate(schur_matrix(u), b.schur);
  const auto pd = is_positive_definite(u, cfg.tolerance);
  res.pass = cert.pass;
  res.report["results"] = {
      {"carrier", carrier_name(u)},
      {"b2_norm", measured(b.value, cfg.tolerance)},
      {"label", b.section_lower_bound ? "section lower bound" : "exact finite-group value"},
      {"solver", schur_json(b.schur, cfg.factors)},
      {"certificate", certificate_json(cert)},
      {"sup_norm", sup_norm(u)},
      {"positive_definite", pd.positive},
      {"min_eigenvalue", measured(pd.min_eigenvalue, cfg.tolerance)},
  };
  res.report["multiplier"] = multiplier_json(u);
  add_quantity(res, b.section_lower_bound ? "b2_norm_section_lower_bound" : "b2_norm", b.value, cfg.tolerance);
  add_quantity(res, "sup_norm", sup_norm(u), 0.0);
  return res;
}

JobResult fourier_job(const JobConfig& cfg) {
  JobResult res;
  const auto u = load_multiplier(cfg);
  const double f = fourier_norm(u);
  res.report["results"] = {{"carrier", carrier_name(u)}, {"fourier_norm", measured(f, 1e-12)}};
  res.report["multiplier"] = multiplier_json(u);
  add_quantity(res, "fourier_norm", f, 1e-12);
  return res;
}

JobResult q_job(const JobConfig& cfg) {
  JobResult res;
  const auto f = load_multiplier(cfg);
  const auto q = q_norm(f, cfg.tolerance);
  double l1 = 0.0;
  for (const auto& v : f.values()) l1 += std::abs(v);
  const auto row = suites::make_row("Q norm <= l1 norm", "Q(G) duality", "<=", q.value, l1,
                                    10 * cfg.tolerance * std::max(1.0, l1));
  res.pass = row.pass;
  res.report["results"] = {{"carrier", carrier_name(f)},
                           {"q_norm", measured(q.value, q.tolerance)},
                           {"upper_bound", q.upper_bound},
                           {"iterations", q.iterations}};
  if (q.maximizer) res.report["results"]["maximizer"] = multiplier_json(*q.maximizer);
  res.report["rows"] = rows_json({row});
  add_quantity(res, "q_norm", q.value, q.tolerance);
  add_quantity(res, "q_norm_upper_bound", q.upper_bound, q.tolerance);
  return res;
}

JobResult pipeline_job(const JobConfig& cfg) {
  JobResult res;
  const double tol = cfg.tolerance;
  const double le = 10 * tol;
  const double eq = 2 * 10 * tol;
  Multiplier u = load_multiplier(cfg);
  if (cfg.steps.empty()) throw ParseError("transform-pipeline needs a non-empty 'steps' list in the config");
  std::vector<suites::Row> rows;
  json trace = json::array();
  auto norm = [&](const Multiplier& m) { return b2_norm(m, tol).value; };
  int index = 0;
  for (const auto& step : cfg.steps) {
    const std::string op = str_of(step, "op");
    const std::string name = "step " + std::to_string(index++) + ": " + op;
    const double before = norm(u);
    Multiplier next = u;
    if (op == "restrict") {
      const auto h = subgroup(u.group(), labels_of(step, "subgroup", *u.group()));
      next = restrict_to(u, h);
      rows.push_back(suites::make_row(name + " b2(u|H) <= b2(u)", "Prop subgroup", "<=", norm(next), before, le));
    } else if (op == "extend") {
      const auto g = io::resolve_carrier(str_of(step, "group"), ".");
      if (!g.finite()) throw ParseError("extend: target must be a finite group");
      const auto h = subgroup(g.group, labels_of(step, "subgroup", *g.group));
      next = extend_by_zero(rebase(u, h.as_group, "extend"), h);
      rows.push_back(suites::make_row(name + " b2(extension) = b2(u)", "Lemma HS-extension", "=", norm(next), before, eq));
    } else if (op == "product") {
      const auto v = io::read_multiplier_spec(str_of(step, "with"));
      const auto p = direct_product(u.group(), v.group());
      next = product_multiplier(u, v, p);
      rows.push_back(suites::make_row(name + " b2(u x v) <= b2(u) b2(v)", "Prop products", "<=", norm(next),
                                      before * norm(v), le));
    } else if (op == "average") {
      const auto k = subgroup(u.group(), labels_of(step, "subgroup", *u.group()));
      next = average_biinvariant(u, k);
      rows.push_back(suites::make_row(name + " b2(u^K) <= b2(u)", "Lemma B3 (7)", "<=", norm(next), before, le));
    } else if (op == "convolve") {
      const auto h = rebase(io::read_multiplier_spec(str_of(step, "with")), u.group(), "convolve");
      next = convolve(h, u);
      rows.push_back(suites::make_row(name + " b2(h * u) <= b2(u)", "Lemma B1 (5)", "<=", norm(next), before, le));
    } else if (op == "lift") {
      const auto g = io::resolve_carrier(str_of(step, "group"), ".");
      if (!g.finite()) throw ParseError("lift: source must be a finite group");
      const auto q = quotient(subgroup(g.group, labels_of(step, "kernel", *g.group)));
      next = lift_from_quotient(q, rebase(u, q.target, "lift"));
      rows.push_back(suites::make_row(name + " b2(lift v) = b2(v)", "Lemma K-quotient (3)", "=", norm(next), before, eq));
    } else if (op == "push") {
      const auto q = quotient(subgroup(u.group(), labels_of(step, "kernel", *u.group())));
      next = push_to_quotient(q, u);
      rows.push_back(suites::make_row(name + " b2(push u) = b2(u)", "Lemma K-quotient (3)", "=", norm(next), before, eq));
    } else if (op == "induce" || op == "folner") {
      const auto c = io::read_cocycle_spec(str_of(step, "cocycle"));
      const auto base = rebase(u, c.target, op);
      if (op == "induce") {
        next = induce_multiplier(base, c);
        rows.push_back(suites::make_row(name + " b2(u^) <= b2(u)", "Lemma inducing-properties (1)", "<=", norm(next),
                                        before, le));
        rows.push_back(suites::make_row(name + " sup(u^) <= sup(u)", "Lemma inducing-properties (2)", "<=",
                                        sup_norm(next), sup_norm(u), 0.0));
      } else {
        std::vector<int> f;
        if (!step.contains("points")) throw ParseError("folner: step needs 'points'");
        for (const auto& p : step["points"]) {
          const auto label = typed<std::string>(p, "points");
          const auto& pl = c.space.point_labels;
          const auto it = std::find(pl.begin(), pl.end(), label);
          if (it == pl.end()) throw ParseError("folner: unknown point '" + label + "'");
          f.push_back(static_cast<int>(it - pl.begin()));
        }
        const auto fr = folner_average(base, c, f);
        next = fr.v;
        rows.push_back(suites::make_row(name + " b2(v_F) <= b2(u)", "co-Folner averaging", "<=", norm(next), before, le));
      }
    } else if (op == "real_part") {
      next = real_part(u);
      rows.push_back(suites::make_row(name + " b2((u + conj u)/2) <= b2(u)", "real symmetrization", "<=", norm(next),
                                      before, le));
    } else if (op == "reflect") {
      next = reflect(u);
      rows.push_back(suites::make_row(name + " b2(u(g^-1)) = b2(u)", "reflection", "=", norm(next), before, eq));
    } else {
      throw ParseError("unknown pipeline op '" + op + "'");
    }
    trace.push_back({{"op", op}, {"b2_before", measured(before, tol)}, {"b2_after", measured(norm(next), tol)},
                     {"carrier", carrier_name(next)}});
    u = next;
  }
  for (const auto& r : rows) res.pass = res.pass && r.pass;
  res.report["results"] = {{"steps", trace}, {"final", multiplier_json(u)}};
  res.report["rows"] = rows_json(rows);
  add_rows_csv(res, "transform-pipeline", rows);
  return res;
}

JobResult suite_job(const JobConfig& cfg) {
  JobResult res;
  suites::Options o;
  o.seed = cfg.seed;
  o.tolerance = cfg.tolerance;
  o.instances = cfg.instances;
  std::vector<suites::SuiteReport> reports;
  if (cfg.suite == "all") {
    reports = suites::run_all(o);
  } else {
    if (!suites::has_suite(cfg.suite)) throw ParseError("unknown suite '" + cfg.suite + "' (see list-suites)");
    reports.push_back(suites::run_suite(cfg.suite, o));
  }
  json out = json::array();
  for (const auto& r : reports) {
    out.push_back({{"name", r.name},
                   {"anchor", r.anchor},
                   {"verdict", r.pass() ? "pass" : "fail"},
                   {"failures", r.failures()},
                   {"rows", rows_json(r.rows)}});
    res.pass = res.pass && r.pass();
    add_rows_csv(res, r.name, r.rows);
  }
  res.report["results"] = {{"suites", out}, {"instances", cfg.instances}};
  return res;
}

JobResult cutoff_job(const JobConfig& cfg) {
  JobResult res;
  const auto c = io::resolve_carrier(require_input(cfg.window, "--window"), ".");
  if (c.finite()) throw ParseError("cutoff needs a window, e.g. free(2,2) or lattice(1,4)");
  if (cfg.inner_radius < 0 || cfg.outer_radius < 0) throw ParseError("cutoff needs --inner and --outer");
  const auto r = cutoff_norm(c.window, cfg.inner_radius, cfg.outer_radius, cfg.tolerance);
  const auto row = suites::make_row("cutoff value >= 1 (u(e) = 1)", "cutoff surrogate", ">=", r.value, 1.0,
                                    10 * cfg.tolerance);
  res.pass = row.pass;
  res.report["results"] = {{"window", c.description},
                           {"inner_radius", cfg.inner_radius},
                           {"outer_radius", cfg.outer_radius},
                           {"value", measured(r.value, r.tolerance)},
                           {"lower_bound", r.lower_bound},
                           {"iterations", r.iterations},
                           {"free_values", r.free_values},
                           {"label", "section value on the window (surrogate, not an ambient constant)"},
                           {"cutoff", multiplier_json(r.u)}};
  res.report["rows"] = rows_json({row});
  add_quantity(res, "cutoff_norm", r.value, r.tolerance);
  add_quantity(res, "cutoff_lower_bound", r.lower_bound, r.tolerance);
  return res;
}

JobResult vn_job(const JobConfig& cfg) {
  JobResult res;
  GroupPtr g;
  std::optional<Multiplier> u;
  if (!cfg.multiplier.empty()) {
    u = load_multiplier(cfg);
    g = u->group();
  } else {
    const auto c = io::resolve_carrier(require_input(cfg.group, "--group or --multiplier"), ".");
    if (!c.finite()) throw ParseError("vn-check needs a finite group");
    g = c.group;
    Rng rng(cfg.seed);
    u = random_multiplier(g, rng, false);
  }
  const auto a = vn::group_algebra(g);
  const auto t = vn::fourier_multiplier_op(a, *u);
  std::vector<suites::Row> rows;
  const std::string anchor = "Theorem vna";

  const auto back = vn::recover_symbol(a, t);
  double diff = 0.0;
  for (int x = 0; x < u->size(); ++x) diff = std::max(diff, std::abs(back[x] - (*u)[x]));
  rows.push_back(suites::make_row("recover_symbol(T_u) = u", anchor, "=", diff, 0.0, 0.0));

  const auto ext = vn::l2_extension(t);
  double diag = 0.0;
  for (int i = 0; i < u->size(); ++i) {
    for (int j = 0; j < u->size(); ++j) diag = std::max(diag, std::abs(ext.matrix(i, j) - (i == j ? (*u)[i] : 0.0)));
  }
  rows.push_back(suites::make_row("L2 extension is diag(u)", anchor, "=", diag, 0.0, 1e-12));
  const bool real = u->is_real();
  rows.push_back(real ? suites::make_row("real symbol: tau-symmetric", "Definition WH-VN (2)", "<=", ext.symmetry_defect,
                                         0.0, 1e-12)
                      : suites::make_row("complex symbol: not tau-symmetric", "Definition WH-VN (2)", ">=",
                                         ext.symmetry_defect, 1e-10, 0.0));
  const double cb = vn::cb_norm(t, cfg.tolerance);
  rows.push_back(suites::make_row("|T~| <= cb norm = b2(u)", "Prop extendable", "<=", ext.operator_norm, cb, 1e-5));
  rows.push_back(suites::make_row("Fell absorption", anchor, "=", vn::fell_absorption_defect(a), 0.0, 0.0));
  rows.push_back(suites::make_row("center dimension = number of conjugacy classes", "group von Neumann algebra", "=",
                                  vn::center_dimension(a), static_cast<double>(g->conjugacy_classes().size()), 0.0));

  Rng rng(cfg.seed);
  for (const auto& h : all_subgroups(g)) {
    const auto e = vn::conditional_expectation(a, h);
    double trace = 0.0;
    double idem = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto x = a.space.random(rng);
      const auto ex = e(x);
      trace = std::max(trace, std::abs(a.space.trace(ex) - a.space.trace(x)));
      idem = std::max(idem, vn::max_abs(vn::sub(e(ex), ex)));
    }
    const std::string hs = " (|H|=" + std::to_string(h.order()) + ")";
    rows.push_back(suites::make_row("tau(E x) = tau(x)" + hs, "Theorem hereditary2' (1)", "<=", trace, 0.0, 1e-12));
    rows.push_back(suites::make_row("E(E x) = E x" + hs, "Theorem hereditary2' (1)", "<=", idem, 0.0, 1e-12));
  }
  for (const auto& r : rows) res.pass = res.pass && r.pass;
  res.report["results"] = {{"group_order", g->order()},
                           {"cb_norm", measured(cb, cfg.tolerance)},
                           {"l2_extension_norm", ext.operator_norm},
                           {"checklist",
                            {{"normal", true},
                             {"completely_bounded", std::isfinite(cb)},
                             {"tau_symmetric", ext.symmetric},
                             {"compact_l2_extension", ext.compact}}},
                           {"multiplier", multiplier_json(*u)}};
  res.report["rows"] = rows_json(rows);
  add_rows_csv(res, "vn-check", rows);
  return res;
}

JobResult list_job() {
  JobResult res;
  json out = json::array();
  res.csv_header = {"name", "anchor", "description"};
  for (const auto& e : suites::catalog()) {
    out.push_back({{"name", e.name}, {"anchor", e.anchor}, {"description", e.description}});
    res.csv_rows.push_back({e.name, e.anchor, e.description});
  }
  res.report["results"] = {{"suites", out}};
  return res;
}

}  // namespace

JobResult run(const JobConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || cfg.tolerance > 1e-2) throw ParseError("tolerance must lie in (0, 1e-2]");
  if (cfg.format != "json" && cfg.format != "csv") throw ParseError("format must be json or csv");
  JobResult res;
  if (cfg.kind == "schur-norm") {
    res = schur_job(cfg);
  } else if (cfg.kind == "b2-norm") {
    res = b2_job(cfg);
  } else if (cfg.kind == "fourier-norm") {
    res = fourier_job(cfg);
  } else if (cfg.kind == "q-norm") {
    res = q_job(cfg);
  } else if (cfg.kind == "transform-pipeline") {
    res = pipeline_job(cfg);
  } else if (cfg.kind == "verify-suite") {
    res = suite_job(cfg);
  } else if (cfg.kind == "cutoff") {
    res = cutoff_job(cfg);
  } else if (cfg.kind == "vn-check") {
    res = vn_job(cfg);
  } else if (cfg.kind == "list-suites") {
    res = list_job();
  } else {
    throw ParseError("unknown job kind '" + cfg.kind + "'");
  }
  json job{{"kind", cfg.kind}, {"tolerance", cfg.tolerance}, {"seed", cfg.seed}, {"format", cfg.format}};
  json inputs = json::object();
  if (!cfg.matrix.empty()) inputs["matrix"] = cfg.matrix;
  if (!cfg.multiplier.empty()) inputs["multiplier"] = cfg.multiplier;
  if (!cfg.group.empty()) inputs["group"] = cfg.group;
  if (!cfg.window.empty()) inputs["window"] = cfg.window;
  if (cfg.kind == "verify-suite") inputs["suite"] = cfg.suite;
  if (cfg.kind == "cutoff") {
    inputs["inner_radius"] = cfg.inner_radius;
    inputs["outer_radius"] = cfg.outer_radius;
  }
  if (cfg.kind == "transform-pipeline") inputs["steps"] = cfg.steps;
  job["inputs"] = inputs;
  json report{{"job", job},
              {"status", res.pass ? "pass" : "fail"},
              {"provenance", {{"tool", "hsm"}, {"version", kVersion}, {"seed", cfg.seed}}}};
  report.update(res.report);
  res.report = std::move(report);
  return res;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render(const JobResult& r, const std::string& format) {
  if (format == "csv") {
    std::ostringstream o;
    for (std::size_t k = 0; k < r.csv_header.size(); ++k) o << (k ? "," : "") << csv_cell(r.csv_header[k]);
    o << "\n";
    for (const auto& row : r.csv_rows) {
      for (std::size_t k = 0; k < row.size(); ++k) o << (k ? "," : "") << csv_cell(row[k]);
      o << "\n";
    }
    return o.str();
  }
  return r.report.dump(2) + "\n";
}

}  // namespace hsm::cli
