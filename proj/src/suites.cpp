#include "hsm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "hsm/multiplier.hpp"
#include "hsm/transforms.hpp"
#include "hsm/vn.hpp"

namespace hsm::suites {

Row make_row(std::string name, std::string anchor, std::string relation, double lhs, double rhs, double slack) {
  Row r{std::move(name), std::move(anchor), std::move(relation), lhs, rhs, slack, false};
  if (r.relation == "<=") {
    r.pass = lhs <= rhs + slack;
  } else if (r.relation == ">=") {
    r.pass = lhs >= rhs - slack;
  } else if (r.relation == "=") {
    r.pass = std::abs(lhs - rhs) <= slack;
  } else {
    throw ValidationError("unknown relation '" + r.relation + "'");
  }
  return r;
}

bool SuiteReport::pass() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.pass; }));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"gilbert-equivalences", "Prop Gilbert",
       "factorization, section and duality characterizations of the B2 norm on finite groups and free-group windows"},
      {"hereditary", "Prop subgroup; Lemma HS-extension; Prop products; Lemma B3 (7); Lemma B1 (5); "
                     "Lemma K-quotient (3); Lemma inducing-properties (1)-(2)",
       "restriction, extension, product, average, convolve, quotient, induce, folner"},
      {"interpolation", "Prop extendable", "L2 extension norm against B2 norm and operator norm"},
      {"semigroup", "Prop equivalent-WH1", "exp(-t psi) stays in the B2 unit ball; semigroup law"},
      {"trace-change", "Prop independent-trace", "Radon-Nikodym derivative, spectral slicing, isometry U"},
      {"vn-roundtrip", "Theorem vna", "Fourier multiplier symbol roundtrip, tau-symmetry, Fell absorption"},
  };
  return entries;
}

bool has_suite(const std::string& name) {
  const auto& c = catalog();
  return std::any_of(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.name == name; });
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng part_rng(const Options& o, const std::string& suite, const std::string& part) {
  const std::uint64_t a = fnv1a(suite);
  const std::uint64_t b = fnv1a(part);
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

std::string tag(const std::string& what, const std::string& group, int k) {
  return what + " [" + group + " #" + std::to_string(k) + "]";
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

double b2(const Multiplier& u, double tol) { return b2_norm(u, tol).value; }

std::vector<Subgroup> normal_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(g)) {
    if (is_normal(h)) out.push_back(std::move(h));
  }
  return out;
}

// Alternates real and complex Gaussian multipliers.
Multiplier random_u(const GroupPtr& g, Rng& rng, int k) { return random_multiplier(g, rng, k % 2 == 1); }

SuiteReport gilbert(const Options& o) {
  const std::string suite = "gilbert-equivalences";
  SuiteReport r{suite, "Prop Gilbert", {}};
  const double tol = o.tolerance;
  const auto zoo = group_zoo();
  {
    Rng rng = part_rng(o, suite, "factorization");
    for (int k = 0; k < o.instances; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto u = random_u(g, rng, k);
      const auto res = b2_norm(u, tol);
      const auto cert = verify_certificate(schur_matrix(u), res.schur);
      const double scale = std::max(1.0, res.value);
      r.rows.push_back(make_row(tag("factorization reconstructs u(y^-1 x)", name, k), "Prop Gilbert (1)<->(4)", "<=",
                                cert.reconstruction_violation, 0.0, 10 * tol));
      double pmax = 0.0;
      double qmax = 0.0;
      for (Eigen::Index i = 0; i < res.schur.p.rows(); ++i) pmax = std::max(pmax, res.schur.p.row(i).norm());
      for (Eigen::Index i = 0; i < res.schur.q.rows(); ++i) qmax = std::max(qmax, res.schur.q.row(i).norm());
      r.rows.push_back(make_row(tag("sup|P| sup|Q| <= norm", name, k), "Prop Gilbert (4)", "<=", pmax * qmax, res.value,
                                10 * tol * scale));
      r.rows.push_back(make_row(tag("dual certificate closes the gap", name, k), "Prop Gilbert (1)<->(4)", "<=",
                                res.value, res.schur.lower_bound, 10 * tol * scale));
    }
  }
  {
    Rng rng = part_rng(o, suite, "sections");
    for (int k = 0; k < o.instances; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto u = random_u(g, rng, k);
      const ComplexMatrix m = schur_matrix(u);
      std::vector<int> keep;
      std::bernoulli_distribution coin(0.6);
      for (int x = 0; x < g->order(); ++x) {
        if (coin(rng)) keep.push_back(x);
      }
      if (keep.empty()) keep.push_back(0);
      ComplexMatrix s(keep.size(), keep.size());
      for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) s(i, j) = m(keep[i], keep[j]);
      }
      const double full = b2(u, tol);
      r.rows.push_back(make_row(tag("section norm <= B2 norm", name, k), "Prop Gilbert (2)", "<=",
                                schur_norm(s, tol).value, full, 10 * tol));
    }
  }
  {
    Rng rng = part_rng(o, suite, "norm-comparisons");
    for (int k = 0; k < o.instances; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto u = random_u(g, rng, k);
      const double n = b2(u, tol);
      r.rows.push_back(make_row(tag("sup norm <= B2 norm", name, k), "Prop Gilbert", "<=", sup_norm(u), n, 10 * tol));
      r.rows.push_back(make_row(tag("B2 norm <= A(G) norm", name, k), "A(G) in B2(G)", "<=", n, fourier_norm(u), 10 * tol));
      const auto pd = random_positive_definite(g, rng);
      r.rows.push_back(make_row(tag("positive definite: B2 norm = u(e)", name, k), "Prop Gilbert", "=", b2(pd, tol),
                                pd[0].real(), 10 * tol * std::max(1.0, pd[0].real())));
    }
  }
  {
    Rng rng = part_rng(o, suite, "q-duality");
    const int count = std::max(1, o.instances / 3);
    for (int k = 0; k < count; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto f = random_u(g, rng, k);
      const auto u = random_u(g, rng, k + 1);
      const auto q = q_norm(f, tol);
      Complex pairing = 0.0;
      double l1 = 0.0;
      for (int x = 0; x < g->order(); ++x) {
        pairing += f[x] * u[x];
        l1 += std::abs(f[x]);
      }
      const double scale = std::max(1.0, q.value);
      r.rows.push_back(make_row(tag("|sum f u| <= Q norm * B2 norm", name, k), "Q(G) duality", "<=", std::abs(pairing),
                                q.upper_bound * b2(u, tol), 10 * tol * scale * std::max(1.0, b2(u, tol))));
      r.rows.push_back(make_row(tag("Q norm <= l1 norm", name, k), "Q(G) duality", "<=", q.value, l1, 10 * tol * scale));
    }
  }
  {
    const auto window = ball_window(free_group(2), 2);
    for (double t : {0.5, 1.0, 2.0}) {
      const auto u = exp_word_length(window, t);
      const auto pd = is_positive_definite(u, 1e-9);
      const std::string ts = std::to_string(t).substr(0, 3);
      r.rows.push_back(make_row("free(2) radius 2: min eigenvalue of exp(-" + ts + "|y^-1 x|)", "Prop Gilbert (2)", ">=",
                                pd.min_eigenvalue, -1e-9, 0.0));
      r.rows.push_back(make_row("free(2) radius 2: section B2 norm of exp(-" + ts + "|x|)", "Prop Gilbert (2)", "=",
                                b2(u, tol), 1.0, 1e-5));
    }
  }
  return r;
}

SuiteReport hereditary(const Options& o) {
  const std::string suite = "hereditary";
  SuiteReport r{suite, catalog()[1].anchor, {}};
  const double tol = o.tolerance;
  const double le = 10 * tol;
  const double eq = 2 * 10 * tol;
  const auto zoo = group_zoo();
  const int n = o.instances;

  {
    Rng rng = part_rng(o, suite, "restriction");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto u = random_u(g, rng, k);
      const auto h = pick(all_subgroups(g), rng);
      r.rows.push_back(make_row(tag("b2(u|H) <= b2(u), |H|=" + std::to_string(h.order()), name, k), "Prop subgroup", "<=",
                                b2(restrict_to(u, h), tol), b2(u, tol), le));
    }
  }
  {
    Rng rng = part_rng(o, suite, "extension");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto h = pick(all_subgroups(g), rng);
      const auto v = random_u(h.as_group, rng, k);
      r.rows.push_back(make_row(tag("b2(extend_by_zero v) = b2(v), |H|=" + std::to_string(h.order()), name, k),
                                "Lemma HS-extension", "=", b2(extend_by_zero(v, h), tol), b2(v, tol), eq));
    }
  }
  {
    Rng rng = part_rng(o, suite, "product");
    const std::vector<std::pair<int, int>> pairs = {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {0, 3}, {1, 2}, {0, 5}};
    for (int k = 0; k < n; ++k) {
      const auto [a, b] = pairs[k % pairs.size()];
      const auto& [na, ga] = zoo[a];
      const auto& [nb, gb] = zoo[b];
      const auto p = direct_product(ga, gb);
      const auto u = random_u(ga, rng, k);
      const auto v = random_u(gb, rng, k + 1);
      r.rows.push_back(make_row(tag("b2(u x v) <= b2(u) b2(v)", na + " x " + nb, k), "Prop products", "<=",
                                b2(product_multiplier(u, v, p), tol), b2(u, tol) * b2(v, tol), le));
    }
  }
  {
    Rng rng = part_rng(o, suite, "average");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto u = random_u(g, rng, k);
      const auto h = pick(all_subgroups(g), rng);
      r.rows.push_back(make_row(tag("b2(u^K) <= b2(u), |K|=" + std::to_string(h.order()), name, k), "Lemma B3 (7)", "<=",
                                b2(average_biinvariant(u, h), tol), b2(u, tol), le));
    }
  }
  {
    Rng rng = part_rng(o, suite, "convolve");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto u = random_u(g, rng, k);
      const auto h = random_probability(g, rng);
      r.rows.push_back(
          make_row(tag("b2(h * u) <= b2(u)", name, k), "Lemma B1 (5)", "<=", b2(convolve(h, u), tol), b2(u, tol), le));
    }
  }
  {
    Rng rng = part_rng(o, suite, "quotient");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto q = quotient(pick(normal_subgroups(g), rng));
      const auto v = random_u(q.target, rng, k);
      const auto lifted = lift_from_quotient(q, v);
      r.rows.push_back(make_row(tag("b2(lift v) = b2(v), |K|=" + std::to_string(q.kernel.order()), name, k),
                                "Lemma K-quotient (3)", "=", b2(lifted, tol), b2(v, tol), eq));
      double roundtrip = 0.0;
      const auto back = push_to_quotient(q, lifted);
      for (int x = 0; x < v.size(); ++x) roundtrip = std::max(roundtrip, std::abs(back[x] - v[x]));
      r.rows.push_back(make_row(tag("push(lift v) = v", name, k), "Lemma K-quotient (3)", "=", roundtrip, 0.0, 0.0));
    }
  }
  {
    Rng rng = part_rng(o, suite, "induce");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      Cocycle c;
      if (k % 2 == 0) {
        c = coset_cocycle(pick(all_subgroups(g), rng));
      } else {
        c = quotient_cocycle(quotient(pick(normal_subgroups(g), rng)));
      }
      const auto u = random_u(c.target, rng, k / 2);
      const auto hat = induce_multiplier(u, c);
      const std::string kind = k % 2 == 0 ? "coset" : "quotient";
      r.rows.push_back(make_row(tag("b2(u^) <= b2(u), " + kind + " cocycle", name, k), "Lemma inducing-properties (1)",
                                "<=", b2(hat, tol), b2(u, tol), le));
      r.rows.push_back(make_row(tag("sup(u^) <= sup(u), " + kind + " cocycle", name, k), "Lemma inducing-properties (2)",
                                "<=", sup_norm(hat), sup_norm(u), 0.0));
    }
  }
  {
    Rng rng = part_rng(o, suite, "folner");
    for (int k = 0; k < n; ++k) {
      const auto& [name, g] = zoo[k % zoo.size()];
      const auto c = coset_cocycle(pick(all_subgroups(g), rng));
      const auto u = random_u(c.target, rng, k);
      std::vector<int> f;
      std::bernoulli_distribution coin(0.5);
      for (int x = 0; x < c.space.points(); ++x) {
        if (coin(rng)) f.push_back(x);
      }
      if (f.empty()) f.push_back(0);
      const auto v = folner_average(u, c, f);
      r.rows.push_back(make_row(tag("b2(v_F) <= b2(u), |F|=" + std::to_string(f.size()), name, k), "co-Folner averaging",
                                "<=", b2(v.v, tol), b2(u, tol), le));
    }
  }
  return r;
}

SuiteReport semigroup(const Options& o) {
  const std::string suite = "semigroup";
  SuiteReport r{suite, "Prop equivalent-WH1", {}};
  const std::vector<std::pair<std::string, GroupPtr>> groups = {{"S3", symmetric_group(3)}, {"Z/6", cyclic_group(6)}};
  for (const auto& [name, g] : groups) {
    Rng rng = part_rng(o, suite, name);
    for (int k = 0; k < 10; ++k) {
      const auto raw = random_proper_function_spec(g, rng, 3);
      const auto spec = make_proper_function_spec(raw.u_list, raw.alphas, o.tolerance);
      const auto psi = proper_function(spec);
      for (double t : {0.1, 1.0, 10.0}) {
        const std::string ts = t == 0.1 ? "0.1" : (t == 1.0 ? "1" : "10");
        r.rows.push_back(make_row(tag("b2(exp(-" + ts + " psi)) <= 1", name, k), "Prop equivalent-WH1", "<=",
                                  b2(exp_multiplier(psi, t), o.tolerance), 1.0, 1e-5));
      }
      double law = 0.0;
      for (const auto& [s, t] : std::vector<std::pair<double, double>>{{0.1, 1.0}, {1.0, 10.0}, {0.1, 10.0}}) {
        const auto lhs = pointwise_product(exp_multiplier(psi, s), exp_multiplier(psi, t));
        const auto rhs = exp_multiplier(psi, s + t);
        for (int x = 0; x < g->order(); ++x) law = std::max(law, std::abs(lhs[x] - rhs[x]));
      }
      r.rows.push_back(make_row(tag("exp(-s psi) exp(-t psi) = exp(-(s+t) psi)", name, k), "Prop equivalent-WH1", "=",
                                law, 0.0, 1e-12));
    }
  }
  return r;
}

SuiteReport vn_roundtrip(const Options& o) {
  const std::string suite = "vn-roundtrip";
  SuiteReport r{suite, "Theorem vna", {}};
  const auto zoo = group_zoo();
  std::vector<vn::GroupAlgebra> algebras;
  for (const auto& z : zoo) algebras.push_back(vn::group_algebra(z.group));
  Rng rng = part_rng(o, suite, "roundtrip");
  for (int k = 0; k < 50; ++k) {
    const auto& a = algebras[k % zoo.size()];
    const std::string& name = zoo[k % zoo.size()].name;
    const bool complex = k % 2 == 1;
    const auto u = random_multiplier(a.group, rng, complex);
    const auto t = vn::fourier_multiplier_op(a, u);
    const auto back = vn::recover_symbol(a, t);
    double diff = 0.0;
    for (int x = 0; x < u.size(); ++x) diff = std::max(diff, std::abs(back[x] - u[x]));
    r.rows.push_back(make_row(tag("recover_symbol(T_u) = u", name, k), "Theorem vna", "=", diff, 0.0, 0.0));
    const auto ext = vn::l2_extension(t);
    double diag = 0.0;
    for (int i = 0; i < u.size(); ++i) {
      for (int j = 0; j < u.size(); ++j) diag = std::max(diag, std::abs(ext.matrix(i, j) - (i == j ? u[i] : 0.0)));
    }
    r.rows.push_back(make_row(tag("L2 extension is diag(u)", name, k), "Theorem vna", "=", diag, 0.0, 1e-12));
    if (complex) {
      r.rows.push_back(make_row(tag("complex symbol: T_u not tau-symmetric", name, k), "Theorem vna", ">=",
                                ext.symmetry_defect, 1e-10, 0.0));
    } else {
      r.rows.push_back(make_row(tag("real symbol: T_u tau-symmetric", name, k), "Theorem vna", "<=", ext.symmetry_defect,
                                0.0, 1e-12));
    }
  }
  const std::vector<std::pair<std::string, GroupPtr>> fell = {
      {"Z/2", cyclic_group(2)}, {"Z/3", cyclic_group(3)}, {"S3", symmetric_group(3)}};
  for (const auto& [name, g] : fell) {
    r.rows.push_back(make_row("Fell absorption V*(lambda(g) (x) a)V = tau(lambda(g)* a) lambda(g) [" + name + "]",
                              "Theorem vna", "=", vn::fell_absorption_defect(vn::group_algebra(g)), 0.0, 0.0));
  }
  return r;
}

SuiteReport interpolation(const Options& o) {
  const std::string suite = "interpolation";
  SuiteReport r{suite, "Prop extendable", {}};
  const auto zoo = group_zoo();
  std::vector<vn::GroupAlgebra> algebras;
  for (const auto& z : zoo) algebras.push_back(vn::group_algebra(z.group));
  Rng rng = part_rng(o, suite, "multipliers");
  for (int k = 0; k < 50; ++k) {
    const auto& a = algebras[k % zoo.size()];
    const std::string& name = zoo[k % zoo.size()].name;
    const auto u = random_multiplier(a.group, rng, false);
    const auto t = vn::fourier_multiplier_op(a, u);
    const double ext = vn::l2_extension(t).operator_norm;
    r.rows.push_back(make_row(tag("|T~| = max|u| <= b2(u)", name, k), "Prop extendable", "<=", ext,
                              b2(u, o.tolerance), 1e-5));
    r.rows.push_back(make_row(tag("|T~| <= |T| on M", name, k), "Prop extendable", "<=", ext,
                              vn::operator_norm_lower_bound(t), 1e-8));
  }
  Rng sub_rng = part_rng(o, suite, "conditional-expectations");
  for (std::size_t k = 0; k < zoo.size(); ++k) {
    const auto h = pick(all_subgroups(zoo[k].group), sub_rng);
    const auto e = vn::conditional_expectation(algebras[k], h);
    r.rows.push_back(make_row("|E~| <= |E| on M, |H|=" + std::to_string(h.order()) + " [" + zoo[k].name + "]",
                              "Prop extendable", "<=", vn::l2_extension(e).operator_norm,
                              vn::operator_norm_lower_bound(e), 1e-8));
  }
  return r;
}

SuiteReport trace_change_suite(const Options& o) {
  const std::string suite = "trace-change";
  SuiteReport r{suite, "Prop independent-trace", {}};
  Rng rng = part_rng(o, suite, "algebras");
  std::uniform_int_distribution<int> nblocks(1, 4);
  std::uniform_int_distribution<int> bsize(1, 4);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const std::vector<double> eps = {0.1, 0.5, 1.0};
  for (int k = 0; k < 20; ++k) {
    std::vector<int> sizes(nblocks(rng));
    for (auto& s : sizes) s = bsize(rng);
    std::vector<double> w1(sizes.size());
    std::vector<double> w2(sizes.size());
    for (auto& w : w1) w = weight(rng);
    for (auto& w : w2) w = weight(rng);
    const auto m = vn::TracedAlgebra::normalized(sizes, w1);
    const auto other = vn::TracedAlgebra::normalized(sizes, w2);
    const double e = eps[k % eps.size()];
    const auto tc = vn::trace_change(m, other.weights(), e);
    const std::string name = "algebra #" + std::to_string(k);
    r.rows.push_back(make_row(name + ": tau'(x) = tau(hx) on a basis", "Prop independent-trace", "<=",
                              tc.radon_nikodym_defect, 0.0, 1e-10));
    r.rows.push_back(make_row(name + ": <Ux,Uy>_tau = <x,y>_tau' on basis pairs", "Prop independent-trace", "<=",
                              tc.isometry_defect, 0.0, 1e-10));
    double worst = 0.0;
    for (double c : tc.slice_condition) worst = std::max(worst, c);
    r.rows.push_back(make_row(name + ": slice condition number <= (1+eps)^1/2", "Prop independent-trace", "<=", worst,
                              std::sqrt(1.0 + e), 1e-12));
  }
  return r;
}

}  // namespace

SuiteReport run_suite(const std::string& name, const Options& options) {
  if (!(options.tolerance > 0.0) || options.tolerance > 1e-2) {
    throw ValidationError("suite tolerance must lie in (0, 1e-2]");
  }
  if (options.instances < 1) throw ValidationError("suite instances must be positive");
  if (name == "gilbert-equivalences") return gilbert(options);
  if (name == "hereditary") return hereditary(options);
  if (name == "semigroup") return semigroup(options);
  if (name == "vn-roundtrip") return vn_roundtrip(options);
  if (name == "interpolation") return interpolation(options);
  if (name == "trace-change") return trace_change_suite(options);
  throw ValidationError("unknown suite '" + name + "'");
}

std::vector<SuiteReport> run_all(const Options& options) {
  std::vector<SuiteReport> out;
  for (const auto& e : catalog()) out.push_back(run_suite(e.name, options));
  return out;
}

}  // namespace hsm::suites
