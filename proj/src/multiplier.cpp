#include "hsm/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsm/sdp.hpp"

namespace hsm {

Multiplier::Multiplier(GroupPtr group, std::vector<Complex> values, std::string origin)
    : group_(std::move(group)), values_(std::move(values)), provenance_{std::move(origin)} {
  if (!group_) throw ValidationError("multiplier: null group");
  if (static_cast<int>(values_.size()) != group_->order()) {
    throw ValidationError("multiplier: expected " + std::to_string(group_->order()) + " values, got " +
                          std::to_string(values_.size()));
  }
}

Multiplier::Multiplier(WindowPtr window, std::vector<Complex> values, std::string origin)
    : window_(std::move(window)), values_(std::move(values)), provenance_{std::move(origin)} {
  if (!window_) throw ValidationError("multiplier: null window");
  if (values_.size() != window_->difference_set().size()) {
    throw ValidationError("multiplier: window multipliers need one value per difference-set element (" +
                          std::to_string(window_->difference_set().size()) + "), got " +
                          std::to_string(values_.size()));
  }
}

Multiplier Multiplier::constant(GroupPtr group, Complex c) {
  const int n = group->order();
  std::ostringstream o;
  o << "constant(" << c.real() << (c.imag() != 0.0 ? "+" + std::to_string(c.imag()) + "i" : "") << ")";
  return Multiplier(std::move(group), std::vector<Complex>(n, c), o.str());
}

Multiplier Multiplier::delta(GroupPtr group, int element) {
  if (element < 0 || element >= group->order()) throw ValidationError("delta: element index out of range");
  std::vector<Complex> v(group->order(), 0.0);
  v[element] = 1.0;
  const std::string name = "delta(" + group->label(element) + ")";
  return Multiplier(std::move(group), std::move(v), name);
}

Multiplier Multiplier::indicator(GroupPtr group, const std::vector<int>& elements) {
  std::vector<Complex> v(group->order(), 0.0);
  std::string name = "indicator{";
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k] < 0 || elements[k] >= group->order()) {
      throw ValidationError("indicator: element index out of range");
    }
    v[elements[k]] = 1.0;
    name += (k ? "," : "") + group->label(elements[k]);
  }
  return Multiplier(std::move(group), std::move(v), name + "}");
}

const GroupPtr& Multiplier::group() const {
  if (!group_) throw UnsupportedError("multiplier is carried by a window, not a finite group");
  return group_;
}

const WindowPtr& Multiplier::window() const {
  if (!window_) throw UnsupportedError("multiplier is carried by a finite group, not a window");
  return window_;
}

std::string Multiplier::label(int k) const {
  return group_ ? group_->label(k) : window_->ambient().label(window_->difference_set()[k]);
}

int Multiplier::identity_index() const {
  return group_ ? FiniteGroup::kIdentity : window_->identity_index();
}

Multiplier Multiplier::with_step(const std::string& step) const {
  Multiplier out = *this;
  out.provenance_.push_back(step);
  return out;
}

bool Multiplier::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [tol](Complex c) { return std::abs(c.imag()) <= tol; });
}

bool Multiplier::same_carrier(const Multiplier& other) const {
  return group_ == other.group_ && window_ == other.window_;
}

namespace {

Multiplier rebuild(const Multiplier& like, std::vector<Complex> values, std::string step) {
  std::vector<std::string> trail = like.provenance();
  Multiplier out = like.on_group() ? Multiplier(like.group(), std::move(values), trail.front())
                                   : Multiplier(like.window(), std::move(values), trail.front());
  for (std::size_t k = 1; k < trail.size(); ++k) out = out.with_step(trail[k]);
  return out.with_step(step);
}

void require_same(const Multiplier& a, const Multiplier& b, const char* what) {
  if (!a.same_carrier(b)) throw ValidationError(std::string(what) + ": multipliers live on different carriers");
}

}  // namespace

Multiplier operator+(const Multiplier& a, const Multiplier& b) {
  require_same(a, b, "sum");
  std::vector<Complex> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = a[k] + b[k];
  return rebuild(a, std::move(v), "plus");
}

Multiplier operator*(Complex s, const Multiplier& a) {
  std::vector<Complex> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = s * a[k];
  return rebuild(a, std::move(v), "scale");
}

Multiplier pointwise_product(const Multiplier& a, const Multiplier& b) {
  require_same(a, b, "product");
  std::vector<Complex> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = a[k] * b[k];
  return rebuild(a, std::move(v), "pointwise-product");
}

Multiplier real_part(const Multiplier& u) {
  std::vector<Complex> v(u.size());
  for (int k = 0; k < u.size(); ++k) v[k] = u[k].real();
  return rebuild(u, std::move(v), "real-part");
}

Multiplier reflect(const Multiplier& u) {
  std::vector<Complex> v(u.size());
  if (u.on_group()) {
    const auto& g = *u.group();
    for (int k = 0; k < u.size(); ++k) v[k] = u[g.inv(k)];
  } else {
    const auto& w = *u.window();
    for (int k = 0; k < u.size(); ++k) {
      v[k] = u[w.find_difference(w.ambient().inv(w.difference_set()[k]))];
    }
  }
  return rebuild(u, std::move(v), "reflect");
}

Multiplier window_multiplier(WindowPtr window, const std::function<Complex(const AmbientGroup::Element&)>& f,
                             std::string origin) {
  std::vector<Complex> v;
  v.reserve(window->difference_set().size());
  for (const auto& g : window->difference_set()) v.push_back(f(g));
  return Multiplier(std::move(window), std::move(v), std::move(origin));
}

Multiplier exp_word_length(WindowPtr window, double t) {
  const AmbientGroup amb = window->ambient();
  std::ostringstream o;
  o << "exp_wordlength(t=" << t << ")";
  return window_multiplier(
      std::move(window), [&amb, t](const AmbientGroup::Element& g) { return Complex(std::exp(-t * amb.length(g))); },
      o.str());
}

ComplexMatrix schur_matrix(const Multiplier& u) {
  if (u.on_group()) {
    const auto& g = *u.group();
    const int n = g.order();
    ComplexMatrix m(n, n);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) m(x, y) = u[g.mul(g.inv(y), x)];
    }
    return m;
  }
  const auto& w = *u.window();
  const int n = w.size();
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = u[w.difference_index(i, j)];
  }
  return m;
}

B2Result b2_norm(const Multiplier& u, const SchurOptions& options) {
  B2Result r;
  r.schur = schur_norm(schur_matrix(u), options);
  r.value = r.schur.value;
  r.section_lower_bound = !u.on_group();
  return r;
}

B2Result b2_norm(const Multiplier& u, double tolerance) {
  SchurOptions options;
  options.tolerance = tolerance;
  return b2_norm(u, options);
}

PositiveDefiniteResult is_positive_definite(const Multiplier& u, double tolerance) {
  const ComplexMatrix m = schur_matrix(u);
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  PositiveDefiniteResult r;
  r.min_eigenvalue = solver.eigenvalues()(0);
  r.positive = is_hermitian(m, tolerance) && r.min_eigenvalue >= -tolerance;
  return r;
}

double fourier_norm(const Multiplier& u) {
  if (!u.on_group()) throw UnsupportedError("fourier_norm is defined for finite-group carriers only");
  const auto& g = *u.group();
  const int n = g.order();
  // (sum_x u(x) lambda(x))[a, b] = u(a b^-1)
  ComplexMatrix lam(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) lam(a, b) = u[g.mul(a, g.inv(b))];
  }
  const Eigen::VectorXd sv = Eigen::BDCSVD<ComplexMatrix>(lam).singularValues();
  return sv.sum() / n;
}

QNormResult q_norm(const Multiplier& f, double tolerance) {
  if (!f.on_group()) throw UnsupportedError("q_norm is defined for finite-group carriers only");
  if (!(tolerance > 0.0) || tolerance > 1e-2) throw ValidationError("q_norm: tolerance must lie in (0, 1e-2]");
  const auto& g = *f.group();
  const int n = g.order();
  QNormResult out;
  out.tolerance = tolerance;
  const double scale = sup_norm(f);
  if (scale == 0.0) {
    out.maximizer = Multiplier::constant(f.group(), 1.0).with_step("q-norm maximizer");
    return out;
  }
  // With real f the real part of any maximizer is again a maximizer, so the
  // real SDP suffices.
  const bool complex = !f.is_real();
  // S = [[I + X_off, M(u)], [M(u)*, I + Y_off]] PSD; maximize Re sum f u.
  sdp::HermitianBuilder b;
  const int blk = b.add_block(2 * n, complex);
  for (int i = 0; i < 2 * n; ++i) b.add_constant(blk, i, i, 1.0);
  std::vector<int> ure(n);
  std::vector<int> uim(n, -1);
  for (int x = 0; x < n; ++x) {
    ure[x] = b.add_variable(f[x].real() / scale);
    if (complex) uim[x] = b.add_variable(-f[x].imag() / scale);
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int k = g.mul(g.inv(y), x);
      b.add_coefficient(ure[k], blk, x, n + y, 1.0);
      if (complex) b.add_coefficient(uim[k], blk, x, n + y, Complex(0.0, 1.0));
    }
  }
  for (int base : {0, n}) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        b.add_coefficient(b.add_variable(0.0), blk, base + i, base + j, 1.0);
        if (complex) b.add_coefficient(b.add_variable(0.0), blk, base + i, base + j, Complex(0.0, 1.0));
      }
    }
  }
  sdp::Options opt;
  opt.gap_tolerance = std::clamp(tolerance * 1e-2, 1e-12, 1e-8);
  opt.feasibility_tolerance = opt.gap_tolerance;
  const auto sol = sdp::solve(b.build(), opt);
  out.iterations = sol.iterations;
  std::vector<Complex> u(n);
  for (int x = 0; x < n; ++x) u[x] = Complex(sol.y(ure[x]), complex ? sol.y(uim[x]) : 0.0);
  double value = 0.0;
  for (int x = 0; x < n; ++x) value += (f[x] * u[x]).real();
  out.value = value;
  out.upper_bound = sol.primal_objective * scale;
  out.maximizer = Multiplier(f.group(), std::move(u), "q-norm maximizer");
  if (out.upper_bound - out.value > std::max(10.0 * tolerance, 10.0 * tolerance * out.value)) {
    std::ostringstream msg;
    msg << "q_norm: bounds [" << out.value << ", " << out.upper_bound << "] not within tolerance after "
        << sol.iterations << " iterations (" << sdp::to_string(sol.status) << ")";
    throw ConvergenceError(msg.str());
  }
  return out;
}

double sup_norm(const Multiplier& u) {
  double m = 0.0;
  for (Complex c : u.values()) m = std::max(m, std::abs(c));
  return m;
}

NormReport norm_report(const Multiplier& u, double tolerance, NormSelection which) {
  NormReport r;
  r.tolerance = tolerance;
  r.sup = sup_norm(u);
  if (which.b2) {
    const auto b = b2_norm(u, tolerance);
    r.b2 = b.value;
    r.b2_section_lower_bound = b.section_lower_bound;
  }
  if (which.pos_def) {
    const auto p = is_positive_definite(u, tolerance);
    r.pos_def = p.positive;
    r.min_eigenvalue = p.min_eigenvalue;
  }
  if (u.on_group()) {
    if (which.fourier) r.fourier = fourier_norm(u);
    if (which.q) r.q = q_norm(u, tolerance).value;
  }
  return r;
}

namespace {

// <lambda(x) h, h> = sum_z h(x^-1 z) conj(h(z)).
std::vector<Complex> coefficient(const FiniteGroup& g, const std::vector<Complex>& h) {
  const int n = g.order();
  std::vector<Complex> u(n, 0.0);
  for (int x = 0; x < n; ++x) {
    const int xi = g.inv(x);
    for (int z = 0; z < n; ++z) u[x] += h[g.mul(xi, z)] * std::conj(h[z]);
  }
  return u;
}

std::vector<Complex> random_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<Complex> h(n);
  for (auto& c : h) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = Complex(re, im);
  }
  return h;
}

}  // namespace

Multiplier random_multiplier(const GroupPtr& group, Rng& rng, bool complex) {
  std::normal_distribution<double> normal;
  std::vector<Complex> v(group->order());
  for (auto& c : v) {
    const double re = normal(rng);
    const double im = complex ? normal(rng) : 0.0;
    c = Complex(re, im);
  }
  return Multiplier(group, std::move(v), complex ? "random-complex" : "random-real");
}

Multiplier random_positive_definite(const GroupPtr& group, Rng& rng) {
  const int n = group->order();
  std::uniform_int_distribution<int> terms(1, 3);
  std::vector<Complex> u(n, 0.0);
  const int k = terms(rng);
  for (int t = 0; t < k; ++t) {
    const auto c = coefficient(*group, random_vector(n, rng));
    for (int x = 0; x < n; ++x) u[x] += c[x];
  }
  return Multiplier(group, std::move(u), "random-positive-definite");
}

Multiplier random_unit_positive_definite(const GroupPtr& group, Rng& rng) {
  const int n = group->order();
  const auto subs = all_subgroups(group);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(subs.size()) - 1);
  std::vector<Complex> u(n, 0.0);
  const int terms = 3;
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = unit(rng) + 1e-3);
  for (int t = 0; t < terms; ++t) {
    std::vector<double> part(n, 0.0);
    if (t % 2 == 0) {
      for (int x : subs[pick(rng)].elements) part[x] = 1.0;
    } else {
      const auto c = coefficient(*group, random_vector(n, rng));
      const double e = c[FiniteGroup::kIdentity].real();
      for (int x = 0; x < n; ++x) part[x] = std::min(1.0, std::norm(c[x]) / (e * e));
    }
    for (int x = 0; x < n; ++x) u[x] += w[t] / total * part[x];
  }
  u[FiniteGroup::kIdentity] = 1.0;
  return Multiplier(group, std::move(u), "random-unit-positive-definite");
}

Multiplier random_probability(const GroupPtr& group, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(group->order());
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  std::vector<Complex> v(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) v[k] = w[k] / total;
  return Multiplier(group, std::move(v), "random-probability");
}

}  // namespace hsm
