#include "hsm/vn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hsm/transforms.hpp"

namespace hsm::vn {

TracedAlgebra::TracedAlgebra(std::vector<int> sizes, std::vector<double> weights)
    : sizes_(std::move(sizes)), weights_(std::move(weights)) {
  if (sizes_.empty()) throw ValidationError("traced algebra: no blocks");
  if (sizes_.size() != weights_.size()) throw ValidationError("traced algebra: sizes and weights differ in length");
  double total = 0.0;
  int size = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] <= 0) throw ValidationError("traced algebra: block sizes must be positive");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw ValidationError("traced algebra: trace is not faithful (weight " + std::to_string(i) + " <= 0)");
    }
    total += weights_[i] * sizes_[i];
    size += sizes_[i];
  }
  if (size > kMaxAlgebraSize) throw ValidationError("traced algebra: total size exceeds " + std::to_string(kMaxAlgebraSize));
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("traced algebra: tau(1) = " + std::to_string(total) + ", expected 1");
  }
}

TracedAlgebra TracedAlgebra::normalized(std::vector<int> sizes, const std::vector<double>& raw_weights) {
  if (sizes.size() != raw_weights.size()) throw ValidationError("traced algebra: sizes and weights differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(raw_weights[i] > 0.0)) throw ValidationError("traced algebra: trace is not faithful");
    total += raw_weights[i] * sizes[i];
  }
  std::vector<double> w(raw_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = raw_weights[i] / total;
  return TracedAlgebra(std::move(sizes), std::move(w));
}

int TracedAlgebra::dimension() const {
  int d = 0;
  for (int n : sizes_) d += n * n;
  return d;
}

Element TracedAlgebra::zero() const {
  Element x;
  for (int n : sizes_) x.push_back(ComplexMatrix::Zero(n, n));
  return x;
}

Element TracedAlgebra::identity() const {
  Element x;
  for (int n : sizes_) x.push_back(ComplexMatrix::Identity(n, n));
  return x;
}

Element TracedAlgebra::random(Rng& rng) const {
  std::normal_distribution<double> gauss;
  Element x = zero();
  for (auto& b : x) {
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = Complex(gauss(rng), gauss(rng));
  }
  return x;
}

std::vector<Element> TracedAlgebra::orthonormal_basis() const {
  std::vector<Element> basis;
  for (int b = 0; b < blocks(); ++b) {
    const double s = 1.0 / std::sqrt(weights_[b]);
    for (int r = 0; r < sizes_[b]; ++r) {
      for (int c = 0; c < sizes_[b]; ++c) {
        Element e = zero();
        e[b](r, c) = s;
        basis.push_back(std::move(e));
      }
    }
  }
  return basis;
}

Complex TracedAlgebra::trace(const Element& x) const {
  Complex t = 0.0;
  for (int b = 0; b < blocks(); ++b) t += weights_[b] * x[b].trace();
  return t;
}

bool TracedAlgebra::contains(const Element& x) const {
  if (static_cast<int>(x.size()) != blocks()) return false;
  for (int b = 0; b < blocks(); ++b) {
    if (x[b].rows() != sizes_[b] || x[b].cols() != sizes_[b]) return false;
  }
  return true;
}

namespace {

void require_shape(const Element& a, const Element& b, const char* what) {
  bool ok = a.size() == b.size();
  for (std::size_t k = 0; ok && k < a.size(); ++k) {
    ok = a[k].rows() == b[k].rows() && a[k].cols() == b[k].cols();
  }
  if (!ok) throw ValidationError(std::string(what) + ": elements have different block structure");
}

// sum_b mu_b sum conj(y_b) x_b, i.e. tau(y* x) without forming the product.
Complex pairing(const TracedAlgebra& m, const Element& x, const Element& y) {
  Complex s = 0.0;
  for (int b = 0; b < m.blocks(); ++b) s += m.weights()[b] * y[b].cwiseProduct(x[b].conjugate()).sum();
  return std::conj(s);
}

}  // namespace

Element add(const Element& a, const Element& b) {
  require_shape(a, b, "add");
  Element c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b[k];
  return c;
}

Element sub(const Element& a, const Element& b) {
  require_shape(a, b, "sub");
  Element c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b[k];
  return c;
}

Element mul(const Element& a, const Element& b) {
  require_shape(a, b, "mul");
  Element c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] * b[k];
  return c;
}

Element scale(Complex s, const Element& a) {
  Element c = a;
  for (auto& m : c) m *= s;
  return c;
}

Element adjoint(const Element& a) {
  Element c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k].adjoint();
  return c;
}

double operator_norm(const Element& a) {
  double n = 0.0;
  for (const auto& m : a) n = std::max(n, hsm::operator_norm(m));
  return n;
}

double max_abs(const Element& a) {
  double n = 0.0;
  for (const auto& m : a) n = std::max(n, hsm::max_abs(m));
  return n;
}

Complex L2Space::inner(const Element& x, const Element& y) const {
  return trace_scale * pairing(*algebra, x, y);
}

double L2Space::l2_norm(const Element& x) const { return std::sqrt(std::max(0.0, inner(x, x).real())); }

ComplexVector L2Space::coordinates(const Element& x) const {
  ComplexVector c(dimension());
  for (int i = 0; i < dimension(); ++i) c(i) = inner(x, basis[i]);
  return c;
}

Element L2Space::from_coordinates(const ComplexVector& c) const {
  if (c.size() != dimension()) throw ValidationError("from_coordinates: wrong number of coordinates");
  Element x = algebra->zero();
  for (int i = 0; i < dimension(); ++i) {
    if (c(i) == Complex(0.0)) continue;
    for (std::size_t b = 0; b < x.size(); ++b) x[b] += c(i) * basis[i][b];
  }
  return x;
}

Element L2Space::random(Rng& rng) const {
  std::normal_distribution<double> gauss;
  ComplexVector c(dimension());
  for (int i = 0; i < dimension(); ++i) c(i) = Complex(gauss(rng), gauss(rng));
  return from_coordinates(c);
}

L2Space full_space(const AlgebraPtr& algebra, std::string name) {
  return L2Space{algebra, algebra->orthonormal_basis(), 1.0, algebra->identity(), std::move(name)};
}

bool same_space(const L2Space& a, const L2Space& b) {
  if (a.algebra != b.algebra && !(a.algebra->sizes() == b.algebra->sizes() &&
                                  a.algebra->weights() == b.algebra->weights())) {
    return false;
  }
  if (a.trace_scale != b.trace_scale || a.dimension() != b.dimension()) return false;
  for (int i = 0; i < a.dimension(); ++i) {
    for (std::size_t k = 0; k < a.basis[i].size(); ++k) {
      if (a.basis[i][k] != b.basis[i][k]) return false;
    }
  }
  return true;
}

AlgebraMap identity_map(const L2Space& space) {
  AlgebraMap t;
  t.domain = space;
  t.codomain = space;
  t.apply = [](const Element& x) { return x; };
  t.kind = "identity";
  return t;
}

AlgebraMap conjugation(const L2Space& space, const Element& u) {
  if (!space.algebra->contains(u)) throw ValidationError("conjugation: element does not belong to the algebra");
  const Element uu = mul(adjoint(u), u);
  if (max_abs(sub(uu, space.algebra->identity())) > 1e-10 ||
      max_abs(sub(mul(u, adjoint(u)), space.algebra->identity())) > 1e-10) {
    throw ValidationError("conjugation: element is not unitary within 1e-10");
  }
  AlgebraMap t;
  t.domain = space;
  t.codomain = space;
  const Element us = adjoint(u);
  t.apply = [u, us](const Element& x) { return mul(mul(u, x), us); };
  t.kind = "conjugation";
  return t;
}

GroupAlgebra group_algebra(const GroupPtr& group) {
  const int n = group->order();
  if (n > kMaxGroupAlgebraOrder) {
    throw ValidationError("group algebra: order " + std::to_string(n) + " exceeds " +
                          std::to_string(kMaxGroupAlgebraOrder));
  }
  auto algebra = std::make_shared<const TracedAlgebra>(std::vector<int>{n}, std::vector<double>{1.0 / n});
  GroupAlgebra a;
  a.group = group;
  for (int g = 0; g < n; ++g) {
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) l(group->mul(g, k), k) = 1.0;
    a.lambda.push_back(Element{std::move(l)});
  }
  a.space = L2Space{algebra, a.lambda, 1.0, algebra->identity(), "L(G)"};
  return a;
}

int center_dimension(const GroupAlgebra& a) {
  const int n = a.group->order();
  ComplexMatrix system(static_cast<Eigen::Index>(n) * n, n);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const Element c = sub(mul(a.lambda[g], a.lambda[h]), mul(a.lambda[h], a.lambda[g]));
      system.block(static_cast<Eigen::Index>(g) * n, h, n, 1) = a.space.coordinates(c);
    }
  }
  Eigen::FullPivLU<ComplexMatrix> lu(system);
  lu.setThreshold(1e-10);
  return n - static_cast<int>(lu.rank());
}

namespace {

// Coefficients c_g = tau(lambda(g)* x) = (1/n) sum_k x(gk, k).
std::vector<Complex> fourier_coefficients(const FiniteGroup& g, const Element& x) {
  const int n = g.order();
  if (x.size() != 1 || x[0].rows() != n || x[0].cols() != n) {
    throw ValidationError("group algebra: element has the wrong shape");
  }
  std::vector<Complex> c(n, 0.0);
  for (int a = 0; a < n; ++a) {
    Complex s = 0.0;
    for (int k = 0; k < n; ++k) s += x[0](g.mul(a, k), k);
    c[a] = s / static_cast<double>(n);
  }
  return c;
}

Element synthesize(const FiniteGroup& g, const std::vector<Complex>& c) {
  const int n = g.order();
  Element x{ComplexMatrix::Zero(n, n)};
  for (int a = 0; a < n; ++a) {
    if (c[a] == Complex(0.0)) continue;
    for (int k = 0; k < n; ++k) x[0](g.mul(a, k), k) += c[a];
  }
  return x;
}

}  // namespace

AlgebraMap fourier_multiplier_op(const GroupAlgebra& a, const Multiplier& u) {
  if (!u.on_group() || u.group()->order() != a.group->order() ||
      u.group()->cayley_table() != a.group->cayley_table()) {
    throw ValidationError("fourier multiplier: symbol does not live on the algebra's group");
  }
  AlgebraMap t;
  t.domain = a.space;
  t.codomain = a.space;
  const GroupPtr group = a.group;
  const std::vector<Complex> values = u.values();
  t.apply = [group, values](const Element& x) {
    auto c = fourier_coefficients(*group, x);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= values[k];
    return synthesize(*group, c);
  };
  t.kind = "fourier_multiplier";
  t.symbol = u;
  return t;
}

Multiplier recover_symbol(const GroupAlgebra& a, const AlgebraMap& t) {
  std::vector<Complex> v(a.group->order());
  for (int g = 0; g < a.group->order(); ++g) {
    // tau evaluated as the vector state at delta_e, which is exact here.
    const Element y = mul(adjoint(a.lambda[g]), t(a.lambda[g]));
    v[g] = y[0](FiniteGroup::kIdentity, FiniteGroup::kIdentity);
  }
  return Multiplier(a.group, std::move(v), "recovered from " + t.kind);
}

L2Extension l2_extension(const AlgebraMap& t, double tolerance) {
  L2Extension e;
  const int n = t.domain.dimension();
  const int m = t.codomain.dimension();
  e.matrix.resize(m, n);
  for (int j = 0; j < n; ++j) e.matrix.col(j) = t.codomain.coordinates(t(t.domain.basis[j]));
  e.operator_norm = hsm::operator_norm(e.matrix);
  if (same_space(t.domain, t.codomain)) {
    e.symmetry_defect = hsm::max_abs(e.matrix - e.matrix.adjoint());
    e.symmetric = e.symmetry_defect <= tolerance * std::max(1.0, hsm::max_abs(e.matrix));
  } else {
    e.symmetry_defect = std::numeric_limits<double>::infinity();
  }
  return e;
}

AlgebraMap conditional_expectation(const GroupAlgebra& a, const Subgroup& h) {
  if (h.parent->cayley_table() != a.group->cayley_table()) {
    throw ValidationError("conditional expectation: subgroup of a different group");
  }
  AlgebraMap t;
  t.domain = a.space;
  t.codomain = a.space;
  const GroupPtr group = a.group;
  const std::vector<int> from_parent = h.from_parent;
  t.apply = [group, from_parent](const Element& x) {
    auto c = fourier_coefficients(*group, x);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (from_parent[k] < 0) c[k] = 0.0;
    }
    return synthesize(*group, c);
  };
  t.kind = "conditional_expectation";
  return t;
}

namespace {

Element project(const L2Space& s, const Element& x) { return s.from_coordinates(s.coordinates(x)); }

}  // namespace

Compression compress(const AlgebraMap& t, const Element& p) {
  const L2Space& dom = t.domain;
  if (!same_space(dom, t.codomain)) throw ValidationError("compress: map must act on a single space");
  if (!dom.algebra->contains(p)) throw ValidationError("compress: p does not belong to the algebra");
  const double mag = std::max(1.0, max_abs(p));
  if (max_abs(sub(p, adjoint(p))) > 1e-10 * mag || max_abs(sub(mul(p, p), p)) > 1e-10 * mag) {
    throw ValidationError("compress: p is not a projection within 1e-10");
  }
  if (max_abs(sub(project(dom, p), p)) > 1e-10 * mag) {
    throw ValidationError("compress: p is not in the domain of the map");
  }
  const double tp = dom.trace(p).real();
  if (!(tp > 1e-12)) throw ValidationError("compress: p = 0");

  L2Space corner;
  corner.algebra = dom.algebra;
  corner.trace_scale = dom.trace_scale / tp;
  corner.unit = p;
  corner.name = "pMp";
  // Modified Gram-Schmidt with one reorthogonalization pass.
  for (const Element& b : dom.basis) {
    Element v = mul(mul(p, b), p);
    const double start = corner.l2_norm(v);
    if (start <= 1e-12) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Element& q : corner.basis) v = sub(v, scale(corner.inner(v, q), q));
    }
    const double norm = corner.l2_norm(v);
    if (norm <= 1e-9 * start) continue;
    corner.basis.push_back(scale(1.0 / norm, v));
  }

  Compression out;
  out.trace_of_p = tp;
  const double v = 1.0 / std::sqrt(tp);
  for (const Element& x : corner.basis) {
    for (const Element& y : corner.basis) {
      const Complex lhs = dom.inner(scale(v, x), scale(v, y));
      out.isometry_defect = std::max(out.isometry_defect, std::abs(lhs - corner.inner(x, y)));
    }
  }
  AlgebraMap s;
  s.domain = corner;
  s.codomain = corner;
  const auto inner_map = t.apply;
  s.apply = [inner_map, p](const Element& x) { return mul(mul(p, inner_map(x)), p); };
  s.kind = "compression";
  s.parts.push_back(std::make_shared<const AlgebraMap>(t));
  out.map = std::move(s);
  return out;
}

namespace {

void require_unital(const L2Space& s, const char* what) {
  if (s.trace_scale != 1.0 || max_abs(sub(s.unit, s.algebra->identity())) != 0.0) {
    throw ValidationError(std::string(what) + ": summands must be unital with their own trace state");
  }
}

}  // namespace

Element embed(const DirectSum& sum, int k, const Element& x) {
  Element z = sum.space.algebra->zero();
  const int off = sum.block_offset[k];
  if (x.size() != sum.summands[k].algebra->sizes().size()) throw ValidationError("embed: wrong block count");
  for (std::size_t b = 0; b < x.size(); ++b) z[off + b] = x[b];
  return z;
}

DirectSum direct_sum(const std::vector<L2Space>& summands, const std::vector<double>& alphas) {
  if (summands.empty()) throw ValidationError("direct sum: no summands");
  if (summands.size() != alphas.size()) throw ValidationError("direct sum: weight count mismatch");
  double total = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0)) throw ValidationError("direct sum: weights must be positive");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("direct sum: weights must sum to 1");

  DirectSum d;
  d.summands = summands;
  d.alphas = alphas;
  std::vector<int> sizes;
  std::vector<double> weights;
  std::string name;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    require_unital(summands[k], "direct sum");
    d.block_offset.push_back(static_cast<int>(sizes.size()));
    const auto& m = *summands[k].algebra;
    for (int b = 0; b < m.blocks(); ++b) {
      sizes.push_back(m.sizes()[b]);
      weights.push_back(alphas[k] * m.weights()[b]);
    }
    name += (k ? " + " : "") + summands[k].name;
  }
  d.space.algebra = std::make_shared<const TracedAlgebra>(TracedAlgebra::normalized(sizes, weights));
  d.space.trace_scale = 1.0;
  d.space.unit = d.space.algebra->identity();
  d.space.name = name;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    for (const Element& b : summands[k].basis) {
      d.space.basis.push_back(scale(1.0 / std::sqrt(alphas[k]), embed(d, static_cast<int>(k), b)));
    }
  }

  // Matrix of V in the orthonormal bases, computed from the definition.
  const int n = d.space.dimension();
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const Element& z = d.space.basis[j];
    int row = 0;
    for (std::size_t k = 0; k < summands.size(); ++k) {
      Element x;
      for (int b = 0; b < summands[k].algebra->blocks(); ++b) x.push_back(z[d.block_offset[k] + b]);
      v.block(row, j, summands[k].dimension(), 1) = std::sqrt(alphas[k]) * summands[k].coordinates(x);
      row += summands[k].dimension();
    }
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  d.unitarity_defect = std::max(hsm::max_abs(v.adjoint() * v - id), hsm::max_abs(v * v.adjoint() - id));
  return d;
}

AlgebraMap sum_map(const DirectSum& sum, const std::vector<AlgebraMap>& maps) {
  if (maps.size() != sum.summands.size()) throw ValidationError("sum map: one map per summand required");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (!same_space(maps[k].domain, sum.summands[k]) || !same_space(maps[k].codomain, sum.summands[k])) {
      throw ValidationError("sum map: map " + std::to_string(k) + " does not act on its summand");
    }
  }
  AlgebraMap t;
  t.domain = sum.space;
  t.codomain = sum.space;
  std::vector<std::function<Element(const Element&)>> fs;
  std::vector<int> counts;
  for (const auto& m : maps) {
    fs.push_back(m.apply);
    counts.push_back(m.domain.algebra->blocks());
    t.parts.push_back(std::make_shared<const AlgebraMap>(m));
  }
  const std::vector<int> offsets = sum.block_offset;
  t.apply = [fs, counts, offsets](const Element& z) {
    Element out = z;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      Element x(z.begin() + offsets[k], z.begin() + offsets[k] + counts[k]);
      Element y = fs[k](x);
      for (int b = 0; b < counts[k]; ++b) out[offsets[k] + b] = std::move(y[b]);
    }
    return out;
  };
  t.kind = "direct_sum";
  return t;
}

namespace {

ComplexMatrix kron_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return k;
}

Element kron_elements(const Element& x, const Element& y) {
  Element z;
  for (const auto& a : x) {
    for (const auto& b : y) z.push_back(kron_matrix(a, b));
  }
  return z;
}

}  // namespace

TensorProduct tensor(const L2Space& left, const L2Space& right) {
  TensorProduct t{L2Space{}, left, right};
  std::vector<int> sizes;
  std::vector<double> weights;
  const auto& a = *left.algebra;
  const auto& b = *right.algebra;
  for (int i = 0; i < a.blocks(); ++i) {
    for (int j = 0; j < b.blocks(); ++j) {
      sizes.push_back(a.sizes()[i] * b.sizes()[j]);
      weights.push_back(a.weights()[i] * b.weights()[j]);
    }
  }
  t.space.algebra = std::make_shared<const TracedAlgebra>(TracedAlgebra::normalized(sizes, weights));
  t.space.trace_scale = left.trace_scale * right.trace_scale;
  t.space.unit = kron_elements(left.unit, right.unit);
  t.space.name = left.name + " (x) " + right.name;
  for (const Element& e : left.basis) {
    for (const Element& f : right.basis) t.space.basis.push_back(kron_elements(e, f));
  }
  return t;
}

Element kron(const TensorProduct& t, const Element& x, const Element& y) {
  if (!t.left.algebra->contains(x) || !t.right.algebra->contains(y)) {
    throw ValidationError("kron: factors do not belong to the tensor factors");
  }
  return kron_elements(x, y);
}

AlgebraMap tensor_map(const TensorProduct& t, const AlgebraMap& left, const AlgebraMap& right) {
  if (!same_space(left.domain, t.left) || !same_space(left.codomain, t.left) || !same_space(right.domain, t.right) ||
      !same_space(right.codomain, t.right)) {
    throw ValidationError("tensor map: maps must act on the tensor factors");
  }
  std::vector<Element> images;
  for (const Element& e : t.left.basis) {
    const Element te = left(e);
    for (const Element& f : t.right.basis) images.push_back(kron_elements(te, right(f)));
  }
  AlgebraMap m;
  m.domain = t.space;
  m.codomain = t.space;
  const L2Space space = t.space;
  m.apply = [space, images](const Element& x) {
    const ComplexVector c = space.coordinates(x);
    Element out = space.algebra->zero();
    for (int i = 0; i < c.size(); ++i) {
      if (c(i) == Complex(0.0)) continue;
      for (std::size_t b = 0; b < out.size(); ++b) out[b] += c(i) * images[i][b];
    }
    return out;
  };
  m.kind = "tensor";
  m.parts.push_back(std::make_shared<const AlgebraMap>(left));
  m.parts.push_back(std::make_shared<const AlgebraMap>(right));
  return m;
}

TraceChange trace_change(const TracedAlgebra& m, const std::vector<double>& new_weights, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("trace change: epsilon must be positive");
  const TracedAlgebra other(m.sizes(), new_weights);
  TraceChange out;
  out.epsilon = epsilon;
  out.h = m.zero();
  const double base = std::log1p(epsilon);
  std::map<int, std::vector<int>> by_slice;
  for (int b = 0; b < m.blocks(); ++b) {
    const double h = new_weights[b] / m.weights()[b];
    out.h_values.push_back(h);
    out.h[b] = ComplexMatrix::Identity(m.sizes()[b], m.sizes()[b]) * h;
    int n = static_cast<int>(std::floor(std::log(h) / base));
    while (std::pow(1.0 + epsilon, n) > h) --n;
    while (std::pow(1.0 + epsilon, n + 1) <= h) ++n;
    out.slice_index.push_back(n);
    by_slice[n].push_back(b);
  }
  for (auto& [n, blocks] : by_slice) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int b : blocks) {
      lo = std::min(lo, out.h_values[b]);
      hi = std::max(hi, out.h_values[b]);
    }
    out.slices.push_back(blocks);
    out.slice_condition.push_back(std::sqrt(hi) * (1.0 / std::sqrt(lo)));
  }

  Element root = out.h;
  for (auto& b : root) b = b.cwiseSqrt();
  const auto basis = m.orthonormal_basis();
  for (const Element& x : basis) {
    out.radon_nikodym_defect = std::max(out.radon_nikodym_defect, std::abs(other.trace(x) - m.trace(mul(out.h, x))));
  }
  for (const Element& x : basis) {
    const Element ux = mul(root, x);
    for (const Element& y : basis) {
      const Complex lhs = m.trace(mul(adjoint(mul(root, y)), ux));
      out.isometry_defect = std::max(out.isometry_defect, std::abs(lhs - other.trace(mul(adjoint(y), x))));
    }
  }
  return out;
}

double fell_absorption_defect(const GroupAlgebra& a) {
  const int n = a.group->order();
  ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * n, n);
  for (int g = 0; g < n; ++g) v(static_cast<Eigen::Index>(g) * n + g, g) = 1.0;
  double defect = 0.0;
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const ComplexMatrix lhs = v.adjoint() * kron_matrix(a.lambda[g][0], a.lambda[h][0]) * v;
      const Complex c = a.space.trace(mul(adjoint(a.lambda[g]), a.lambda[h]));
      defect = std::max(defect, hsm::max_abs(lhs - c * a.lambda[g][0]));
    }
  }
  return defect;
}

double cb_norm(const AlgebraMap& t, double tolerance) {
  if (t.kind == "fourier_multiplier" && t.symbol) return b2_norm(*t.symbol, tolerance).value;
  if (t.kind == "tensor" && t.parts.size() == 2 && t.parts[0]->symbol && t.parts[1]->symbol &&
      t.parts[0]->kind == "fourier_multiplier" && t.parts[1]->kind == "fourier_multiplier") {
    const Multiplier& u = *t.parts[0]->symbol;
    const Multiplier& v = *t.parts[1]->symbol;
    const ProductGroup p = direct_product(u.group(), v.group());
    return b2_norm(product_multiplier(u, v, p), tolerance).value;
  }
  if (t.kind == "direct_sum") {
    double best = 0.0;
    for (const auto& part : t.parts) best = std::max(best, cb_norm(*part, tolerance));
    return best;
  }
  throw UnsupportedError("cb norm is only available for Fourier multipliers, their tensor products and direct sums (got " +
                         t.kind + ")");
}

double operator_norm_lower_bound(const AlgebraMap& t) {
  double best = operator_norm(t(t.domain.unit)) / std::max(operator_norm(t.domain.unit), 1e-300);
  for (const Element& e : t.domain.basis) {
    const double n = operator_norm(e);
    if (n > 0.0) best = std::max(best, operator_norm(t(e)) / n);
  }
  return best;
}

double linearity_defect(const AlgebraMap& t, Rng& rng, int samples) {
  std::normal_distribution<double> gauss;
  double defect = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Element x = t.domain.random(rng);
    const Element y = t.domain.random(rng);
    const Complex a(gauss(rng), gauss(rng));
    const Complex b(gauss(rng), gauss(rng));
    const Element lhs = t(add(scale(a, x), scale(b, y)));
    const Element rhs = add(scale(a, t(x)), scale(b, t(y)));
    defect = std::max(defect, max_abs(sub(lhs, rhs)));
  }
  return defect;
}

}  // namespace hsm::vn
