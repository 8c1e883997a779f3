#include "hsm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hsm/sdp.hpp"

namespace hsm {

namespace {

void require_group(const Multiplier& u, const GroupPtr& g, const char* what) {
  if (!u.on_group() || u.group() != g) {
    throw ValidationError(std::string(what) + ": multiplier does not live on the expected group");
  }
}

std::string fmt(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

Multiplier derived(const Multiplier& from, GroupPtr carrier, std::vector<Complex> values, const std::string& step) {
  Multiplier out(std::move(carrier), std::move(values), from.provenance().front());
  for (std::size_t k = 1; k < from.provenance().size(); ++k) out = out.with_step(from.provenance()[k]);
  return out.with_step(step);
}

// sum over terms (h, weight) of weight * u(h) / mass, grouped by h so that a
// single target value comes back exactly
Complex weighted_average(const Multiplier& u, const std::vector<std::pair<int, double>>& terms, double mass) {
  std::map<int, double> weight;
  for (const auto& [h, w] : terms) weight[h] += w;
  Complex out = 0.0;
  for (const auto& [h, w] : weight) out += (w / mass) * u[h];
  return out;
}

}  // namespace

Multiplier restrict_to(const Multiplier& u, const Subgroup& h) {
  require_group(u, h.parent, "restrict");
  std::vector<Complex> v(h.order());
  for (int k = 0; k < h.order(); ++k) v[k] = u[h.to_parent(k)];
  return derived(u, h.as_group, std::move(v), "restrict(order " + std::to_string(h.order()) + ")");
}

Multiplier extend_by_zero(const Multiplier& u, const Subgroup& h) {
  require_group(u, h.as_group, "extend_by_zero");
  std::vector<Complex> v(h.parent->order(), 0.0);
  for (int k = 0; k < h.order(); ++k) v[h.to_parent(k)] = u[k];
  return derived(u, h.parent, std::move(v), "extend_by_zero");
}

Multiplier product_multiplier(const Multiplier& u, const Multiplier& v, const ProductGroup& p) {
  require_group(u, p.left, "product_multiplier (left)");
  require_group(v, p.right, "product_multiplier (right)");
  std::vector<Complex> w(p.group->order());
  for (int x = 0; x < p.group->order(); ++x) w[x] = u[p.to_left[x]] * v[p.to_right[x]];
  std::string step = "product-with(";
  for (std::size_t k = 0; k < v.provenance().size(); ++k) step += (k ? " > " : "") + v.provenance()[k];
  return derived(u, p.group, std::move(w), step + ")");
}

Multiplier average_biinvariant(const Multiplier& u, const Subgroup& k) {
  require_group(u, k.parent, "average_biinvariant");
  const auto& g = *k.parent;
  const double w = 1.0 / (static_cast<double>(k.order()) * k.order());
  std::vector<Complex> v(g.order(), 0.0);
  for (int x = 0; x < g.order(); ++x) {
    Complex s = 0.0;
    for (int a : k.elements) {
      const int ax = g.mul(a, x);
      for (int b : k.elements) s += u[g.mul(ax, b)];
    }
    v[x] = s * w;
  }
  return derived(u, k.parent, std::move(v), "average_biinvariant(order " + std::to_string(k.order()) + ")");
}

Multiplier convolve(const Multiplier& h, const Multiplier& u) {
  if (!h.on_group() || !u.on_group() || h.group() != u.group()) {
    throw ValidationError("convolve: both functions must live on the same finite group");
  }
  double total = 0.0;
  for (Complex c : h.values()) {
    if (c.imag() != 0.0 || c.real() < 0.0) throw ValidationError("convolve: h is not a probability density");
    total += c.real();
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("convolve: h sums to " + fmt(total) + ", not 1");
  }
  const auto& g = *u.group();
  std::vector<Complex> v(g.order(), 0.0);
  for (int x = 0; x < g.order(); ++x) {
    for (int y = 0; y < g.order(); ++y) {
      if (h[y] != 0.0) v[x] += h[y] * u[g.mul(g.inv(y), x)];
    }
  }
  return derived(u, u.group(), std::move(v), "convolve");
}

Multiplier lift_from_quotient(const QuotientMap& q, const Multiplier& v) {
  require_group(v, q.target, "lift_from_quotient");
  std::vector<Complex> u(q.source->order());
  for (int x = 0; x < q.source->order(); ++x) u[x] = v[q.projection[x]];
  return derived(v, q.source, std::move(u), "lift_from_quotient");
}

Multiplier push_to_quotient(const QuotientMap& q, const Multiplier& u) {
  require_group(u, q.source, "push_to_quotient");
  for (int x = 0; x < q.source->order(); ++x) {
    const int rep = q.section[q.projection[x]];
    if (u[x] != u[rep]) {
      throw ValidationError("push_to_quotient: u is not constant on the coset of " + q.source->label(rep) +
                            " (differs at " + q.source->label(x) + ")");
    }
  }
  std::vector<Complex> v(q.target->order());
  for (int t = 0; t < q.target->order(); ++t) v[t] = u[q.section[t]];
  return derived(u, q.target, std::move(v), "push_to_quotient");
}

CocycleReport validate_cocycle(const Cocycle& c) {
  CocycleReport r;
  r.properness = "trivially satisfied: every subset of finite data is compact";
  const auto& sp = c.space;
  const auto& g = *sp.group;
  const int n = g.order();
  const int pts = sp.points();
  auto note = [&r](const std::string& s) {
    if (r.violations.size() < 50) r.violations.push_back(s);
    ++r.violation_count;
  };
  bool shapes = static_cast<int>(sp.action.size()) == n && static_cast<int>(c.alpha.size()) == n &&
                static_cast<int>(sp.measure.size()) == pts && c.target != nullptr;
  for (int a = 0; shapes && a < n; ++a) {
    shapes = static_cast<int>(sp.action[a].size()) == pts && static_cast<int>(c.alpha[a].size()) == pts;
    for (int x = 0; shapes && x < pts; ++x) {
      shapes = sp.action[a][x] >= 0 && sp.action[a][x] < pts && c.alpha[a][x] >= 0 &&
               c.alpha[a][x] < c.target->order();
    }
  }
  if (!shapes) {
    note("tables have the wrong shape or out-of-range entries");
    return r;
  }
  r.action_ok = true;
  for (int x = 0; x < pts; ++x) {
    if (sp.action[FiniteGroup::kIdentity][x] != x) {
      r.action_ok = false;
      note("action: e." + sp.point_labels[x] + " != " + sp.point_labels[x]);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int x = 0; x < pts; ++x) {
        if (sp.action[g.mul(a, b)][x] != sp.action[a][sp.action[b][x]]) {
          r.action_ok = false;
          note("action: (" + g.label(a) + " " + g.label(b) + ")." + sp.point_labels[x] + " != " + g.label(a) +
               ".(" + g.label(b) + "." + sp.point_labels[x] + ")");
        }
      }
    }
  }
  r.measure_ok = true;
  double total = 0.0;
  for (int x = 0; x < pts; ++x) {
    if (!(sp.measure[x] >= 0.0)) {
      r.measure_ok = false;
      note("measure: negative weight at " + sp.point_labels[x]);
    }
    total += sp.measure[x];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    r.measure_ok = false;
    note("measure: total mass " + fmt(total) + " != 1");
  }
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < pts; ++x) {
      if (std::abs(sp.measure[sp.action[a][x]] - sp.measure[x]) > 1e-12) {
        r.measure_ok = false;
        note("measure: mu(" + g.label(a) + "." + sp.point_labels[x] + ") != mu(" + sp.point_labels[x] + ")");
      }
    }
  }
  r.identity_ok = true;
  if (r.action_ok) {
    const auto& h = *c.target;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int x = 0; x < pts; ++x) {
          if (sp.measure[x] <= 0.0) continue;
          const int lhs = c.alpha[g.mul(a, b)][x];
          const int rhs = h.mul(c.alpha[a][sp.action[b][x]], c.alpha[b][x]);
          if (lhs != rhs) {
            r.identity_ok = false;
            note("cocycle: alpha(" + g.label(a) + " " + g.label(b) + ", " + sp.point_labels[x] + ") = " +
                 h.label(lhs) + " but alpha(" + g.label(a) + ", " + g.label(b) + "." + sp.point_labels[x] +
                 ") alpha(" + g.label(b) + ", " + sp.point_labels[x] + ") = " + h.label(rhs));
          }
        }
      }
    }
  } else {
    r.identity_ok = false;
  }
  r.valid = r.action_ok && r.measure_ok && r.identity_ok;
  return r;
}

Cocycle coset_cocycle(const Subgroup& h) {
  const auto& g = *h.parent;
  const auto cosets = left_cosets(h);
  const int pts = static_cast<int>(cosets.size());
  std::vector<int> coset_of(g.order());
  for (int c = 0; c < pts; ++c) {
    for (int x : cosets[c]) coset_of[x] = c;
  }
  Cocycle c;
  c.space.group = h.parent;
  c.target = h.as_group;
  c.space.measure.assign(pts, 1.0 / pts);
  for (int p = 0; p < pts; ++p) c.space.point_labels.push_back(g.label(cosets[p].front()) + "H");
  c.space.action.assign(g.order(), std::vector<int>(pts));
  c.alpha.assign(g.order(), std::vector<int>(pts));
  for (int a = 0; a < g.order(); ++a) {
    for (int p = 0; p < pts; ++p) {
      const int rep = cosets[p].front();
      const int img = coset_of[g.mul(a, rep)];
      c.space.action[a][p] = img;
      const int hval = g.mul(g.mul(g.inv(cosets[img].front()), a), rep);
      c.alpha[a][p] = h.from_parent[hval];
    }
  }
  c.description = "coset cocycle on G/H, minimal-representative section";
  return c;
}

Cocycle quotient_cocycle(const QuotientMap& q) {
  const auto& g = *q.source;
  const auto& k = q.kernel;
  const int pts = k.order();
  Cocycle c;
  c.space.group = q.source;
  c.target = q.target;
  c.space.measure.assign(pts, 1.0 / pts);
  for (int p = 0; p < pts; ++p) c.space.point_labels.push_back(g.label(k.to_parent(p)));
  c.space.action.assign(g.order(), std::vector<int>(pts));
  c.alpha.assign(g.order(), std::vector<int>(pts));
  for (int a = 0; a < g.order(); ++a) {
    for (int p = 0; p < pts; ++p) {
      const int conj = g.mul(g.mul(a, k.to_parent(p)), g.inv(a));
      c.space.action[a][p] = k.from_parent[conj];
      c.alpha[a][p] = q.projection[a];
    }
  }
  c.description = "conjugation action on the kernel, alpha = projection";
  return c;
}

Multiplier induce_multiplier(const Multiplier& u, const Cocycle& c) {
  require_group(u, c.target, "induce_multiplier");
  const auto rep = validate_cocycle(c);
  if (!rep.valid) {
    throw ValidationError("induce_multiplier: invalid cocycle: " +
                          (rep.violations.empty() ? std::string("?") : rep.violations.front()));
  }
  const auto& g = *c.space.group;
  double mass = 0.0;
  for (int x = 0; x < c.space.points(); ++x) mass += c.space.measure[x];
  std::vector<Complex> v(g.order(), 0.0);
  for (int a = 0; a < g.order(); ++a) {
    std::vector<std::pair<int, double>> terms;
    for (int x = 0; x < c.space.points(); ++x) terms.emplace_back(c.alpha[a][x], c.space.measure[x]);
    v[a] = weighted_average(u, terms, mass);
  }
  return derived(u, c.space.group, std::move(v), "induce(" + c.description + ")");
}

FolnerResult folner_average(const Multiplier& u, const Cocycle& c, const std::vector<int>& f) {
  require_group(u, c.target, "folner_average");
  const auto rep = validate_cocycle(c);
  if (!rep.valid) throw ValidationError("folner_average: invalid cocycle");
  const int pts = c.space.points();
  std::vector<bool> in_f(pts, false);
  double mf = 0.0;
  for (int x : f) {
    if (x < 0 || x >= pts) throw ValidationError("folner_average: point index out of range");
    in_f[x] = true;
  }
  for (int x = 0; x < pts; ++x) {
    if (in_f[x]) mf += c.space.measure[x];
  }
  if (!(mf > 0.0)) throw ValidationError("folner_average: F has zero measure");
  const auto& g = *c.space.group;
  std::vector<Complex> v(g.order(), 0.0);
  FolnerResult out{u, mf, std::vector<double>(g.order(), 0.0), std::vector<double>(g.order(), 0.0)};
  for (int a = 0; a < g.order(); ++a) {
    double dev = 0.0;
    std::vector<bool> in_gf(pts, false);
    for (int x = 0; x < pts; ++x) {
      if (in_f[x]) in_gf[c.space.action[a][x]] = true;
    }
    double sym = 0.0;
    std::vector<std::pair<int, double>> terms;
    for (int x = 0; x < pts; ++x) {
      if (in_f[x] != in_gf[x]) sym += c.space.measure[x];
      if (in_f[x] && in_f[c.space.action[a][x]]) {
        terms.emplace_back(c.alpha[a][x], c.space.measure[x]);
        dev = std::max(dev, std::abs(u[c.alpha[a][x]] - 1.0));
      }
    }
    v[a] = weighted_average(u, terms, mf);
    out.epsilon[a] = sym / mf;
    out.deviation_bound[a] = out.epsilon[a] / 2.0 + dev;
  }
  out.v = derived(u, c.space.group, std::move(v), "folner_average(|F|=" + std::to_string(f.size()) + ")");
  return out;
}

ProperFunctionSpec make_proper_function_spec(std::vector<Multiplier> u_list, std::vector<double> alphas,
                                             double tolerance) {
  if (u_list.empty()) throw ValidationError("proper function: empty u_list");
  if (u_list.size() != alphas.size()) throw ValidationError("proper function: u_list and alphas differ in length");
  for (std::size_t n = 0; n < alphas.size(); ++n) {
    if (!(alphas[n] > 0.0)) throw ValidationError("proper function: alpha_" + std::to_string(n) + " is not positive");
    if (n > 0 && !(alphas[n] > alphas[n - 1])) {
      throw ValidationError("proper function: alphas are not strictly increasing at index " + std::to_string(n));
    }
  }
  for (std::size_t n = 0; n < u_list.size(); ++n) {
    const auto& u = u_list[n];
    if (!u.same_carrier(u_list.front())) throw ValidationError("proper function: u_n on different carriers");
    for (int k = 0; k < u.size(); ++k) {
      const Complex c = u[k];
      if (std::abs(c.imag()) > tolerance || c.real() < -tolerance || c.real() > 1.0 + tolerance) {
        throw ValidationError("proper function: u_" + std::to_string(n) + " leaves [0, 1] at " + u.label(k));
      }
    }
    const double b2 = b2_norm(u, tolerance).value;
    if (b2 > 1.0 + 10.0 * tolerance) {
      throw ValidationError("proper function: u_" + std::to_string(n) + " has B2 norm " + fmt(b2) + " > 1");
    }
  }
  return ProperFunctionSpec{std::move(u_list), std::move(alphas)};
}

Multiplier proper_function(const ProperFunctionSpec& spec, bool symmetrize) {
  const Multiplier& first = spec.u_list.front();
  std::vector<Complex> psi(first.size(), 0.0);
  for (std::size_t n = 0; n < spec.u_list.size(); ++n) {
    for (int k = 0; k < first.size(); ++k) psi[k] += spec.alphas[n] * (1.0 - spec.u_list[n][k].real());
  }
  std::ostringstream step;
  step << "proper_function(" << spec.u_list.size() << " terms)";
  Multiplier out = first.on_group() ? Multiplier(first.group(), psi, step.str())
                                    : Multiplier(first.window(), psi, step.str());
  if (!symmetrize) return out;
  const Multiplier rev = reflect(out);
  std::vector<Complex> sym(out.size());
  for (int k = 0; k < out.size(); ++k) sym[k] = out[k] + rev[k];
  return (first.on_group() ? Multiplier(first.group(), std::move(sym), step.str())
                           : Multiplier(first.window(), std::move(sym), step.str()))
      .with_step("symmetrize");
}

Multiplier exp_multiplier(const Multiplier& psi, double t) {
  if (!(t > 0.0)) throw ValidationError("exp_multiplier: t must be positive");
  std::vector<Complex> v(psi.size());
  for (int k = 0; k < psi.size(); ++k) v[k] = std::exp(-t * psi[k]);
  Multiplier out = psi.on_group() ? Multiplier(psi.group(), std::move(v), psi.provenance().front())
                                  : Multiplier(psi.window(), std::move(v), psi.provenance().front());
  for (std::size_t k = 1; k < psi.provenance().size(); ++k) out = out.with_step(psi.provenance()[k]);
  return out.with_step("exp(-t psi), t=" + fmt(t));
}

ProperFunctionSpec random_proper_function_spec(const GroupPtr& group, Rng& rng, int terms) {
  std::uniform_real_distribution<double> step(0.2, 2.0);
  std::vector<Multiplier> us;
  std::vector<double> alphas;
  double a = 0.0;
  for (int n = 0; n < terms; ++n) {
    us.push_back(random_unit_positive_definite(group, rng));
    a += step(rng);
    alphas.push_back(a);
  }
  return ProperFunctionSpec{std::move(us), std::move(alphas)};
}

CutoffResult cutoff_norm(const WindowPtr& window, int inner_radius, int outer_radius, double tolerance) {
  if (inner_radius < 0 || inner_radius > outer_radius) {
    throw ValidationError("cutoff_norm: need 0 <= inner radius <= outer radius");
  }
  if (window->radius() >= 0 && outer_radius > window->radius()) {
    throw ValidationError("cutoff_norm: outer radius exceeds the window radius");
  }
  if (!(tolerance > 0.0) || tolerance > 1e-2) throw ValidationError("cutoff_norm: tolerance must lie in (0, 1e-2]");
  const auto& amb = window->ambient();
  const auto& diffs = window->difference_set();
  const int nd = static_cast<int>(diffs.size());
  const int n = window->size();
  // each difference is pinned to 1, pinned to 0, or free
  std::vector<int> var_of(nd, -1);
  std::vector<double> fixed(nd, 0.0);
  sdp::HermitianBuilder b;
  const int blk = b.add_block(2 * n, false);
  const int t = b.add_variable(-1.0);
  for (int i = 0; i < 2 * n; ++i) b.add_coefficient(t, blk, i, i, 1.0);
  int free_count = 0;
  for (int k = 0; k < nd; ++k) {
    const int len = amb.length(diffs[k]);
    if (len <= inner_radius) {
      fixed[k] = 1.0;
    } else if (len <= outer_radius) {
      var_of[k] = b.add_variable(0.0);
      ++free_count;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = window->difference_index(i, j);
      if (var_of[k] >= 0) {
        b.add_coefficient(var_of[k], blk, i, n + j, 1.0);
      } else if (fixed[k] != 0.0) {
        b.add_constant(blk, i, n + j, fixed[k]);
      }
    }
  }
  for (int base : {0, n}) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) b.add_coefficient(b.add_variable(0.0), blk, base + i, base + j, 1.0);
    }
  }
  sdp::Options opt;
  opt.gap_tolerance = std::clamp(tolerance * 1e-2, 1e-12, 1e-8);
  opt.feasibility_tolerance = opt.gap_tolerance;
  const auto sol = sdp::solve(b.build(), opt);
  std::vector<Complex> u(nd);
  for (int k = 0; k < nd; ++k) u[k] = var_of[k] >= 0 ? sol.y(var_of[k]) : fixed[k];
  std::ostringstream origin;
  origin << "cutoff(inner=" << inner_radius << ", outer=" << outer_radius << ")";
  CutoffResult r{sol.y(t), -sol.primal_objective, tolerance, sol.iterations, free_count,
                 Multiplier(window, std::move(u), origin.str())};
  if (r.value - r.lower_bound > std::max(10.0 * tolerance, 10.0 * tolerance * r.value)) {
    std::ostringstream msg;
    msg << "cutoff_norm: bounds [" << r.lower_bound << ", " << r.value << "] not within tolerance after "
        << sol.iterations << " iterations (" << sdp::to_string(sol.status) << ")";
    throw ConvergenceError(msg.str());
  }
  return r;
}

}  // namespace hsm
