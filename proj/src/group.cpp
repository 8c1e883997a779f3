#include "hsm/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hsm {

namespace {

std::string permutation_label(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  std::string out;
  for (int start = 0; start < n; ++start) {
    if (seen[start] || perm[start] == start) {
      continue;
    }
    out += '(';
    int k = start;
    while (!seen[k]) {
      seen[k] = true;
      out += std::to_string(k);
      k = perm[k];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                    std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n < 1 || n > kMaxOrder) {
    throw ValidationError("group order " + std::to_string(n) + " outside supported range 1.." +
                          std::to_string(kMaxOrder));
  }
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) {
      throw ValidationError("Cayley table row " + std::to_string(a) + " has " +
                            std::to_string(table[a].size()) + " entries, expected " +
                            std::to_string(n));
    }
    for (int v : table[a]) {
      if (v < 0 || v >= n) {
        throw ValidationError("Cayley table entry " + std::to_string(v) + " out of range in row " +
                              std::to_string(a));
      }
    }
  }
  if (labels.empty()) {
    labels.resize(n);
    for (int a = 0; a < n; ++a) labels[a] = std::to_string(a);
  }
  if (static_cast<int>(labels.size()) != n) {
    throw ValidationError("expected " + std::to_string(n) + " labels, got " +
                          std::to_string(labels.size()));
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (identity < 0) {
    throw ValidationError("Cayley table has no identity element");
  }
  if (identity != 0) {
    // swap indices 0 and identity
    auto swap_index = [identity](int v) { return v == 0 ? identity : (v == identity ? 0 : v); };
    std::vector<std::vector<int>> swapped(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        swapped[swap_index(a)][swap_index(b)] = swap_index(table[a][b]);
      }
    }
    table = std::move(swapped);
    std::swap(labels[0], labels[identity]);
  }

  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    std::copy(table[a].begin(), table[a].end(), g.table_.begin() + static_cast<std::ptrdiff_t>(a) * n);
  }

  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] < 0) {
      throw ValidationError("element '" + labels[a] + "' has no inverse");
    }
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          throw ValidationError("table is not associative: (" + labels[a] + "*" + labels[b] + ")*" +
                                labels[c] + " != " + labels[a] + "*(" + labels[b] + "*" +
                                labels[c] + ")");
        }
      }
    }
  }

  g.labels_ = std::move(labels);
  for (int a = 0; a < n; ++a) {
    if (!g.label_index_.emplace(g.labels_[a], a).second) {
      throw ValidationError("duplicate element label '" + g.labels_[a] + "'");
    }
  }
  return g;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != kIdentity; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::index_of(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) {
    throw ParseError("unknown group element '" + std::string(label) + "'");
  }
  return it->second;
}

bool FiniteGroup::has_label(std::string_view label) const {
  return label_index_.count(std::string(label)) > 0;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> cls(order_, -1);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < order_; ++a) {
    if (cls[a] >= 0) continue;
    std::set<int> members;
    for (int g = 0; g < order_; ++g) members.insert(mul(mul(g, a), inv(g)));
    for (int m : members) cls[m] = static_cast<int>(out.size());
    out.emplace_back(members.begin(), members.end());
  }
  return out;
}

std::vector<std::vector<int>> FiniteGroup::cayley_table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  }
  return t;
}

GroupPtr cyclic_group(int n) {
  if (n < 1 || n > FiniteGroup::kMaxOrder) {
    throw ValidationError("cyclic(" + std::to_string(n) + "): order outside supported range");
  }
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(t)));
}

GroupPtr dihedral_group(int n) {
  if (n < 1 || 2 * n > FiniteGroup::kMaxOrder) {
    throw ValidationError("dihedral(" + std::to_string(n) + "): n outside supported range");
  }
  // index k < n is r^k, index n + k is s r^k, with r^a s = s r^{-a}
  const int order = 2 * n;
  auto mod = [n](int v) { return ((v % n) + n) % n; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      const bool xs = x >= n;
      const bool ys = y >= n;
      const int a = x % n;
      const int b = y % n;
      if (!xs && !ys) t[x][y] = mod(a + b);
      if (!xs && ys) t[x][y] = n + mod(b - a);
      if (xs && !ys) t[x][y] = n + mod(a + b);
      if (xs && ys) t[x][y] = mod(b - a);
    }
  }
  std::vector<std::string> labels(order);
  for (int k = 0; k < n; ++k) {
    labels[k] = k == 0 ? "e" : (k == 1 ? "r" : "r" + std::to_string(k));
    labels[n + k] = k == 0 ? "s" : (k == 1 ? "sr" : "sr" + std::to_string(k));
  }
  return std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(t), std::move(labels)));
}

GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 6) {
    throw ValidationError("symmetric(" + std::to_string(n) + "): only n in 1..6 supported");
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<int>, int> index;
  for (int k = 0; k < static_cast<int>(perms.size()); ++k) index[perms[k]] = k;

  const int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<int> comp(n);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      // (a*b)(i) = a(b(i))
      for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
      t[a][b] = index.at(comp);
    }
  }
  std::vector<std::string> labels(order);
  for (int k = 0; k < order; ++k) labels[k] = permutation_label(perms[k]);
  return std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(t), std::move(labels)));
}

ProductGroup direct_product(const GroupPtr& left, const GroupPtr& right) {
  const int m = left->order();
  const int k = right->order();
  if (static_cast<long>(m) * k > FiniteGroup::kMaxOrder) {
    throw ValidationError("direct product of orders " + std::to_string(m) + " and " +
                          std::to_string(k) + " exceeds supported order");
  }
  const int order = m * k;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  ProductGroup out;
  out.left = left;
  out.right = right;
  out.to_left.resize(order);
  out.to_right.resize(order);
  for (int x = 0; x < order; ++x) {
    out.to_left[x] = x / k;
    out.to_right[x] = x % k;
    labels[x] = "(" + left->label(x / k) + "," + right->label(x % k) + ")";
    for (int y = 0; y < order; ++y) {
      t[x][y] = left->mul(x / k, y / k) * k + right->mul(x % k, y % k);
    }
  }
  out.group = std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(t), std::move(labels)));
  return out;
}

namespace {

Subgroup make_subgroup(const GroupPtr& group, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  Subgroup s;
  s.parent = group;
  s.from_parent.assign(group->order(), -1);
  for (int k = 0; k < static_cast<int>(elements.size()); ++k) s.from_parent[elements[k]] = k;
  const int m = static_cast<int>(elements.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = group->label(elements[a]);
    for (int b = 0; b < m; ++b) {
      const int prod = s.from_parent[group->mul(elements[a], elements[b])];
      if (prod < 0) {
        throw ValidationError("subset is not closed under multiplication");
      }
      t[a][b] = prod;
    }
  }
  s.elements = std::move(elements);
  s.as_group = std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(t), std::move(labels)));
  return s;
}

}  // namespace

Subgroup subgroup(const GroupPtr& group, std::span<const int> gens) {
  for (int g : gens) {
    if (g < 0 || g >= group->order()) {
      throw ValidationError("generator index " + std::to_string(g) + " out of range");
    }
  }
  std::vector<bool> in(group->order(), false);
  std::vector<int> members{FiniteGroup::kIdentity};
  in[FiniteGroup::kIdentity] = true;
  // closure under right multiplication by generators suffices in a finite group
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int g : gens) {
      const int x = group->mul(members[i], g);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  }
  return make_subgroup(group, std::move(members));
}

Subgroup whole_group(const GroupPtr& group) {
  std::vector<int> all(group->order());
  std::iota(all.begin(), all.end(), 0);
  return make_subgroup(group, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& group) { return subgroup(group, {}); }

std::vector<Subgroup> all_subgroups(const GroupPtr& group) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  auto add = [&](Subgroup s) {
    if (seen.insert(s.elements).second) frontier.push_back(s.elements);
  };
  add(trivial_subgroup(group));
  // every subgroup of a finite group is reached by adding one generator at a time
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const auto base = frontier[i];
    std::vector<bool> in(group->order(), false);
    for (int x : base) in[x] = true;
    for (int g = 0; g < group->order(); ++g) {
      if (in[g]) continue;
      std::vector<int> gens = base;
      gens.push_back(g);
      add(subgroup(group, gens));
    }
  }
  std::vector<std::vector<int>> sorted(seen.begin(), seen.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  out.reserve(sorted.size());
  for (auto& els : sorted) out.push_back(make_subgroup(group, els));
  return out;
}

bool is_normal(const Subgroup& s) {
  const auto& g = *s.parent;
  for (int x = 0; x < g.order(); ++x) {
    for (int n : s.elements) {
      if (!s.contains(g.mul(g.mul(x, n), g.inv(x)))) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> left_cosets(const Subgroup& s) {
  const auto& g = *s.parent;
  std::vector<int> assigned(g.order(), -1);
  std::vector<std::vector<int>> cosets;
  for (int x = 0; x < g.order(); ++x) {
    if (assigned[x] >= 0) continue;
    std::vector<int> coset;
    for (int h : s.elements) coset.push_back(g.mul(x, h));
    std::sort(coset.begin(), coset.end());
    for (int y : coset) assigned[y] = static_cast<int>(cosets.size());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

QuotientMap quotient(const Subgroup& n) {
  const auto& g = *n.parent;
  for (int x = 0; x < g.order(); ++x) {
    for (int k : n.elements) {
      const int c = g.mul(g.mul(x, k), g.inv(x));
      if (!n.contains(c)) {
        throw ValidationError("subgroup is not normal: " + g.label(x) + " * " + g.label(k) + " * " +
                              g.label(x) + "^-1 = " + g.label(c) + " is not in the subgroup");
      }
    }
  }
  QuotientMap q;
  q.source = n.parent;
  q.kernel = n;
  const auto cosets = left_cosets(n);
  const int m = static_cast<int>(cosets.size());
  q.projection.assign(g.order(), -1);
  q.section.resize(m);
  for (int c = 0; c < m; ++c) {
    q.section[c] = cosets[c].front();
    for (int x : cosets[c]) q.projection[x] = c;
  }
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = "[" + g.label(q.section[a]) + "]";
    for (int b = 0; b < m; ++b) t[a][b] = q.projection[g.mul(q.section[a], q.section[b])];
  }
  q.target = std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(t), std::move(labels)));
  return q;
}

int word_length(const FiniteGroup& group, std::span<const int> gens, int g) {
  if (g < 0 || g >= group.order()) {
    throw ValidationError("element index " + std::to_string(g) + " out of range");
  }
  std::vector<int> dist(group.order(), -1);
  std::deque<int> queue{FiniteGroup::kIdentity};
  dist[FiniteGroup::kIdentity] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    if (x == g) return dist[x];
    for (int s : gens) {
      for (int step : {s, group.inv(s)}) {
        const int y = group.mul(x, step);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  throw ValidationError("element '" + group.label(g) + "' is not reachable from the generators");
}

std::vector<NamedGroup> group_zoo() {
  return {{"Z/2", cyclic_group(2)},
          {"Z/3", cyclic_group(3)},
          {"Z/4", cyclic_group(4)},
          {"S3", symmetric_group(3)},
          {"D4", dihedral_group(4)},
          {"Z/2xZ/3", direct_product(cyclic_group(2), cyclic_group(3)).group}};
}

}  // namespace hsm
