#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hsm/error.hpp"

namespace hsm {

/// Finite group given by its full multiplication table. Elements are dense
/// indices 0..order-1 and index 0 is always the identity. Immutable.
class FiniteGroup {
 public:
  static constexpr int kIdentity = 0;
  static constexpr int kMaxOrder = 1024;

  /// Builds and exhaustively verifies a group from a Cayley table
  /// (table[a][b] = a*b). If the identity is not at index 0 the elements are
  /// re-indexed so that it is. Throws ValidationError if the table is not a
  /// group.
  static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                std::vector<std::string> labels = {});

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int element_order(int a) const;

  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws ParseError for an unknown label.
  int index_of(std::string_view label) const;
  bool has_label(std::string_view label) const;

  bool is_abelian() const;
  /// Conjugacy classes, each sorted, ordered by smallest member.
  std::vector<std::vector<int>> conjugacy_classes() const;

  std::vector<std::vector<int>> cayley_table() const;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_index_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr cyclic_group(int n);
/// Dihedral group of order 2n: elements r^k then s r^k.
GroupPtr dihedral_group(int n);
/// Symmetric group on n <= 6 points, permutations in lexicographic order.
GroupPtr symmetric_group(int n);

/// G x H with componentwise multiplication; element (g, h) has index
/// g * |H| + h.
struct ProductGroup {
  GroupPtr group;
  GroupPtr left;
  GroupPtr right;
  std::vector<int> to_left;
  std::vector<int> to_right;

  int pair(int g, int h) const { return g * right->order() + h; }
};

ProductGroup direct_product(const GroupPtr& left, const GroupPtr& right);

/// A subgroup together with its own group structure and the index
/// translations in both directions.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;   // ascending parent indices; elements[0] == identity
  GroupPtr as_group;           // element k of as_group is parent element elements[k]
  std::vector<int> from_parent;  // parent index -> subgroup index, or -1

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int parent_index) const { return from_parent[parent_index] >= 0; }
  int to_parent(int k) const { return elements[k]; }
};

/// Smallest subgroup containing gens.
Subgroup subgroup(const GroupPtr& group, std::span<const int> gens);
Subgroup whole_group(const GroupPtr& group);
Subgroup trivial_subgroup(const GroupPtr& group);
/// All subgroups, each listed once, ordered by (order, elements).
std::vector<Subgroup> all_subgroups(const GroupPtr& group);

bool is_normal(const Subgroup& subgroup);

/// Quotient G/N with projection and minimal-index coset representatives.
struct QuotientMap {
  GroupPtr source;
  Subgroup kernel;
  GroupPtr target;
  std::vector<int> projection;  // source index -> target index
  std::vector<int> section;     // target index -> minimal source representative
};

/// Throws ValidationError naming a witnessing conjugation if N is not normal.
QuotientMap quotient(const Subgroup& normal_subgroup);

/// Graph distance from the identity in the Cayley graph for gens and their
/// inverses. Throws ValidationError when g is unreachable.
int word_length(const FiniteGroup& group, std::span<const int> gens, int g);

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

/// Small test groups: Z/2, Z/3, Z/4, S3, D4 (order 8), Z/2 x Z/3.
std::vector<NamedGroup> group_zoo();

/// Left cosets gH, each sorted, ordered by minimal representative.
std::vector<std::vector<int>> left_cosets(const Subgroup& subgroup);

}  // namespace hsm
