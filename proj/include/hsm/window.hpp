#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hsm/error.hpp"

namespace hsm {

/// Infinite discrete group with exact arithmetic: a free group on `rank`
/// generators or the lattice Z^rank.
struct AmbientGroup {
  enum class Kind { Free, Lattice };

  Kind kind = Kind::Free;
  int rank = 1;

  /// Free group: reduced word of letters +-1..+-rank (generator k, or its
  /// inverse when negative). Lattice: integer coordinate vector.
  using Element = std::vector<int>;

  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  /// Word length for the standard generators.
  int length(const Element& a) const;
  /// Free: "e", "a", "A" (= a^-1), "aB", ...  Lattice: "(1,-2)".
  std::string label(const Element& a) const;
  Element parse(std::string_view label) const;
  /// Standard generators (without inverses).
  std::vector<Element> generators() const;
  std::string name() const;
};

AmbientGroup free_group(int rank);
AmbientGroup lattice(int dimension);

/// Finite subset of an ambient group with its materialized difference set
/// {y^-1 x}. Immutable.
class GroupWindow {
 public:
  static constexpr std::size_t kDefaultCap = 4096;

  GroupWindow(AmbientGroup ambient, std::vector<AmbientGroup::Element> elements, int radius = -1);

  const AmbientGroup& ambient() const { return ambient_; }
  int size() const { return static_cast<int>(elements_.size()); }
  /// Radius of the ball this window was built from, or -1.
  int radius() const { return radius_; }
  const std::vector<AmbientGroup::Element>& elements() const { return elements_; }
  const std::vector<AmbientGroup::Element>& difference_set() const { return differences_; }
  /// Index into difference_set() of elements[j]^-1 elements[i].
  int difference_index(int i, int j) const { return diff_of_[static_cast<std::size_t>(i) * size() + j]; }
  /// Index into difference_set() or -1.
  int find_difference(const AmbientGroup::Element& g) const;
  int identity_index() const { return find_difference(ambient_.identity()); }

 private:
  AmbientGroup ambient_;
  std::vector<AmbientGroup::Element> elements_;
  std::vector<AmbientGroup::Element> differences_;
  std::map<AmbientGroup::Element, int> difference_index_;
  std::vector<int> diff_of_;
  int radius_ = -1;
};

using WindowPtr = std::shared_ptr<const GroupWindow>;

/// All elements of word length <= radius, ordered by length then
/// lexicographically. Throws ValidationError when the ball would exceed cap.
WindowPtr ball_window(const AmbientGroup& ambient, int radius,
                      std::size_t cap = GroupWindow::kDefaultCap);

/// Number of elements of word length <= radius.
std::size_t ball_size(const AmbientGroup& ambient, int radius);

}  // namespace hsm
