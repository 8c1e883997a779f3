#include "hsm/window.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>

namespace hsm {

namespace {

int letter_key(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

bool free_word_less(const AmbientGroup::Element& a, const AmbientGroup::Element& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return letter_key(a[i]) < letter_key(b[i]);
  }
  return false;
}

int l1_norm(const AmbientGroup::Element& v) {
  int s = 0;
  for (int x : v) s += std::abs(x);
  return s;
}

}  // namespace

AmbientGroup free_group(int rank) {
  if (rank < 1 || rank > 26) {
    throw ValidationError("free group rank must be in 1..26, got " + std::to_string(rank));
  }
  return AmbientGroup{AmbientGroup::Kind::Free, rank};
}

AmbientGroup lattice(int dimension) {
  if (dimension < 1) {
    throw ValidationError("lattice dimension must be positive, got " + std::to_string(dimension));
  }
  return AmbientGroup{AmbientGroup::Kind::Lattice, dimension};
}

AmbientGroup::Element AmbientGroup::identity() const {
  return kind == Kind::Free ? Element{} : Element(rank, 0);
}

AmbientGroup::Element AmbientGroup::mul(const Element& a, const Element& b) const {
  if (kind == Kind::Lattice) {
    Element out(rank);
    for (int i = 0; i < rank; ++i) out[i] = a[i] + b[i];
    return out;
  }
  Element out = a;
  for (int letter : b) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

AmbientGroup::Element AmbientGroup::inv(const Element& a) const {
  Element out(a.size());
  if (kind == Kind::Lattice) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
  }
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[a.size() - 1 - i];
  return out;
}

int AmbientGroup::length(const Element& a) const {
  return kind == Kind::Free ? static_cast<int>(a.size()) : l1_norm(a);
}

std::string AmbientGroup::label(const Element& a) const {
  if (kind == Kind::Lattice) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(a[i]);
    }
    return s + ")";
  }
  if (a.empty()) return "e";
  std::string s;
  for (int letter : a) {
    const char base = static_cast<char>('a' + (std::abs(letter) - 1));
    s += letter > 0 ? base : static_cast<char>(std::toupper(base));
  }
  return s;
}

AmbientGroup::Element AmbientGroup::parse(std::string_view text) const {
  if (kind == Kind::Lattice) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
      throw ParseError("lattice element must look like (x1,...,xd): '" + std::string(text) + "'");
    }
    Element v;
    std::string body(text.substr(1, text.size() - 2));
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = body.find(',', pos);
      const std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      char* end = nullptr;
      const long x = std::strtol(part.c_str(), &end, 10);
      if (part.empty() || *end != '\0') {
        throw ParseError("bad lattice coordinate '" + part + "' in '" + std::string(text) + "'");
      }
      v.push_back(static_cast<int>(x));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(v.size()) != rank) {
      throw ParseError("lattice element '" + std::string(text) + "' has wrong dimension");
    }
    return v;
  }
  if (text == "e") return {};
  Element w;
  for (char c : text) {
    const int k = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
    if (!std::isalpha(static_cast<unsigned char>(c)) || k > rank) {
      throw ParseError("bad letter '" + std::string(1, c) + "' in free word '" + std::string(text) + "'");
    }
    w = mul(w, Element{std::isupper(static_cast<unsigned char>(c)) ? -k : k});
  }
  return w;
}

std::vector<AmbientGroup::Element> AmbientGroup::generators() const {
  std::vector<Element> gens;
  for (int k = 0; k < rank; ++k) {
    if (kind == Kind::Free) {
      gens.push_back(Element{k + 1});
    } else {
      Element v(rank, 0);
      v[k] = 1;
      gens.push_back(v);
    }
  }
  return gens;
}

std::string AmbientGroup::name() const {
  return (kind == Kind::Free ? "free(" : "lattice(") + std::to_string(rank) + ")";
}

GroupWindow::GroupWindow(AmbientGroup ambient, std::vector<AmbientGroup::Element> elements, int radius)
    : ambient_(ambient), elements_(std::move(elements)), radius_(radius) {
  std::map<AmbientGroup::Element, int> seen;
  for (int i = 0; i < size(); ++i) {
    if (!seen.emplace(elements_[i], i).second) {
      throw ValidationError("window elements are not distinct: " + ambient_.label(elements_[i]));
    }
  }
  const int n = size();
  std::vector<AmbientGroup::Element> raw(static_cast<std::size_t>(n) * n);
  std::vector<AmbientGroup::Element> inverses(n);
  for (int j = 0; j < n; ++j) inverses[j] = ambient_.inv(elements_[j]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      raw[static_cast<std::size_t>(i) * n + j] = ambient_.mul(inverses[j], elements_[i]);
    }
  }
  std::vector<AmbientGroup::Element> unique = raw;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  // canonical order: by word length, then free-word / coordinate order
  const auto& amb = ambient_;
  std::stable_sort(unique.begin(), unique.end(), [&amb](const auto& a, const auto& b) {
    const int la = amb.length(a);
    const int lb = amb.length(b);
    if (la != lb) return la < lb;
    return amb.kind == AmbientGroup::Kind::Free ? free_word_less(a, b) : a < b;
  });
  differences_ = std::move(unique);
  for (int k = 0; k < static_cast<int>(differences_.size()); ++k) difference_index_[differences_[k]] = k;
  diff_of_.resize(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) diff_of_[k] = difference_index_.at(raw[k]);
}

int GroupWindow::find_difference(const AmbientGroup::Element& g) const {
  auto it = difference_index_.find(g);
  return it == difference_index_.end() ? -1 : it->second;
}

std::size_t ball_size(const AmbientGroup& ambient, int radius) {
  if (radius < 0) return 0;
  constexpr std::size_t kHuge = std::numeric_limits<std::size_t>::max() / 4;
  if (ambient.kind == AmbientGroup::Kind::Free) {
    std::size_t total = 1;
    std::size_t sphere = 2 * static_cast<std::size_t>(ambient.rank);
    for (int k = 1; k <= radius; ++k) {
      total += sphere;
      if (total > kHuge) return kHuge;
      sphere *= 2 * static_cast<std::size_t>(ambient.rank) - 1;
      if (sphere > kHuge) sphere = kHuge;
    }
    return total;
  }
  // count[d][r] = number of points in Z^d with l1 norm <= r
  std::vector<std::size_t> prev(radius + 1, 1);
  for (int d = 1; d <= ambient.rank; ++d) {
    std::vector<std::size_t> cur(radius + 1, 0);
    for (int r = 0; r <= radius; ++r) {
      std::size_t c = prev[r];
      for (int x = 1; x <= r; ++x) c += 2 * prev[r - x];
      cur[r] = std::min(c, kHuge);
    }
    prev = std::move(cur);
  }
  return prev[radius];
}

WindowPtr ball_window(const AmbientGroup& ambient, int radius, std::size_t cap) {
  if (radius < 0) {
    throw ValidationError("window radius must be nonnegative");
  }
  const std::size_t n = ball_size(ambient, radius);
  if (n > cap) {
    throw ValidationError("ball of radius " + std::to_string(radius) + " in " + ambient.name() +
                          " has " + std::to_string(n) + " elements, exceeding the cap of " +
                          std::to_string(cap));
  }
  std::vector<AmbientGroup::Element> elements{ambient.identity()};
  if (ambient.kind == AmbientGroup::Kind::Free) {
    std::vector<int> letters;
    for (int k = 1; k <= ambient.rank; ++k) {
      letters.push_back(k);
      letters.push_back(-k);
    }
    std::size_t begin = 0;
    for (int len = 1; len <= radius; ++len) {
      const std::size_t end = elements.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (int letter : letters) {
          if (!elements[i].empty() && elements[i].back() == -letter) continue;
          auto w = elements[i];
          w.push_back(letter);
          elements.push_back(std::move(w));
        }
      }
      begin = end;
    }
    std::stable_sort(elements.begin(), elements.end(), free_word_less);
  } else {
    elements.clear();
    AmbientGroup::Element v(ambient.rank, -radius);
    while (true) {
      if (l1_norm(v) <= radius) elements.push_back(v);
      int k = ambient.rank - 1;
      while (k >= 0 && v[k] == radius) {
        v[k] = -radius;
        --k;
      }
      if (k < 0) break;
      ++v[k];
    }
    std::stable_sort(elements.begin(), elements.end(), [](const auto& a, const auto& b) {
      const int la = l1_norm(a);
      const int lb = l1_norm(b);
      return la != lb ? la < lb : a < b;
    });
  }
  return std::make_shared<GroupWindow>(ambient, std::move(elements), radius);
}

}  // namespace hsm
