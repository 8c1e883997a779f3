#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hsm/group.hpp"
#include "hsm/linalg.hpp"
#include "hsm/multiplier.hpp"
#include "hsm/transforms.hpp"
#include "hsm/window.hpp"

namespace hsm::io {

/// Parsed key/value document. Scalar lines are "key = value"; a line "name:"
/// opens a block whose lines run to the next blank line or end of file.
/// "#" starts a comment.
struct KeyValueDoc {
  std::filesystem::path source;  // empty for in-memory text
  std::map<std::string, std::string> values;
  std::map<std::string, std::vector<std::string>> blocks;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  /// Throws ParseError naming the key and the source when missing.
  const std::string& require(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  const std::vector<std::string>& block(const std::string& name) const;
};

KeyValueDoc parse_key_value(std::string_view text, std::filesystem::path source = {});
/// Throws ParseError with the path when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
KeyValueDoc read_key_value(const std::filesystem::path& path);

std::vector<std::string> split_words(std::string_view s);
int parse_int(std::string_view s, std::string_view what);
/// Decimal or "p/q".
double parse_real(std::string_view s, std::string_view what);
/// "re", "re+imj", "re-imj", "imj" (i accepted for j).
Complex parse_complex(std::string_view s);

/// A finite group or a window into an infinite group.
struct Carrier {
  GroupPtr group;
  WindowPtr window;
  std::string description;

  bool finite() const { return group != nullptr; }
};

/// cyclic(n), dihedral(n), symmetric(n), product(A, B), free(rank, radius),
/// lattice(dim, radius).
Carrier parse_carrier_expression(std::string_view expr);
/// Group spec document (kind = cyclic | dihedral | symmetric | table |
/// product | free | lattice).
Carrier parse_group_spec(const KeyValueDoc& doc);
Carrier read_group_spec(const std::filesystem::path& path);
/// An inline expression when the text contains "(", else a group spec file
/// resolved against base_dir.
Carrier resolve_carrier(std::string_view reference, const std::filesystem::path& base_dir);

/// "rows cols" header then row-major entries, or CSV of reals.
ComplexMatrix parse_matrix(std::string_view text, bool csv);
ComplexMatrix read_matrix(const std::filesystem::path& path);

/// Multiplier spec document. Keys: group (expression or group file), kind
/// (table | exp_wordlength | indicator | delta | constant) and the kind's
/// parameters; see docs/formats.md.
Multiplier parse_multiplier_spec(const KeyValueDoc& doc);
Multiplier read_multiplier_spec(const std::filesystem::path& path);
/// Same, reusing an already resolved carrier instead of the group key.
Multiplier parse_multiplier_spec(const KeyValueDoc& doc, const Carrier& carrier);

/// Cocycle spec document: kind = table (explicit action and alpha) or the
/// built-in coset / quotient constructions.
Cocycle parse_cocycle_spec(const KeyValueDoc& doc);
Cocycle read_cocycle_spec(const std::filesystem::path& path);
/// Same, with the acting group fixed to an existing GroupPtr (its table must
/// match the group named in the document).
Cocycle parse_cocycle_spec(const KeyValueDoc& doc, const GroupPtr& acting);

/// Element indices for whitespace separated labels.
std::vector<int> parse_labels(const FiniteGroup& g, std::string_view labels);

}  // namespace hsm::io
