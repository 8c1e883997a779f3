#include "hsm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hsm::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string where(const std::filesystem::path& source) {
  return source.empty() ? std::string("<inline>") : source.string();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

const std::string& KeyValueDoc::require(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw ParseError(where(source) + ": missing key '" + key + "'");
  return it->second;
}

std::string KeyValueDoc::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

const std::vector<std::string>& KeyValueDoc::block(const std::string& name) const {
  auto it = blocks.find(name);
  if (it == blocks.end()) throw ParseError(where(source) + ": missing block '" + name + ":'");
  return it->second;
}

KeyValueDoc parse_key_value(std::string_view text, std::filesystem::path source) {
  KeyValueDoc doc;
  doc.source = std::move(source);
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string open_block;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) {
      // A blank line (not a comment-only line) ends a block.
      if (trim(raw).empty()) open_block.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (eq != std::string::npos && open_block.empty()) {
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) throw ParseError(where(doc.source) + ":" + std::to_string(line_no) + ": empty key");
      if (doc.values.count(key)) {
        throw ParseError(where(doc.source) + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
      }
      doc.values[key] = trim(line.substr(eq + 1));
      continue;
    }
    if (line.back() == ':' && line.find(' ') == std::string::npos) {
      open_block = line.substr(0, line.size() - 1);
      if (doc.blocks.count(open_block)) {
        throw ParseError(where(doc.source) + ":" + std::to_string(line_no) + ": duplicate block '" + open_block + "'");
      }
      doc.blocks[open_block];
      continue;
    }
    if (open_block.empty()) {
      throw ParseError(where(doc.source) + ":" + std::to_string(line_no) + ": expected 'key = value' or 'block:', got '" +
                       line + "'");
    }
    doc.blocks[open_block].push_back(line);
  }
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

KeyValueDoc read_key_value(const std::filesystem::path& path) { return parse_key_value(read_file(path), path); }

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_int(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ParseError(std::string(what) + ": expected an integer, got '" + t + "'");
  }
  return v;
}

namespace {

bool to_double(const std::string& t, double& v) {
  if (t.empty()) return false;
  char* end = nullptr;
  v = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(v);
}

}  // namespace

double parse_real(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  const auto slash = t.find('/');
  double v = 0.0;
  if (slash != std::string::npos) {
    double num = 0.0;
    double den = 0.0;
    if (to_double(t.substr(0, slash), num) && to_double(t.substr(slash + 1), den) && den != 0.0) return num / den;
  } else if (to_double(t, v)) {
    return v;
  }
  throw ParseError(std::string(what) + ": expected a real number, got '" + t + "'");
}

Complex parse_complex(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) throw ParseError("empty complex number");
  const char last = t.back();
  if (last != 'j' && last != 'i') return Complex(parse_real(t, "complex value"), 0.0);
  t.pop_back();
  // Split at the last sign that is not part of an exponent and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& part) {
    if (part == "+" || part.empty()) return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, "imaginary part");
  };
  if (split == std::string::npos) return Complex(0.0, imag_of(t));
  return Complex(parse_real(t.substr(0, split), "real part"), imag_of(t.substr(split)));
}

namespace {

struct Call {
  std::string name;
  std::vector<std::string> args;
};

Call parse_call(std::string_view expr) {
  const std::string t = trim(expr);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') throw ParseError("bad group expression '" + t + "'");
  Call c{lower(trim(t.substr(0, open))), {}};
  int depth = 0;
  std::string cur;
  for (std::size_t k = open + 1; k + 1 < t.size(); ++k) {
    const char ch = t[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in '" + t + "'");
    if (ch == ',' && depth == 0) {
      c.args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + t + "'");
  if (!trim(cur).empty() || !c.args.empty()) c.args.push_back(trim(cur));
  return c;
}

void want_args(const Call& c, std::size_t n) {
  if (c.args.size() != n) {
    throw ParseError(c.name + "(...) takes " + std::to_string(n) + " argument(s), got " + std::to_string(c.args.size()));
  }
}

Carrier finite(GroupPtr g, std::string description) { return Carrier{std::move(g), nullptr, std::move(description)}; }

Carrier window_carrier(const AmbientGroup& ambient, int radius) {
  return Carrier{nullptr, ball_window(ambient, radius), ambient.name() + " ball radius " + std::to_string(radius)};
}

Carrier product_of(const Carrier& a, const Carrier& b) {
  if (!a.finite() || !b.finite()) throw ParseError("product(...) needs two finite groups");
  return finite(direct_product(a.group, b.group).group, "product(" + a.description + ", " + b.description + ")");
}

// The argument may be a validation failure from the group constructors.
template <typename F>
Carrier build(const std::string& what, F f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace

Carrier parse_carrier_expression(std::string_view expr) {
  const Call c = parse_call(expr);
  const std::string text = trim(expr);
  if (c.name == "cyclic" || c.name == "dihedral" || c.name == "symmetric") {
    want_args(c, 1);
    const int n = parse_int(c.args[0], c.name + " order");
    return build(text, [&] {
      if (c.name == "cyclic") return finite(cyclic_group(n), text);
      if (c.name == "dihedral") return finite(dihedral_group(n), text);
      return finite(symmetric_group(n), text);
    });
  }
  if (c.name == "product") {
    want_args(c, 2);
    return product_of(parse_carrier_expression(c.args[0]), parse_carrier_expression(c.args[1]));
  }
  if (c.name == "free" || c.name == "lattice") {
    want_args(c, 2);
    const int rank = parse_int(c.args[0], c.name + " rank");
    const int radius = parse_int(c.args[1], c.name + " radius");
    if (rank < 1 || radius < 0) throw ParseError(text + ": rank must be >= 1 and radius >= 0");
    return build(text, [&] { return window_carrier(c.name == "free" ? free_group(rank) : lattice(rank), radius); });
  }
  throw ParseError("unknown group expression '" + text + "'");
}

Carrier parse_group_spec(const KeyValueDoc& doc) {
  const std::string kind = lower(doc.require("kind"));
  const std::string ctx = where(doc.source);
  if (kind == "cyclic" || kind == "dihedral" || kind == "symmetric") {
    return parse_carrier_expression(kind + "(" + doc.require("n") + ")");
  }
  if (kind == "free" || kind == "lattice") {
    const std::string rank = doc.has("rank") ? doc.require("rank") : doc.require("dim");
    return parse_carrier_expression(kind + "(" + rank + "," + doc.require("radius") + ")");
  }
  if (kind == "product") {
    const auto base = doc.source.empty() ? std::filesystem::path(".") : doc.source.parent_path();
    return product_of(resolve_carrier(doc.require("left"), base), resolve_carrier(doc.require("right"), base));
  }
  if (kind == "table") {
    std::vector<std::vector<int>> table;
    for (const auto& row : doc.block("table")) {
      std::vector<int> r;
      for (const auto& w : split_words(row)) r.push_back(parse_int(w, ctx + " table entry"));
      table.push_back(std::move(r));
    }
    std::vector<std::string> labels = doc.has("labels") ? split_words(doc.require("labels")) : std::vector<std::string>{};
    return build(ctx, [&] {
      auto g = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table, labels));
      return finite(std::move(g), "table group of order " + std::to_string(table.size()));
    });
  }
  throw ParseError(ctx + ": unknown group kind '" + kind + "'");
}

Carrier read_group_spec(const std::filesystem::path& path) { return parse_group_spec(read_key_value(path)); }

Carrier resolve_carrier(std::string_view reference, const std::filesystem::path& base_dir) {
  const std::string ref = trim(reference);
  if (ref.find('(') != std::string::npos) return parse_carrier_expression(ref);
  std::filesystem::path p(ref);
  if (p.is_relative()) p = base_dir / p;
  if (!std::filesystem::exists(p)) throw ParseError("group file not found: " + p.string());
  return read_group_spec(p);
}

namespace {

std::string strip_comments(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    out += (hash == std::string::npos ? line : line.substr(0, hash)) + "\n";
  }
  return out;
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view raw, bool csv) {
  const std::string text = strip_comments(raw);
  if (csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      std::vector<double> r;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) r.push_back(parse_real(cell, "csv entry"));
      if (!rows.empty() && r.size() != rows.front().size()) throw ParseError("csv matrix: ragged rows");
      rows.push_back(std::move(r));
    }
    if (rows.empty()) throw ParseError("csv matrix: no rows");
    ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  const auto words = split_words(text);
  if (words.size() < 2) throw ParseError("matrix: missing 'rows cols' header");
  const int r = parse_int(words[0], "matrix rows");
  const int c = parse_int(words[1], "matrix cols");
  if (r < 0 || c < 0) throw ParseError("matrix: negative dimensions");
  if (words.size() != 2 + static_cast<std::size_t>(r) * c) {
    throw ParseError("matrix: expected " + std::to_string(static_cast<long>(r) * c) + " entries, got " +
                     std::to_string(words.size() - 2));
  }
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m(i, j) = parse_complex(words[2 + static_cast<std::size_t>(i) * c + j]);
  }
  return m;
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  const std::string text = strip_comments(read_file(path));
  bool csv = lower(path.extension().string()) == ".csv";
  if (!csv) {
    std::istringstream in(text);
    std::string first;
    while (std::getline(in, first) && trim(first).empty()) {
    }
    csv = first.find(',') != std::string::npos;
  }
  try {
    return parse_matrix(text, csv);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<int> parse_labels(const FiniteGroup& g, std::string_view labels) {
  std::vector<int> out;
  for (const auto& w : split_words(labels)) out.push_back(g.index_of(w));
  return out;
}

namespace {

int window_index(const GroupWindow& w, const std::string& label) {
  const int k = w.find_difference(w.ambient().parse(label));
  if (k < 0) throw ParseError("element '" + label + "' is not in the window's difference set");
  return k;
}

int carrier_index(const Carrier& c, const std::string& label) {
  return c.finite() ? c.group->index_of(label) : window_index(*c.window, label);
}

int carrier_size(const Carrier& c) {
  return c.finite() ? c.group->order() : static_cast<int>(c.window->difference_set().size());
}

Multiplier make(const Carrier& c, std::vector<Complex> v, std::string origin) {
  return c.finite() ? Multiplier(c.group, std::move(v), std::move(origin))
                    : Multiplier(c.window, std::move(v), std::move(origin));
}

}  // namespace

Multiplier parse_multiplier_spec(const KeyValueDoc& doc) {
  const auto base = doc.source.empty() ? std::filesystem::path(".") : doc.source.parent_path();
  return parse_multiplier_spec(doc, resolve_carrier(doc.require("group"), base));
}

Multiplier parse_multiplier_spec(const KeyValueDoc& doc, const Carrier& carrier) {
  const std::string kind = lower(doc.require("kind"));
  const std::string ctx = where(doc.source);
  const int n = carrier_size(carrier);
  std::vector<Complex> v(n, 0.0);
  if (kind == "table") {
    std::vector<bool> seen(n, false);
    for (const auto& line : doc.block("table")) {
      const auto w = split_words(line);
      if (w.size() != 2) throw ParseError(ctx + ": table lines are 'label value', got '" + line + "'");
      const int k = carrier_index(carrier, w[0]);
      if (seen[k]) throw ParseError(ctx + ": label '" + w[0] + "' listed twice");
      seen[k] = true;
      v[k] = parse_complex(w[1]);
    }
    return make(carrier, std::move(v), "table");
  }
  if (kind == "constant") {
    const Complex c = parse_complex(doc.require("value"));
    std::fill(v.begin(), v.end(), c);
    return make(carrier, std::move(v), "constant(" + doc.require("value") + ")");
  }
  if (kind == "delta") {
    v[carrier_index(carrier, doc.require("element"))] = 1.0;
    return make(carrier, std::move(v), "delta(" + doc.require("element") + ")");
  }
  if (kind == "indicator") {
    for (const auto& w : split_words(doc.require("elements"))) v[carrier_index(carrier, w)] = 1.0;
    return make(carrier, std::move(v), "indicator{" + doc.require("elements") + "}");
  }
  if (kind == "exp_wordlength") {
    const double t = parse_real(doc.require("t"), "t");
    if (!carrier.finite()) return exp_word_length(carrier.window, t);
    const auto gens = parse_labels(*carrier.group, doc.require("generators"));
    for (int k = 0; k < n; ++k) {
      try {
        v[k] = std::exp(-t * word_length(*carrier.group, gens, k));
      } catch (const ValidationError& e) {
        throw ParseError(ctx + ": " + e.what());
      }
    }
    return make(carrier, std::move(v), "exp_wordlength(t=" + doc.require("t") + ")");
  }
  throw ParseError(ctx + ": unknown multiplier kind '" + kind + "'");
}

Multiplier read_multiplier_spec(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ParseError("multiplier file not found: " + path.string());
  return parse_multiplier_spec(read_key_value(path));
}

Cocycle parse_cocycle_spec(const KeyValueDoc& doc) {
  const auto base = doc.source.empty() ? std::filesystem::path(".") : doc.source.parent_path();
  const Carrier c = resolve_carrier(doc.require("group"), base);
  if (!c.finite()) throw ParseError(where(doc.source) + ": cocycles need a finite acting group");
  return parse_cocycle_spec(doc, c.group);
}

Cocycle parse_cocycle_spec(const KeyValueDoc& doc, const GroupPtr& acting) {
  const std::string ctx = where(doc.source);
  const std::string kind = lower(doc.get("kind", "table"));
  const auto& g = *acting;
  if (kind == "coset") {
    return coset_cocycle(subgroup(acting, parse_labels(g, doc.require("subgroup"))));
  }
  if (kind == "quotient") {
    try {
      return quotient_cocycle(quotient(subgroup(acting, parse_labels(g, doc.require("kernel")))));
    } catch (const ValidationError& e) {
      throw ParseError(ctx + ": " + e.what());
    }
  }
  if (kind != "table") throw ParseError(ctx + ": unknown cocycle kind '" + kind + "'");

  const auto base = doc.source.empty() ? std::filesystem::path(".") : doc.source.parent_path();
  const Carrier target = resolve_carrier(doc.require("target"), base);
  if (!target.finite()) throw ParseError(ctx + ": cocycle target must be a finite group");
  Cocycle c;
  c.space.group = acting;
  c.target = target.group;
  c.space.point_labels = split_words(doc.require("points"));
  const int pts = c.space.points();
  if (pts == 0) throw ParseError(ctx + ": no points");
  std::map<std::string, int> point_index;
  for (int p = 0; p < pts; ++p) {
    if (!point_index.emplace(c.space.point_labels[p], p).second) {
      throw ParseError(ctx + ": duplicate point '" + c.space.point_labels[p] + "'");
    }
  }
  if (doc.has("measure")) {
    for (const auto& w : split_words(doc.require("measure"))) c.space.measure.push_back(parse_real(w, "measure"));
    if (static_cast<int>(c.space.measure.size()) != pts) throw ParseError(ctx + ": one measure value per point");
  } else {
    c.space.measure.assign(pts, 1.0 / pts);
  }

  auto read_table = [&](const std::string& name, auto&& cell) {
    std::vector<std::vector<int>> t(g.order());
    std::vector<bool> seen(g.order(), false);
    for (const auto& line : doc.block(name)) {
      const auto w = split_words(line);
      if (static_cast<int>(w.size()) != pts + 1) {
        throw ParseError(ctx + ": " + name + " lines are 'g' followed by one entry per point");
      }
      const int a = g.index_of(w[0]);
      if (seen[a]) throw ParseError(ctx + ": " + name + " row for '" + w[0] + "' given twice");
      seen[a] = true;
      for (int p = 0; p < pts; ++p) t[a].push_back(cell(w[p + 1]));
    }
    for (int a = 0; a < g.order(); ++a) {
      if (!seen[a]) throw ParseError(ctx + ": " + name + " row missing for '" + g.label(a) + "'");
    }
    return t;
  };
  c.space.action = read_table("action", [&](const std::string& s) {
    auto it = point_index.find(s);
    if (it == point_index.end()) throw ParseError(ctx + ": unknown point '" + s + "'");
    return it->second;
  });
  c.alpha = read_table("alpha", [&](const std::string& s) { return target.group->index_of(s); });
  c.description = doc.get("description", "cocycle from " + ctx);
  const auto report = validate_cocycle(c);
  if (!report.valid) {
    throw ValidationError(ctx + ": invalid cocycle: " +
                          (report.violations.empty() ? std::string("?") : report.violations.front()));
  }
  return c;
}

Cocycle read_cocycle_spec(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ParseError("cocycle file not found: " + path.string());
  return parse_cocycle_spec(read_key_value(path));
}

}  // namespace hsm::io
