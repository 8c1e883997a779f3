#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hsm::suites {

/// One checked relation: lhs (relation) rhs, allowing `slack`.
/// Relations: "<=" (lhs <= rhs + slack), ">=" (lhs >= rhs - slack),
/// "=" (|lhs - rhs| <= slack).
struct Row {
  std::string name;
  std::string anchor;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

Row make_row(std::string name, std::string anchor, std::string relation, double lhs, double rhs, double slack);

struct CatalogEntry {
  std::string name;
  std::string anchor;
  std::string description;
};

/// Sorted by name.
const std::vector<CatalogEntry>& catalog();
bool has_suite(const std::string& name);

struct Options {
  std::uint64_t seed = 42;
  double tolerance = 1e-7;
  /// Randomized instances per inequality in the hereditary and
  /// gilbert-equivalences suites.
  int instances = 30;
};

struct SuiteReport {
  std::string name;
  std::string anchor;
  std::vector<Row> rows;

  bool pass() const;
  int failures() const;
};

/// Throws ValidationError for an unknown name. Every part of a suite draws
/// from its own generator seeded by (seed, suite, part), so results do not
/// depend on which other suites run.
SuiteReport run_suite(const std::string& name, const Options& options);
/// All suites in catalog order.
std::vector<SuiteReport> run_all(const Options& options);

}  // namespace hsm::suites
