#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace junction {

/// One pinned value: the closed form, what the library computes, and
/// whether they agree within tolerance.
struct ReproRow {
  std::string id;
  std::string description;
  std::string expected;
  std::string computed;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// The six pinned closed-form results.
std::vector<ReproRow> reproduce_rows();

struct SweepSummary {
  std::string property;
  std::size_t samples = 0;
  std::size_t failures = 0;
};

/// Randomized property checks on `samples` inputs each, seeded by `seed`.
std::vector<SweepSummary> property_sweep(std::size_t samples, std::uint64_t seed);

}  // namespace junction
