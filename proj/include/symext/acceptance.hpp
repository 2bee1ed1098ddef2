#pragma once

// The acceptance suite. Shared by the acceptance binary and `symext selftest`.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace symext {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  /// Where the determinism criterion leaves its certificate files. A
  /// temporary directory is used when empty.
  std::optional<std::filesystem::path> out_dir;
  /// Runs only these criteria when non-empty.
  std::vector<int> only;
};

/// Runs the suite, calling `on_result` after each criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 coefficient oracles  (0.41 s, limit 60 s)  <detail>"
std::string format_result(const CriterionResult& r);

/// Deterministic certificate pipeline: planted instances are solved,
/// certificates converted and everything written to `dir`. Returns the file
/// names, sorted.
std::vector<std::string> write_certificates(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace symext
