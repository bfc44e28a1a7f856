#pragma once

// JSON spec files.
//
//   {
//     "file_size": 4,
//     "storage_cost": [100, 10, 10, 10, 1],
//     "download_cost": [10, 1, 1, 1, 1],
//     "reconstruction_sets": [[0, 1, 2], [0, 3]],
//     "surviving_sets": [[[1, 3], [2, 4]], ...],            one list per node
//     "alphas": [2, 2, 2, 3, 2],                             optional
//     "betas": [{"node": 0, "set": 0, "helper": 1, "amount": "1/2"}, ...]
//   }
//
// Numbers may be JSON integers, decimals (read as the decimal they spell)
// or "p/q" strings. Node indices are 0-based; n is the length of
// storage_cost. Download amounts not listed default to 0; listing betas
// requires alphas.

#include "hetdss/model.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hetdss {

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::vector<std::string> diagnostics);
  /// Each entry names the offending field, e.g. "surviving_sets[2][1][0]: ...".
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

struct SpecDocument {
  DssSpec spec;                          // validated and normalized
  std::optional<Assignment> assignment;  // present when alphas were given
  std::vector<std::string> warnings;
};

SpecDocument parse_spec(std::string_view text);

/// Throws SpecError (with the path in the message) if unreadable.
SpecDocument load_spec(const std::filesystem::path& path);

/// Integers as JSON numbers, other rationals as "p/q". Zero betas are omitted.
std::string serialize_spec(const DssSpec& spec, const Assignment* assignment = nullptr);

}  // namespace hetdss
