#pragma once

// JSON matrix files. Numbers are written as 17-significant-digit decimals so a
// save/load round trip is bit-exact.
//
//   {
//     "format_version": 1,
//     "kind": "state" | "bosonic" | "blocks",
//     "layout": [dA, dB, ...],
//     "layout_tag": "sym(k)",                      (bosonic only)
//     "metadata": {"seed": 7, "provenance": "..."},
//     "entries": [[re, im], ...]                    (row-major)
//   }
//
// Block files carry "k", "dA" and "blocks": [{"lambda": [l1, l2], "entries": [...]}].

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "symext/block_state.hpp"
#include "symext/convert.hpp"
#include "symext/linalg.hpp"

namespace symext {

inline constexpr int kFormatVersion = 1;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct FileMetadata {
  std::optional<std::uint64_t> seed;
  std::string provenance;
};

using LoadedFile = std::variant<DensityMatrix, BosonicState, BlockState>;

std::string format_state(const DensityMatrix& rho, const FileMetadata& meta = {});
std::string format_bosonic(const BosonicState& sigma, const FileMetadata& meta = {});
std::string format_blocks(const BlockState& bs, const FileMetadata& meta = {});

/// Parses any kind. Throws ParseError on malformed text or schema violations
/// (line/column point at the offending position when known).
LoadedFile parse_matrix_file(const std::string& text);
LoadedFile load_file(const std::filesystem::path& path);

DensityMatrix load_state(const std::filesystem::path& path);
void save_state(const DensityMatrix& rho, const std::filesystem::path& path, const FileMetadata& meta = {});
void save_bosonic(const BosonicState& sigma, const std::filesystem::path& path, const FileMetadata& meta = {});
void save_blocks(const BlockState& bs, const std::filesystem::path& path, const FileMetadata& meta = {});

/// Writes text exactly; throws std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// "%.17g".
std::string format_number(double x);

}  // namespace symext
