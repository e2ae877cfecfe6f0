#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfu/chain.hpp"

namespace mfu {

/// Rectangular numeric table with a header row.
struct CsvTable {
  std::vector<std::string> names;
  std::size_t rows = 0;
  std::vector<double> values;  // row-major

  double operator()(std::size_t i, std::size_t j) const { return values[i * names.size() + j]; }
  std::vector<double> column(std::size_t j) const;
};

/// Parses a comma-separated file whose first line is a header. Data rows are
/// counted from 1 in error messages. Throws Error(Io) or Error(Parse).
CsvTable read_csv_matrix(const std::filesystem::path& path);
CsvTable parse_csv_matrix(const std::string& text);

/// Header of parameter names, then one row per draw with 17 significant
/// digits, which round-trips binary64 exactly.
void write_chain_csv(const Chain& chain, const std::filesystem::path& path);
std::string format_chain_csv(const Chain& chain);

/// Reads a chain written by write_chain_csv (seed is not stored; pass it in).
Chain read_chain_csv(const std::filesystem::path& path, std::uint64_t seed = 0);

}  // namespace mfu
