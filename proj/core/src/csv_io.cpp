#include "mfu/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mfu/error.hpp"

namespace mfu {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
  const std::string cell = trim(raw);
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::Parse, "row " + std::to_string(row) + ", column " +
                                      std::to_string(col) + ": '" + cell + "' is not a number");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::vector<double> CsvTable::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) out.push_back((*this)(i, j));
  return out;
}

CsvTable parse_csv_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CsvTable table;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw Error(ErrorCode::Parse, "missing header row");
  }
  for (auto& name : split_line(line)) table.names.push_back(trim(name));
  const std::size_t width = table.names.size();

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split_line(line);
    if (cells.size() != width) {
      throw Error(ErrorCode::Parse, "row " + std::to_string(row) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(width));
    }
    for (std::size_t j = 0; j < width; ++j) table.values.push_back(parse_cell(cells[j], row, j + 1));
  }
  table.rows = row;
  return table;
}

CsvTable read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_matrix(buf.str());
}

std::string format_chain_csv(const Chain& chain) {
  std::string out;
  for (std::size_t k = 0; k < chain.n_dims(); ++k) {
    if (k) out += ',';
    out += chain.names()[k];
  }
  out += '\n';
  for (std::size_t i = 0; i < chain.n_samples(); ++i) {
    for (std::size_t k = 0; k < chain.n_dims(); ++k) {
      if (k) out += ',';
      out += format_double(chain(i, k));
    }
    out += '\n';
  }
  return out;
}

void write_chain_csv(const Chain& chain, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << format_chain_csv(chain);
  if (!out) throw Error(ErrorCode::Io, "write to " + path.string() + " failed");
}

Chain read_chain_csv(const std::filesystem::path& path, std::uint64_t seed) {
  const CsvTable table = read_csv_matrix(path);
  Chain chain(table.names, seed);
  chain.reserve(table.rows);
  for (std::size_t i = 0; i < table.rows; ++i) {
    chain.push_back(std::span<const double>(table.values).subspan(i * table.names.size(),
                                                                   table.names.size()));
  }
  return chain;
}

}  // namespace mfu
