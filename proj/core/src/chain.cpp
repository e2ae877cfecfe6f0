#include "mfu/chain.hpp"

#include <cmath>

#include "mfu/error.hpp"

namespace mfu {

Chain::Chain(std::vector<std::string> names, std::uint64_t seed)
    : names_(std::move(names)), seed_(seed) {}

void Chain::push_back(std::span<const double> row) {
  if (row.size() != n_dims()) {
    throw Error(ErrorCode::DimensionMismatch,
                "chain row has " + std::to_string(row.size()) + " values, expected " +
                    std::to_string(n_dims()));
  }
  for (double v : row) {
    if (std::isnan(v)) throw Error(ErrorCode::Domain, "NaN in chain row");
  }
  draws_.insert(draws_.end(), row.begin(), row.end());
}

std::vector<double> Chain::column(std::size_t k) const {
  std::vector<double> out;
  out.reserve(n_samples());
  for (std::size_t i = 0; i < n_samples(); ++i) out.push_back((*this)(i, k));
  return out;
}

std::vector<std::string> indexed_names(const std::string& prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) names.push_back(prefix + std::to_string(k));
  return names;
}

}  // namespace mfu
