#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mfu {

/// Retained draws of a sampler run, row-major: row i is the full state after
/// the i-th Gibbs cycle.
class Chain {
 public:
  Chain() = default;
  Chain(std::vector<std::string> names, std::uint64_t seed);

  std::size_t n_samples() const noexcept { return n_dims() == 0 ? 0 : draws_.size() / n_dims(); }
  std::size_t n_dims() const noexcept { return names_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  void reserve(std::size_t rows) { draws_.reserve(rows * n_dims()); }
  /// Appends one row; throws on length mismatch or NaN entries.
  void push_back(std::span<const double> row);

  std::span<const double> row(std::size_t i) const {
    return {draws_.data() + i * n_dims(), n_dims()};
  }
  double operator()(std::size_t i, std::size_t k) const { return draws_[i * n_dims() + k]; }

  /// Column k as a contiguous vector.
  std::vector<double> column(std::size_t k) const;

  const std::vector<double>& data() const noexcept { return draws_; }

  bool operator==(const Chain&) const = default;

 private:
  std::vector<std::string> names_;
  std::uint64_t seed_ = 0;
  std::vector<double> draws_;
};

/// "prefix1", ..., "prefixK".
std::vector<std::string> indexed_names(const std::string& prefix, std::size_t count);

}  // namespace mfu
