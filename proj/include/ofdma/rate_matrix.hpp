#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ofdma {

// Dense N x K matrix of achievable bits/symbol, row n = subchannel,
// column k = user.
class RateMatrix {
 public:
  RateMatrix() = default;
  RateMatrix(std::size_t num_subchannels, std::size_t num_users, double fill = 0.0)
      : n_(num_subchannels), k_(num_users), data_(num_subchannels * num_users, fill) {}

  static RateMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t num_subchannels() const { return n_; }
  std::size_t num_users() const { return k_; }
  bool empty() const { return data_.empty(); }

  double operator()(std::size_t n, std::size_t k) const { return data_[n * k_ + k]; }
  double& operator()(std::size_t n, std::size_t k) { return data_[n * k_ + k]; }

  std::span<const double> row(std::size_t n) const {
    return {data_.data() + n * k_, k_};
  }

  friend bool operator==(const RateMatrix&, const RateMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> data_;
};

}  // namespace ofdma
