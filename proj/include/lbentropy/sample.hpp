#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lbentropy {

/// A length-biased sample: values sorted ascending, all strictly positive
/// and finite, n >= 2, with prefix sums S_k = sum_{i<=k} 1/Y_(i) cached.
class LBSample {
public:
  /// Validates and sorts; throws validation_error.
  explicit LBSample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  /// inv_prefix()[k-1] = S_k.
  std::span<const double> inv_prefix() const noexcept { return inv_prefix_; }
  std::size_t size() const noexcept { return values_.size(); }
  double inv_sum() const noexcept { return inv_prefix_.back(); }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }

  LBSample scaled(double c) const;

private:
  std::vector<double> values_;
  std::vector<double> inv_prefix_;
};

}  // namespace lbentropy
