#include "lbentropy/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbentropy/errors.hpp"

namespace lbentropy {

LBSample::LBSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2)
    throw validation_error("sample needs at least 2 values, got " +
                           std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0)
      throw validation_error("sample value #" + std::to_string(i + 1) +
                             " is not a finite positive number");
  }
  std::sort(values_.begin(), values_.end());
  inv_prefix_.resize(values_.size());
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    s += 1.0 / values_[i];
    inv_prefix_[i] = s;
  }
}

LBSample LBSample::scaled(double c) const {
  if (!(c > 0) || !std::isfinite(c))
    throw validation_error("scale factor must be finite and positive");
  std::vector<double> v(values_);
  for (double& y : v) y *= c;
  return LBSample(std::move(v));
}

}  // namespace lbentropy
