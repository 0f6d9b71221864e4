#include "lbentropy/kernels.hpp"

#include "lbentropy/errors.hpp"

namespace lbentropy {

KernelConstants kernel_constants(KernelSpec spec) noexcept {
  switch (spec.kind) {
    case KernelKind::epanechnikov: return {0.6, 0.2};
    case KernelKind::triangular: return {2.0 / 3.0, 1.0 / 6.0};
    case KernelKind::uniform: return {0.5, 1.0 / 3.0};
  }
  return {0.0, 0.0};
}

KernelSpec parse_kernel(std::string_view name) {
  if (name == "epanechnikov") return {KernelKind::epanechnikov};
  if (name == "triangular") return {KernelKind::triangular};
  if (name == "uniform") return {KernelKind::uniform};
  throw validation_error("unknown kernel '" + std::string(name) +
                         "' (expected epanechnikov, triangular or uniform)");
}

std::string kernel_name(KernelSpec spec) {
  switch (spec.kind) {
    case KernelKind::epanechnikov: return "epanechnikov";
    case KernelKind::triangular: return "triangular";
    case KernelKind::uniform: return "uniform";
  }
  return "?";
}

}  // namespace lbentropy
