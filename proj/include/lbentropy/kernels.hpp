#pragma once

#include <string>
#include <string_view>

namespace lbentropy {

// Nonnegative kernels supported on [-1, 1]. Kernels with unbounded support
// (e.g. Gaussian) are deliberately not representable.
enum class KernelKind { epanechnikov, triangular, uniform };

struct KernelSpec {
  KernelKind kind = KernelKind::epanechnikov;
};

struct KernelConstants {
  double roughness;     // R(K) = int K^2
  double second_moment; // mu2(K) = int x^2 K
};

inline double eval_kernel(KernelSpec spec, double x) noexcept {
  const double a = x < 0 ? -x : x;
  if (a > 1.0) return 0.0;
  switch (spec.kind) {
    case KernelKind::epanechnikov: return 0.75 * (1.0 - a * a);
    case KernelKind::triangular: return 1.0 - a;
    case KernelKind::uniform: return 0.5;
  }
  return 0.0;
}

KernelConstants kernel_constants(KernelSpec spec) noexcept;

/// Parses "epanechnikov" | "triangular" | "uniform"; throws validation_error.
KernelSpec parse_kernel(std::string_view name);
std::string kernel_name(KernelSpec spec);

}  // namespace lbentropy
