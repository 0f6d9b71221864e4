#include <array>

#include "lbentropy/errors.hpp"
#include "lbentropy/kernels.hpp"
#include "support.hpp"

using namespace lbentropy;

namespace {
constexpr std::array all_kernels = {KernelSpec{KernelKind::epanechnikov},
                                    KernelSpec{KernelKind::triangular},
                                    KernelSpec{KernelKind::uniform}};
}

TEST_CASE("epanechnikov values") {
  const KernelSpec k{KernelKind::epanechnikov};
  CHECK(eval_kernel(k, 0.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(eval_kernel(k, 1.0) == 0.0);
  CHECK(eval_kernel(k, 0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(eval_kernel(k, 1.0000001) == 0.0);
  CHECK(eval_kernel(k, -7.0) == 0.0);
}

TEST_CASE("kernel constants match closed forms") {
  auto e = kernel_constants({KernelKind::epanechnikov});
  CHECK(e.roughness == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(e.second_moment == doctest::Approx(0.2).epsilon(1e-15));
  auto u = kernel_constants({KernelKind::uniform});
  CHECK(u.roughness == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u.second_moment == doctest::Approx(1.0 / 3).epsilon(1e-15));
  auto t = kernel_constants({KernelKind::triangular});
  CHECK(t.roughness == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(t.second_moment == doctest::Approx(1.0 / 6).epsilon(1e-15));
}

TEST_CASE("moments by quadrature") {
  for (auto k : all_kernels) {
    CAPTURE(kernel_name(k));
    // Simpson on each half is exact up to rounding for these piecewise
    // polynomials of degree <= 3.
    auto moment = [k](int p) {
      auto f = [k, p](double x) { return std::pow(x, p) * eval_kernel(k, x); };
      return testing::simpson(f, -1, 0, 2000) + testing::simpson(f, 0, 1, 2000);
    };
    CHECK(std::abs(moment(0) - 1.0) < 1e-10);
    CHECK(std::abs(moment(1)) < 1e-10);
    CHECK(std::abs(moment(2) - kernel_constants(k).second_moment) < 1e-10);
  }
}

TEST_CASE("kernels are even, nonnegative and vanish outside [-1,1]") {
  for (auto k : all_kernels) {
    for (double x : testing::linspace(-3, 3, 6001)) {
      CHECK(eval_kernel(k, x) == eval_kernel(k, -x));
      CHECK(eval_kernel(k, x) >= 0.0);
      if (std::abs(x) > 1) CHECK(eval_kernel(k, x) == 0.0);
    }
  }
}

TEST_CASE("constants agree with trapezoid quadrature of eval_kernel") {
  for (auto k : all_kernels) {
    CAPTURE(kernel_name(k));
    const auto c = kernel_constants(k);
    auto sq = [k](double x) { return eval_kernel(k, x) * eval_kernel(k, x); };
    auto m2 = [k](double x) { return x * x * eval_kernel(k, x); };
    // Closed interval [-1, 1]: the uniform kernel's boundary value is part of it.
    CHECK(std::abs(testing::trapezoid(sq, -1, 1, 200001) - c.roughness) < 1e-8);
    CHECK(std::abs(testing::trapezoid(m2, -1, 1, 200001) - c.second_moment) < 1e-8);
  }
}

TEST_CASE("kernel names") {
  CHECK(parse_kernel("epanechnikov").kind == KernelKind::epanechnikov);
  CHECK(parse_kernel("triangular").kind == KernelKind::triangular);
  CHECK(parse_kernel("uniform").kind == KernelKind::uniform);
  CHECK_THROWS_AS(parse_kernel("gaussian"), validation_error);
}
