#pragma once

// Grid evaluation of the kernel estimators. The default namespace holds the
// OpenMP kernels: each node only touches the observations inside its kernel
// window (found by binary search on the sorted sample) and nodes are split
// across threads. `serial::` holds the direct O(n) per-node definitions,
// kept as the reference the parallel kernels are tested and benchmarked
// against. Both sum in ascending index order, so results agree bitwise.

#include <span>

#include "lbentropy/kernels.hpp"
#include "lbentropy/sample.hpp"

namespace lbentropy {

namespace detail {
// sum_i K((x - Y_i)/h) / Y_i over the window |x - Y_i| <= h.
double weighted_kernel_sum(const LBSample& s, double h, KernelSpec k, double x);
// sum_i K((x - Y_i)/h) over the window.
double kernel_sum(const LBSample& s, double h, KernelSpec k, double x);
// sum_i K((T_i - u)/h) (Y_(i+1) - Y_(i)) over the window |T_i - u| <= h.
double spacing_kernel_sum(const LBSample& s, std::span<const double> jumps, double h,
                          KernelSpec k, double u);
}  // namespace detail

namespace grid {

void jones_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                   std::span<double> out);
/// Nodes with x <= 0 get 0.
void bhatta_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                    std::span<double> out);
void unweighted_density(const LBSample& s, double h, KernelSpec k,
                        std::span<const double> xs, std::span<double> out);
void q2n(const LBSample& s, double h, KernelSpec k, std::span<const double> us,
         std::span<double> out);
/// f_n(Q_n(u)) at each node.
void jones_at_sen_quantile(const LBSample& s, double h, KernelSpec k,
                           std::span<const double> us, std::span<double> out);

}  // namespace grid

namespace serial {

void jones_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                   std::span<double> out);
void bhatta_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                    std::span<double> out);
void unweighted_density(const LBSample& s, double h, KernelSpec k,
                        std::span<const double> xs, std::span<double> out);
void q2n(const LBSample& s, double h, KernelSpec k, std::span<const double> us,
         std::span<double> out);
void jones_at_sen_quantile(const LBSample& s, double h, KernelSpec k,
                           std::span<const double> us, std::span<double> out);

}  // namespace serial

}  // namespace lbentropy
