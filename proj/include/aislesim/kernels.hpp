#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Batch math kernels used by the stopping boundary, the expected-return DP
// quadrature, and mission cost sampling. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant selected once at runtime.
// The variants are equivalence-tested against each other; callers only see
// the dispatching entry points.
namespace aislesim::kernels {

// out[i] = expm1(x[i]) - x[i], for x[i] >= 0.
// This is the kernel of the stopping boundary curve; it is evaluated with a
// series below x = 0.5 so the result keeps full relative precision where
// expm1(x) and x cancel.
void expm1m(std::span<const double> x, std::span<double> out);

// out[i] = exp(-x[i]), for x[i] >= 0.
void exp_neg(std::span<const double> x, std::span<double> out);

// sum_i w[i] * v[i]. Spans must have equal length.
double weighted_sum(std::span<const double> w, std::span<const double> v);

// Exponential inverse CDF: out[i] = -mean * log1p(-u[i]), u[i] in [0, 1).
void exp_icdf(std::span<const double> u, double mean, std::span<double> out);

// Name of the backend the dispatcher picked: "avx2" or "scalar".
// Honors AISLESIM_KERNELS=scalar|avx2 from the environment (falls back to
// scalar when avx2 is requested but unsupported).
std::string_view active_backend();

// Reference implementations, exposed for equivalence tests.
namespace scalar {
void expm1m(std::span<const double> x, std::span<double> out);
void exp_neg(std::span<const double> x, std::span<double> out);
double weighted_sum(std::span<const double> w, std::span<const double> v);
void exp_icdf(std::span<const double> u, double mean, std::span<double> out);
}  // namespace scalar

namespace avx2 {
// True when the binary carries the AVX2 translation unit and the CPU
// reports AVX2+FMA.
bool available();
void expm1m(std::span<const double> x, std::span<double> out);
void exp_neg(std::span<const double> x, std::span<double> out);
double weighted_sum(std::span<const double> w, std::span<const double> v);
void exp_icdf(std::span<const double> u, double mean, std::span<double> out);
}  // namespace avx2

}  // namespace aislesim::kernels
