#include "aislesim/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <string>

#include "kernels_detail.hpp"

namespace aislesim::kernels {

namespace {

double expm1m_one(double x) {
  if (x < detail::kSeriesCutoff) {
    double acc = detail::kExpm1mSeries[detail::kSeriesTerms - 1];
    for (int k = detail::kSeriesTerms - 2; k >= 0; --k) {
      acc = acc * x + detail::kExpm1mSeries[k];
    }
    return 0.5 * x * x * acc;
  }
  return std::expm1(x) - x;
}

}  // namespace

namespace scalar {

void expm1m(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = expm1m_one(x[i]);
}

void exp_neg(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::exp(-x[i]);
}

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  assert(w.size() == v.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * v[i];
  return acc;
}

void exp_icdf(std::span<const double> u, double mean, std::span<double> out) {
  assert(u.size() == out.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = -mean * std::log1p(-u[i]);
}

}  // namespace scalar

#if !defined(AISLESIM_HAVE_AVX2_TU)
namespace avx2 {
bool available() { return false; }
void expm1m(std::span<const double> x, std::span<double> out) { scalar::expm1m(x, out); }
void exp_neg(std::span<const double> x, std::span<double> out) { scalar::exp_neg(x, out); }
double weighted_sum(std::span<const double> w, std::span<const double> v) {
  return scalar::weighted_sum(w, v);
}
void exp_icdf(std::span<const double> u, double mean, std::span<double> out) {
  scalar::exp_icdf(u, mean, out);
}
}  // namespace avx2
#endif

namespace {

struct Backend {
  void (*expm1m)(std::span<const double>, std::span<double>);
  void (*exp_neg)(std::span<const double>, std::span<double>);
  double (*weighted_sum)(std::span<const double>, std::span<const double>);
  void (*exp_icdf)(std::span<const double>, double, std::span<double>);
  std::string_view name;
};

constexpr Backend kScalarBackend{scalar::expm1m, scalar::exp_neg, scalar::weighted_sum,
                                 scalar::exp_icdf, "scalar"};

Backend pick_backend() {
  const char* req = std::getenv("AISLESIM_KERNELS");
  const bool want_scalar = req != nullptr && std::string(req) == "scalar";
  if (!want_scalar && avx2::available()) {
    return Backend{avx2::expm1m, avx2::exp_neg, avx2::weighted_sum, avx2::exp_icdf, "avx2"};
  }
  return kScalarBackend;
}

const Backend& backend() {
  static const Backend b = pick_backend();
  return b;
}

}  // namespace

void expm1m(std::span<const double> x, std::span<double> out) { backend().expm1m(x, out); }

void exp_neg(std::span<const double> x, std::span<double> out) { backend().exp_neg(x, out); }

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  return backend().weighted_sum(w, v);
}

void exp_icdf(std::span<const double> u, double mean, std::span<double> out) {
  backend().exp_icdf(u, mean, out);
}

std::string_view active_backend() { return backend().name; }

}  // namespace aislesim::kernels
