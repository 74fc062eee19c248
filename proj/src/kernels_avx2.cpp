#include "aislesim/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "kernels_detail.hpp"

namespace aislesim::kernels::avx2 {

namespace {

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

// Exact for |v| < 2^51, which covers every exponent we extract.
inline __m256d int64_to_double(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
  const __m256d shifted = _mm256_castsi256_pd(_mm256_add_epi64(v, magic));
  return _mm256_sub_pd(shifted, _mm256_castsi256_pd(magic));
}

// exp(x) for x in [-708, 709], Cephes-style rational approximation.
// |error| is within a couple of ulp over that range; inputs outside it are
// clamped (the library never evaluates exp there).
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = set1(1.4426950408889634073599);
  const __m256d c1 = set1(6.93145751953125e-1);
  const __m256d c2 = set1(1.42860682030941723212e-6);
  const __m256d p0 = set1(1.26177193074810590878e-4);
  const __m256d p1 = set1(3.02994407707441961300e-2);
  const __m256d p2 = set1(9.99999999999999999910e-1);
  const __m256d q0 = set1(3.00198505138664455042e-6);
  const __m256d q1 = set1(2.52448340349684104192e-3);
  const __m256d q2 = set1(2.27265548208155028766e-1);
  const __m256d q3 = set1(2.00000000000000000005e0);

  x = _mm256_min_pd(x, set1(709.4));
  x = _mm256_max_pd(x, set1(-708.3));

  const __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, set1(0.5)));
  __m256d r = _mm256_fnmadd_pd(n, c1, x);
  r = _mm256_fnmadd_pd(n, c2, r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d px = _mm256_fmadd_pd(p0, rr, p1);
  px = _mm256_fmadd_pd(px, rr, p2);
  px = _mm256_mul_pd(px, r);
  __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
  qx = _mm256_fmadd_pd(qx, rr, q2);
  qx = _mm256_fmadd_pd(qx, rr, q3);
  const __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  const __m256d y = _mm256_fmadd_pd(set1(2.0), e, set1(1.0));

  // Scale by 2^n through the exponent bits. n stays within int32 range.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(y, _mm256_castsi256_pd(bits));
}

// log(w) for w in (0, 2]; used with w = 1 - u, u in (0.29, 1).
inline __m256d log_pd(__m256d w) {
  const __m256d half = set1(0.5);
  const __m256d one = set1(1.0);
  const __m256d sqrth = set1(0.70710678118654752440);

  // Split w into mantissa in [0.5, 1) and exponent.
  const __m256i raw = _mm256_castpd_si256(w);
  const __m256i exp_bits = _mm256_srli_epi64(raw, 52);
  const __m256i exp_biased = _mm256_and_si256(exp_bits, _mm256_set1_epi64x(0x7ff));
  __m256d e = _mm256_sub_pd(int64_to_double(exp_biased), set1(1022.0));
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i half_bits = _mm256_set1_epi64x(0x3fe0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(raw, mant_mask), half_bits));

  const __m256d below = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), below);
  e = _mm256_sub_pd(e, _mm256_and_pd(below, one));

  const __m256d z = _mm256_sub_pd(m, one);
  const __m256d zz = _mm256_mul_pd(z, z);

  __m256d p = set1(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, z, set1(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, z, set1(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, z, set1(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, z, set1(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, z, set1(7.70838733755885391666e0));
  __m256d q = _mm256_add_pd(z, set1(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, z, set1(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, z, set1(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, z, set1(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, z, set1(2.31251620126765340583e1));

  __m256d y = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(z, zz), p), q);
  y = _mm256_fnmadd_pd(e, set1(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(half, zz, y);
  return _mm256_add_pd(_mm256_add_pd(z, y), _mm256_mul_pd(e, set1(0.693359375)));
}

// log1p(t) for |t| <= 0.293 (so 1+t stays within [1/sqrt2, sqrt2]).
inline __m256d log1p_small_pd(__m256d t) {
  __m256d p = set1(4.5270000862445199635215e-5);
  p = _mm256_fmadd_pd(p, t, set1(4.9854102823193375972212e-1));
  p = _mm256_fmadd_pd(p, t, set1(6.5787325942061044846969e0));
  p = _mm256_fmadd_pd(p, t, set1(2.9911919328553073277375e1));
  p = _mm256_fmadd_pd(p, t, set1(6.0949667980987787057556e1));
  p = _mm256_fmadd_pd(p, t, set1(5.7112963590585538103336e1));
  p = _mm256_fmadd_pd(p, t, set1(2.0039553499201281259648e1));
  __m256d q = _mm256_add_pd(t, set1(1.5062909083469192043167e1));
  q = _mm256_fmadd_pd(q, t, set1(8.3047565967967209469434e1));
  q = _mm256_fmadd_pd(q, t, set1(2.2176239823732856465394e2));
  q = _mm256_fmadd_pd(q, t, set1(3.0909872225312059774938e2));
  q = _mm256_fmadd_pd(q, t, set1(2.1642788614495947685003e2));
  q = _mm256_fmadd_pd(q, t, set1(6.0118660497603843919306e1));

  const __m256d zz = _mm256_mul_pd(t, t);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(t, zz), _mm256_div_pd(p, q));
  y = _mm256_fnmadd_pd(set1(0.5), zz, y);
  return _mm256_add_pd(t, y);
}

inline __m256d expm1m_pd(__m256d x) {
  // Series path, shared coefficients with the scalar backend.
  __m256d acc = set1(detail::kExpm1mSeries[detail::kSeriesTerms - 1]);
  for (int k = detail::kSeriesTerms - 2; k >= 0; --k) {
    acc = _mm256_fmadd_pd(acc, x, set1(detail::kExpm1mSeries[k]));
  }
  const __m256d xx = _mm256_mul_pd(x, x);
  const __m256d series = _mm256_mul_pd(_mm256_mul_pd(set1(0.5), xx), acc);

  const __m256d direct = _mm256_sub_pd(_mm256_sub_pd(exp_pd(x), set1(1.0)), x);
  const __m256d small = _mm256_cmp_pd(x, set1(detail::kSeriesCutoff), _CMP_LT_OQ);
  return _mm256_blendv_pd(direct, series, small);
}

}  // namespace

bool available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void expm1m(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    _mm256_storeu_pd(&out[i], expm1m_pd(_mm256_loadu_pd(&x[i])));
  }
  if (i < x.size()) {
    scalar::expm1m(x.subspan(i), out.subspan(i));
  }
}

void exp_neg(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256d neg = _mm256_sub_pd(zero, _mm256_loadu_pd(&x[i]));
    _mm256_storeu_pd(&out[i], exp_pd(neg));
  }
  if (i < x.size()) {
    scalar::exp_neg(x.subspan(i), out.subspan(i));
  }
}

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  assert(w.size() == v.size());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= w.size(); i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&v[i]), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&w[i + 4]), _mm256_loadu_pd(&v[i + 4]), acc1);
  }
  for (; i + 4 <= w.size(); i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&v[i]), acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  double total = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
  for (; i < w.size(); ++i) total += w[i] * v[i];
  return total;
}

void exp_icdf(std::span<const double> u, double mean, std::span<double> out) {
  assert(u.size() == out.size());
  const __m256d one = set1(1.0);
  const __m256d cutoff = set1(0.2928932188134524756);  // 1 - 1/sqrt(2)
  const __m256d neg_mean = set1(-mean);
  std::size_t i = 0;
  for (; i + 4 <= u.size(); i += 4) {
    const __m256d uu = _mm256_loadu_pd(&u[i]);
    const __m256d small = _mm256_cmp_pd(uu, cutoff, _CMP_LE_OQ);
    const __m256d via_log1p = log1p_small_pd(_mm256_sub_pd(_mm256_setzero_pd(), uu));
    const __m256d via_log = log_pd(_mm256_sub_pd(one, uu));
    const __m256d lg = _mm256_blendv_pd(via_log, via_log1p, small);
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(neg_mean, lg));
  }
  if (i < u.size()) {
    scalar::exp_icdf(u.subspan(i), mean, out.subspan(i));
  }
}

}  // namespace aislesim::kernels::avx2

#endif  // __AVX2__ && __FMA__
