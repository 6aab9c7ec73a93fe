// Built with -mavx2 -mfma. Only reached through the dispatcher after a CPUID
// check, so nothing here may be called from generic code paths.

#include <immintrin.h>

#include "relaynet/kernels.hpp"

namespace relaynet::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// even lanes minus odd lanes: (v0 - v1) + (v2 - v3)
inline double hsub_pairs(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

// Accumulates lane products a*b (acc_same) and a*swap(b) (acc_swap) over
// interleaved complex data, two complex values per register.
inline void accumulate(const cplx* a, const cplx* b, std::size_t n,
                       __m256d& acc_same, __m256d& acc_swap, std::size_t& done) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d same0 = _mm256_setzero_pd(), same1 = _mm256_setzero_pd();
  __m256d swap0 = _mm256_setzero_pd(), swap1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * k);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * k + 4);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * k);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * k + 4);
    same0 = _mm256_fmadd_pd(a0, b0, same0);
    same1 = _mm256_fmadd_pd(a1, b1, same1);
    swap0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), swap0);
    swap1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), swap1);
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * k);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * k);
    same0 = _mm256_fmadd_pd(a0, b0, same0);
    swap0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), swap0);
  }
  acc_same = _mm256_add_pd(same0, same1);
  acc_swap = _mm256_add_pd(swap0, swap1);
  done = k;
}

}  // namespace

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  __m256d same, swap;
  std::size_t k;
  accumulate(a, b, n, same, swap, k);
  // conj(a)*b: re = ar*br + ai*bi, im = ar*bi - ai*br
  double re = hsum(same);
  double im = hsub_pairs(swap);
  const cplx tail = scalar::dotc(a + k, b + k, n - k);
  return {re + tail.real(), im + tail.imag()};
}

cplx dotu(const cplx* a, const cplx* b, std::size_t n) {
  __m256d same, swap;
  std::size_t k;
  accumulate(a, b, n, same, swap, k);
  // a*b: re = ar*br - ai*bi, im = ar*bi + ai*br
  double re = hsub_pairs(same);
  double im = hsum(swap);
  const cplx tail = scalar::dotu(a + k, b + k, n - k);
  return {re + tail.real(), im + tail.imag()};
}

double norm_sq(const cplx* a, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= m; k += 8) {
    const __m256d v0 = _mm256_loadu_pd(p + k);
    const __m256d v1 = _mm256_loadu_pd(p + k + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < m; ++k) s += p[k] * p[k];
  return s;
}

}  // namespace relaynet::kernels::avx2
