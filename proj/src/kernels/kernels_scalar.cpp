#include "relaynet/kernels.hpp"

namespace relaynet::kernels::scalar {

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

cplx dotu(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

double norm_sq(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  }
  return s;
}

}  // namespace relaynet::kernels::scalar
