#pragma once

// Complex vector kernels used by the dense linear algebra in this library.
//
// Every kernel has a portable scalar reference implementation. On x86-64
// builds an AVX2/FMA variant is compiled into a separate translation unit and
// selected at runtime when the host CPU supports it. The selection can be
// overridden with force_isa() or the RELAYNET_ISA environment variable
// ("scalar" or "avx2").

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace relaynet::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// True when the variant is compiled in and the host can execute it.
bool isa_supported(Isa isa);

// The variant currently used by the dispatching entry points below.
Isa active_isa();

// Pins the dispatch table to `isa`. Throws relaynet::InvalidArgument if the
// variant is not supported on this host.
void force_isa(Isa isa);

// sum_k conj(a[k]) * b[k]. Spans must have equal length.
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);

// sum_k a[k] * b[k]. Spans must have equal length.
cplx dotu(std::span<const cplx> a, std::span<const cplx> b);

// sum_k |a[k]|^2
double norm_sq(std::span<const cplx> a);

// Per-variant implementations; exposed for equivalence testing.
namespace scalar {
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
cplx dotu(const cplx* a, const cplx* b, std::size_t n);
double norm_sq(const cplx* a, std::size_t n);
}  // namespace scalar

namespace avx2 {
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
cplx dotu(const cplx* a, const cplx* b, std::size_t n);
double norm_sq(const cplx* a, std::size_t n);
}  // namespace avx2

}  // namespace relaynet::kernels
