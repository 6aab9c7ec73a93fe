#include <atomic>
#include <cstdlib>
#include <string>

#include "relaynet/errors.hpp"
#include "relaynet/kernels.hpp"

namespace relaynet::kernels {

#ifndef RELAYNET_WITH_AVX2
// Stubs so the avx2 namespace links on builds without the AVX2 unit;
// isa_supported(Isa::avx2) is false there, so these are never dispatched to.
namespace avx2 {
cplx dotc(const cplx* a, const cplx* b, std::size_t n) { return scalar::dotc(a, b, n); }
cplx dotu(const cplx* a, const cplx* b, std::size_t n) { return scalar::dotu(a, b, n); }
double norm_sq(const cplx* a, std::size_t n) { return scalar::norm_sq(a, n); }
}  // namespace avx2
#endif

namespace {

struct Table {
  cplx (*dotc)(const cplx*, const cplx*, std::size_t);
  cplx (*dotu)(const cplx*, const cplx*, std::size_t);
  double (*norm_sq)(const cplx*, std::size_t);
};

constexpr Table kScalar{&scalar::dotc, &scalar::dotu, &scalar::norm_sq};
constexpr Table kAvx2{&avx2::dotc, &avx2::dotu, &avx2::norm_sq};

bool host_has_avx2() {
#if defined(RELAYNET_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("RELAYNET_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && host_has_avx2()) return Isa::avx2;
  }
  return host_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& table() {
  return current().load(std::memory_order_relaxed) == Isa::avx2 ? kAvx2 : kScalar;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidArgument("kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) { return isa == Isa::scalar || host_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument("kernel variant '" + std::string(isa_name(isa)) +
                          "' is not supported on this host");
  }
  current().store(isa, std::memory_order_relaxed);
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  check_lengths(a.size(), b.size());
  return table().dotc(a.data(), b.data(), a.size());
}

cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
  check_lengths(a.size(), b.size());
  return table().dotu(a.data(), b.data(), a.size());
}

double norm_sq(std::span<const cplx> a) { return table().norm_sq(a.data(), a.size()); }

}  // namespace relaynet::kernels
