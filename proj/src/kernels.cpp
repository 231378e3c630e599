// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define FAKTA_X86 1
#endif

#if defined(__aarch64__)
#include <arm_neon.h>
#define FAKTA_NEON 1
#endif

namespace fakta::kernels {

namespace {

std::atomic<Isa>& active_isa() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#ifdef FAKTA_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#ifdef FAKTA_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect() {
  if (supported(Isa::Avx2)) return Isa::Avx2;
  if (supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active() { return active_isa().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  active_isa().store(supported(isa) ? isa : Isa::Scalar, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// Scalar reference

namespace scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  for (std::size_t i = 0; i < body; i += 4) {
    l0 += a[i] * b[i];
    l1 += a[i + 1] * b[i + 1];
    l2 += a[i + 2] * b[i + 2];
    l3 += a[i + 3] * b[i + 3];
  }
  double sum = (l0 + l2) + (l1 + l3);
  for (std::size_t i = body; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> y) {
  for (double& v : y) v *= alpha;
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// AVX2

#ifdef FAKTA_X86
namespace avx2 {

__attribute__((target("avx2"))) double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, prod);
  }
  // lanes (l0, l1, l2, l3) -> (l0 + l2, l1 + l3) -> sum
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (std::size_t i = body; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

__attribute__((target("avx2"))) void axpy(double alpha, std::span<const double> x,
                                          std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const std::size_t body = n - n % 4;
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), prod));
  }
  for (std::size_t i = body; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2"))) void scale(double alpha, std::span<double> y) {
  const std::size_t n = y.size();
  const std::size_t body = n - n % 4;
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < body; i += 4) {
    _mm256_storeu_pd(y.data() + i, _mm256_mul_pd(_mm256_loadu_pd(y.data() + i), va));
  }
  for (std::size_t i = body; i < n; ++i) y[i] *= alpha;
}

}  // namespace avx2
#endif

// ---------------------------------------------------------------------------
// NEON (two float64x2 accumulators hold lanes {0,1} and {2,3})

#ifdef FAKTA_NEON
namespace neon {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < body; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a.data() + i), vld1q_f64(b.data() + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a.data() + i + 2), vld1q_f64(b.data() + i + 2)));
  }
  const float64x2_t pair = vaddq_f64(acc01, acc23);
  double sum = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
  for (std::size_t i = body; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const std::size_t body = n - n % 2;
  const float64x2_t va = vdupq_n_f64(alpha);
  for (std::size_t i = 0; i < body; i += 2) {
    vst1q_f64(y.data() + i, vaddq_f64(vld1q_f64(y.data() + i), vmulq_f64(va, vld1q_f64(x.data() + i))));
  }
  for (std::size_t i = body; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> y) {
  const std::size_t n = y.size();
  const std::size_t body = n - n % 2;
  const float64x2_t va = vdupq_n_f64(alpha);
  for (std::size_t i = 0; i < body; i += 2) vst1q_f64(y.data() + i, vmulq_f64(vld1q_f64(y.data() + i), va));
  for (std::size_t i = body; i < n; ++i) y[i] *= alpha;
}

}  // namespace neon
#endif

// ---------------------------------------------------------------------------
// Dispatch

double dot(std::span<const double> a, std::span<const double> b) {
  switch (active()) {
#ifdef FAKTA_X86
    case Isa::Avx2: return avx2::dot(a, b);
#endif
#ifdef FAKTA_NEON
    case Isa::Neon: return neon::dot(a, b);
#endif
    default: return scalar::dot(a, b);
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  switch (active()) {
#ifdef FAKTA_X86
    case Isa::Avx2: return avx2::axpy(alpha, x, y);
#endif
#ifdef FAKTA_NEON
    case Isa::Neon: return neon::axpy(alpha, x, y);
#endif
    default: return scalar::axpy(alpha, x, y);
  }
}

void scale(double alpha, std::span<double> y) {
  switch (active()) {
#ifdef FAKTA_X86
    case Isa::Avx2: return avx2::scale(alpha, y);
#endif
#ifdef FAKTA_NEON
    case Isa::Neon: return neon::scale(alpha, y);
#endif
    default: return scalar::scale(alpha, y);
  }
}

}  // namespace fakta::kernels
