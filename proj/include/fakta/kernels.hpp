// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <span>
#include <string_view>

// Dense double-precision kernels for the linear stance classifier.
//
// Every variant accumulates in the same order: four interleaved partial sums
// (element i goes to lane i % 4), combined as (l0 + l2) + (l1 + l3), then the
// tail added left to right. Multiplies and adds are never fused. The scalar
// and SIMD paths therefore return bit-identical results, which keeps trained
// models and pipeline output independent of the host CPU.
namespace fakta::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

// Best ISA supported by this CPU and build.
Isa detect();
// ISA used by the dispatching entry points below. Defaults to detect().
Isa active();
// Forces the dispatch target (tests, benchmarking). Unsupported targets fall
// back to Scalar. Not thread-safe with concurrent kernel calls.
void set_active(Isa isa);
bool supported(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// y *= alpha
void scale(double alpha, std::span<double> y);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> y);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> y);
}  // namespace neon
#endif

}  // namespace fakta::kernels
