// Copyright 2026 The Frameforecast Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRAMEFORECAST_KERNELS_H_
#define FRAMEFORECAST_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>

namespace frameforecast {
namespace kernels {

// Hyper-parameters and bias-correction terms of one adaptive-moment step.
struct AdamStep {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // 1 - beta1^t and 1 - beta2^t for the current step t.
  double bias_correction1 = 1.0;
  double bias_correction2 = 1.0;
};

// Function table for one instruction-set level. All entries operate on
// contiguous arrays of doubles of length n; no alignment is assumed.
struct KernelTable {
  const char *name;
  double (*dot)(const double *a, const double *b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double *x, double *y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double *x, std::size_t n);
  void (*adam)(double *params, const double *grads, double *m, double *v,
               std::size_t n, const AdamStep &step);
};

// Portable reference implementation. Always available.
const KernelTable &ScalarKernels();

// AVX2+FMA implementation, or nullptr when the binary was built without it
// or the running CPU lacks the instructions.
const KernelTable *Avx2Kernels();

// The table used by the free functions below. Chosen once on first use:
// AVX2 when available, scalar otherwise. The FRAMEFORECAST_SIMD environment
// variable ("scalar", "avx2", "auto") overrides the choice.
const KernelTable &ActiveKernels();

// Replaces the active table. Intended for tests and benchmarks; not
// thread-safe with respect to concurrent kernel calls.
void SetActiveKernels(const KernelTable &table);

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredNorm(std::span<const double> x);
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
void Scale(double alpha, std::span<double> x);
void AdamUpdate(std::span<double> params, std::span<const double> grads,
                std::span<double> m, std::span<double> v,
                const AdamStep &step);

}  // namespace kernels
}  // namespace frameforecast

#endif  // FRAMEFORECAST_KERNELS_H_
