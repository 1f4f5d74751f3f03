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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "frameforecast/kernels.h"

namespace frameforecast {
namespace kernels {

#ifdef FRAMEFORECAST_HAVE_AVX2
const KernelTable &Avx2KernelTable();
#endif

namespace {

const KernelTable *SelectDefault() {
  const char *env = std::getenv("FRAMEFORECAST_SIMD");
  const std::string_view choice = env != nullptr ? env : "auto";
  if (choice == "scalar") return &ScalarKernels();
  const KernelTable *avx2 = Avx2Kernels();
  if (choice == "avx2" && avx2 == nullptr) {
    throw std::runtime_error("FRAMEFORECAST_SIMD=avx2 but AVX2 is unavailable");
  }
  return avx2 != nullptr ? avx2 : &ScalarKernels();
}

std::atomic<const KernelTable *> &ActiveSlot() {
  static std::atomic<const KernelTable *> slot{SelectDefault()};
  return slot;
}

}  // namespace

const KernelTable *Avx2Kernels() {
#ifdef FRAMEFORECAST_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") &&
                                __builtin_cpu_supports("fma");
  return supported ? &Avx2KernelTable() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable &ActiveKernels() { return *ActiveSlot().load(); }

void SetActiveKernels(const KernelTable &table) { ActiveSlot().store(&table); }

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("Dot: length mismatch");
  return ActiveKernels().dot(a.data(), b.data(), a.size());
}

double SquaredNorm(std::span<const double> x) {
  return ActiveKernels().dot(x.data(), x.data(), x.size());
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("Axpy: length mismatch");
  }
  ActiveKernels().axpy(alpha, x.data(), y.data(), x.size());
}

void Scale(double alpha, std::span<double> x) {
  ActiveKernels().scale(alpha, x.data(), x.size());
}

void AdamUpdate(std::span<double> params, std::span<const double> grads,
                std::span<double> m, std::span<double> v,
                const AdamStep &step) {
  const std::size_t n = params.size();
  if (grads.size() != n || m.size() != n || v.size() != n) {
    throw std::invalid_argument("AdamUpdate: length mismatch");
  }
  ActiveKernels().adam(params.data(), grads.data(), m.data(), v.data(), n,
                       step);
}

}  // namespace kernels
}  // namespace frameforecast
