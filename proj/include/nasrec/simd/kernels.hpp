// Copyright 2026 The nasrec Authors
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

#pragma once

// Dense double-precision kernels used by every forward and backward pass.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The active table is picked once at startup from CPUID and
// can be overridden with NASREC_SIMD=scalar|avx2 or set_backend(). Results of
// the two backends agree to rounding (reduction order differs); a given
// backend is bit-reproducible run to run.

#include <cstddef>
#include <string_view>

namespace nasrec::simd {

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = W x, W row-major rows x cols
  void (*gemv)(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y += W^T x, W row-major rows x cols, x has `rows` entries, y has `cols`
  void (*gemv_t_acc)(const double* w, std::size_t rows, std::size_t cols, const double* x,
                     double* y);
  // A += alpha * x y^T, A row-major rows x cols
  void (*ger_acc)(double alpha, const double* x, std::size_t rows, const double* y,
                  std::size_t cols, double* a);
};

const KernelTable& scalar_kernels();
// Nullptr when the variant was not compiled in.
const KernelTable* avx2_kernels();

bool backend_available(Backend backend);
// Not thread-safe with respect to in-flight kernel calls; call before work starts.
void set_backend(Backend backend);
Backend active_backend();
std::string_view backend_name(Backend backend);

const KernelTable& kernels();

}  // namespace nasrec::simd
