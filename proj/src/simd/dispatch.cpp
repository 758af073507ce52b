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

#include <atomic>
#include <cstdlib>
#include <string>

#include "nasrec/simd/kernels.hpp"

namespace nasrec::simd {

#ifndef NASREC_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_backend() {
  if (const char* env = std::getenv("NASREC_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::kScalar;
    if (v == "avx2" && backend_available(Backend::kAvx2)) return Backend::kAvx2;
  }
  return backend_available(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

struct ActiveState {
  std::atomic<Backend> backend{detect_backend()};
  std::atomic<const KernelTable*> table{nullptr};

  ActiveState() { table.store(lookup(backend.load())); }

  static const KernelTable* lookup(Backend b) {
    if (b == Backend::kAvx2) return avx2_kernels();
    return &scalar_kernels();
  }
};

ActiveState& state() {
  static ActiveState s;
  return s;
}

}  // namespace

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return avx2_kernels() != nullptr && cpu_has_avx2();
  }
  return false;
}

void set_backend(Backend backend) {
  if (!backend_available(backend)) backend = Backend::kScalar;
  state().backend.store(backend);
  state().table.store(ActiveState::lookup(backend));
}

Backend active_backend() { return state().backend.load(); }

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

const KernelTable& kernels() { return *state().table.load(std::memory_order_relaxed); }

}  // namespace nasrec::simd
