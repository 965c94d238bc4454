// Copyright 2026 The viergo Authors
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

#include "viergo/random.hpp"

namespace viergo {

std::uint64_t Mix64(std::uint64_t z) {
  z += UINT64_C(0x9E3779B97F4A7C15);
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

std::uint64_t StreamKey::Derive() const {
  std::uint64_t h = Mix64(seed);
  h = Mix64(h ^ Mix64(chain + UINT64_C(0x632BE59BD9B4E019)));
  h = Mix64(h ^ Mix64(static_cast<std::uint64_t>(phase) +
                      UINT64_C(0x8CB92BA72F3D8DD7)));
  return h;
}

RandomStream::RandomStream(const StreamKey& key) : engine_(key.Derive()) {}

RandomStream::RandomStream(std::uint64_t raw_seed) : engine_(Mix64(raw_seed)) {}

void RandomStream::FillGaussian(Vector& out, double sigma) {
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = sigma * normal_(engine_);
}

}  // namespace viergo
