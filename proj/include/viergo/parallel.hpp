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

#pragma once

#include <cstddef>
#include <functional>

namespace viergo {

// Worker count from VIERGO_THREADS, falling back to the number of logical
// cores. Always >= 1.
int DefaultThreadCount();

// Calls body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; results must be written to index-keyed slots. The
// first exception thrown by any body is rethrown after all workers join.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace viergo
