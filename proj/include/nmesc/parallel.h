// Copyright 2026 The nme-sc Authors.
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

#ifndef NMESC_PARALLEL_H_
#define NMESC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace nmesc {

// 0 means one worker per hardware thread. Always returns >= 1.
int ResolveThreads(int requested);

// Reads NME_SC_THREADS; unset or unparsable means 0 (auto).
int ThreadsFromEnvironment();

// Runs fn(0) ... fn(count - 1) on up to `threads` workers with a static
// interleaved schedule. If any call throws, the exception from the lowest
// index is rethrown after all workers join.
void ParallelFor(size_t count, int threads,
                 const std::function<void(size_t)>& fn);

}  // namespace nmesc

#endif  // NMESC_PARALLEL_H_
