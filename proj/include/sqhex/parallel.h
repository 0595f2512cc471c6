// Copyright 2026 The sqhex Authors.
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

#ifndef SQHEX_PARALLEL_H_
#define SQHEX_PARALLEL_H_

#include <functional>

namespace sqhex {

// Runs body(0..count-1) on up to `threads` workers (0: hardware concurrency).
// Indices are handed out dynamically; the first exception is rethrown after
// all workers stop.
void parallel_for(int count, const std::function<void(int)>& body, int threads = 0);

}  // namespace sqhex

#endif  // SQHEX_PARALLEL_H_
