// Copyright 2026 The liegroup-index Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace liegroup {

/// Worker count: LIEGROUP_THREADS if set, else hardware concurrency.
int worker_count();

/// Splits [0, n) into `slices` contiguous ranges (a fixed partition that does
/// not depend on the worker count) and runs body(slice, begin, end) for each,
/// distributing slices across workers. Callers reduce per-slice results in
/// slice order to stay deterministic. The first exception thrown by a body is
/// rethrown after all workers join.
void for_each_slice(std::size_t n, std::size_t slices,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace liegroup
