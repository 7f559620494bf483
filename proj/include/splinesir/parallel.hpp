/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SPLINESIR_PARALLEL_HPP
#define SPLINESIR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace splinesir {

// Worker count: SPLINESIR_THREADS if set, else the hardware concurrency.
unsigned worker_count();

// Calls task(i) for every i in [0, count), spread over worker_count() threads.
// Callers keep results per task index so that reductions stay order-fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace splinesir

#endif  // SPLINESIR_PARALLEL_HPP
