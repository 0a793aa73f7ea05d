// Copyright 2026 The psdrec Authors
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

#ifndef PSDREC_SRC_PARALLEL_HPP
#define PSDREC_SRC_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psdrec::detail {

inline int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Calls body(k) for k in [0, n), splitting the range into contiguous
/// blocks, one per worker. Each index is visited exactly once, so bodies
/// that write only their own slot give the same result as a serial loop.
/// The first exception thrown by any worker is rethrown here.
template <typename Body>
void parallel_for(int n, int threads, Body &&body) {
    threads = std::min(resolve_threads(threads), std::max(1, n / 8));
    if (threads <= 1) {
        for (int k = 0; k < n; ++k) {
            body(k);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            int begin = static_cast<int>(static_cast<long long>(n) * w / threads);
            int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / threads);
            workers.emplace_back([&, begin, end] {
                try {
                    for (int k = begin; k < end; ++k) {
                        body(k);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace psdrec::detail

#endif  // PSDREC_SRC_PARALLEL_HPP
