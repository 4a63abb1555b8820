// Copyright 2026 The qsimnet Authors
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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qsimnet {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Work is split into
/// contiguous chunks; callers write results into per-index slots, so the
/// outcome never depends on the worker count. The first exception thrown by
/// any worker is rethrown.
template <class Fn> void parallel_for(std::size_t n, int workers, Fn &&fn) {
    const std::size_t w =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t begin = n * t / w;
        const std::size_t end = n * (t + 1) / w;
        threads.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto &th : threads) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace qsimnet
