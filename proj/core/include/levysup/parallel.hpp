/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace levysup {

/// Default number of replications per block. Blocks, not threads, define the reduction order.
inline constexpr std::uint64_t kDefaultBlock = 1024;

/// Runs body(rep, acc) for rep in [0, reps) and merges the per-block accumulators in block
/// order. The result depends on `reps` and `block` only, not on `workers`.
template <class Acc, class Body>
Acc run_blocks(std::uint64_t reps, unsigned workers, const Acc& proto, Body&& body,
               std::uint64_t block = kDefaultBlock) {
    if (block == 0) block = kDefaultBlock;
    const std::uint64_t nblocks = (reps + block - 1) / block;
    std::vector<Acc> parts(nblocks, proto);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        while (true) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            try {
                const std::uint64_t lo = b * block, hi = std::min(reps, lo + block);
                for (std::uint64_t r = lo; r < hi; ++r) body(r, parts[b]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(nblocks);
                return;
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(nblocks, 1))));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Acc total = proto;
    for (const Acc& p : parts) total.merge(p);
    return total;
}

}  // namespace levysup
