// Copyright 2026 The qndsim Authors
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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace qnd {

/// Work units [0, n) are cut into fixed-size blocks. Each block is folded into
/// a fresh accumulator in index order, and block results are merged into the
/// total strictly in block order. The result therefore depends only on `n`
/// and `block`, never on the thread count or scheduling, even for
/// floating-point accumulators.
///
///   make()                      -> Acc
///   body(Acc&, begin, end)      folds units [begin, end)
///   merge(Acc& total, Acc&& b)  appends block b
template <typename MakeAcc, typename Body, typename Merge>
auto block_reduce(std::uint64_t n, std::uint64_t block, unsigned threads, MakeAcc make, Body body,
                  Merge merge) {
    using Acc = decltype(make());
    if (block == 0) block = 1;
    const std::uint64_t n_blocks = (n + block - 1) / block;
    Acc total = make();
    if (n_blocks == 0) return total;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(n_blocks, 1024))));

    if (threads == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            Acc acc = make();
            body(acc, b * block, std::min(n, (b + 1) * block));
            merge(total, std::move(acc));
        }
        return total;
    }

    std::atomic<std::uint64_t> next{0};
    std::mutex mutex;
    std::map<std::uint64_t, Acc> pending;
    std::uint64_t merged = 0;
    std::exception_ptr failure;

    auto worker = [&] {
        try {
            for (std::uint64_t b = next++; b < n_blocks; b = next++) {
                Acc acc = make();
                body(acc, b * block, std::min(n, (b + 1) * block));
                std::lock_guard lock(mutex);
                pending.emplace(b, std::move(acc));
                for (auto it = pending.find(merged); it != pending.end(); it = pending.find(merged)) {
                    merge(total, std::move(it->second));
                    pending.erase(it);
                    ++merged;
                }
            }
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            next = n_blocks;
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return total;
}

/// Calls fn(k) for every k in [0, n); each index is visited exactly once.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn fn, std::uint64_t block = 4096) {
    struct Nothing {};
    block_reduce(
        n, block, threads, [] { return Nothing{}; },
        [&](Nothing&, std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t k = begin; k < end; ++k) fn(k);
        },
        [](Nothing&, Nothing&&) {});
}

}  // namespace qnd
