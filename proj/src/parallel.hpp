// SPDX-License-Identifier: Apache-2.0
//
// cfimage - step-frequency array imaging with coherence-factor filtering
// Copyright (C) 2026 The cfimage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cfimage::detail
{
    // Runs body(begin, end) over contiguous blocks of [0, count) on up to `threads` threads.
    // Each index is visited by exactly one call, so per-index results do not depend on the split.
    template <class Body>
    void parallel_for_blocks(std::size_t count, unsigned threads, Body &&body)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t workers = std::min<std::size_t>(threads, count);
        if (workers <= 1)
        {
            body(std::size_t{0}, count);
            return;
        }

        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            const std::size_t chunk = (count + workers - 1) / workers;
            for (std::size_t w = 0; w < workers; ++w)
            {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(count, begin + chunk);
                pool.emplace_back([&, w, begin, end]
                                  {
                                      try
                                      {
                                          if (begin < end)
                                              body(begin, end);
                                      }
                                      catch (...)
                                      {
                                          errors[w] = std::current_exception();
                                      } });
            }
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}
