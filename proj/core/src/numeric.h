// Copyright 2026 The rbdephase Authors
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

#ifndef RBDEPHASE_SRC_NUMERIC_H
#define RBDEPHASE_SRC_NUMERIC_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rbdephase::detail {

// Compensated (Neumaier) summation.
class NeumaierSum {
   public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Running mean and variance, mergeable (Chan et al.).
struct Welford {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Welford &other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(other.count);
        const double n = n_a + n_b;
        const double delta = other.mean - mean;
        mean += delta * n_b / n;
        m2 += other.m2 + delta * delta * n_a * n_b / n;
        count += other.count;
    }

    double variance() const {
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }
    double std_error() const {
        return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
};

// Runs body(i) for i in [0, n) on up to threads workers. Each index is
// processed exactly once; results must be written to per-index slots so the
// outcome does not depend on scheduling. The first exception is rethrown.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::mutex mutex;
    std::size_t next = 0;
    std::exception_ptr error;
    auto run = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (next >= n || error) return;
                i = next++;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// Samples per block in Monte Carlo loops. Fixed so that block seeds, and
// hence results, are independent of the thread count.
inline constexpr std::uint64_t kMonteCarloBlock = 4096;

}  // namespace rbdephase::detail

#endif  // RBDEPHASE_SRC_NUMERIC_H
