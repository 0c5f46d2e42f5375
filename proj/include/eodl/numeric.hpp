#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace eodl {

// Neumaier-compensated accumulator. Reductions built on it are
// order-independent to well below the 1e-9 relative agreement the
// library promises between serial and parallel evaluation.
class CompensatedSum {
public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
    CompensatedSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
}

// Deterministic RNG helpers. mt19937_64 is fully specified by the
// standard; the bounded draws below avoid std::uniform_int_distribution,
// whose output is implementation-defined, so seeded sequences are
// reproducible across platforms and standard libraries.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform over [0, bound) via rejection sampling
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // uniform over [0, 1) with 53-bit resolution
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Worker cap: EO_DOWNLINK_THREADS, else hardware concurrency.
inline unsigned worker_thread_cap() {
    if (const char* env = std::getenv("EO_DOWNLINK_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static-partition parallel loop. Each index writes only its own output
// slot, so results do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_thread_cap(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace eodl
