#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace mlab {

inline constexpr std::string_view kVersion = "0.1.0";

using cplx = std::complex<double>;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128_t;

// Error taxonomy.  std::invalid_argument / std::out_of_range are used for
// plain contract violations; the types below carry CLI exit-code semantics.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unsupported_scale : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_violation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// <x> = (1 + |x|^2)^(1/2)
inline double jbracket(double x) { return std::sqrt(1.0 + x * x); }

// Unique k >= 0 with 2^k <= x < 2^(k+1).  ilogb is exact for finite doubles.
inline int log_scale(double x) {
    if (!(x >= 1.0)) throw std::invalid_argument("log_scale: requires x >= 1");
    return std::ilogb(x);
}

// e(t) = exp(2*pi*i*t)
inline cplx unit_phase(double t) {
    double a = 6.283185307179586476925286766559 * t;
    return {std::cos(a), std::sin(a)};
}

inline unsigned worker_count() {
    if (const char* s = std::getenv("MLAB_THREADS")) {
        long v = std::atol(s);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Runs body(task) for task = 0..n_tasks-1 on up to worker_count() threads.
// Tasks are fixed units of work; callers combine per-task results in task
// order, so outputs do not depend on the thread count or scheduling.
inline void parallel_tasks(std::size_t n_tasks,
                           const std::function<void(std::size_t)>& body) {
    unsigned workers = worker_count();
    if (workers <= 1 || n_tasks <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) body(t);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    unsigned use = static_cast<unsigned>(std::min<std::size_t>(workers, n_tasks));
    pool.reserve(use);
    for (unsigned w = 0; w < use; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t t = next.fetch_add(1);
                if (t >= n_tasks) return;
                body(t);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace mlab
