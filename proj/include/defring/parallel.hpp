#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>

namespace defring {

enum class Exec { Serial, Parallel };

// Smallest i in [0, n) with fails(i), or n.  Both paths return the same value.
template <class F>
std::int64_t first_failure(std::int64_t n, F&& fails, Exec exec = Exec::Parallel)
{
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i)
            if (fails(i)) return i;
        return n;
    }
    std::int64_t best = n;
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1024) reduction(min : best)
    for (std::int64_t i = 0; i < n; ++i) {
        if (i >= best) continue;
        try {
            if (fails(i)) best = std::min(best, i);
        } catch (...) {
#pragma omp critical(defring_first_failure)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return best;
}

// Calls f(i) for every i in [0, n); f must only write to slot i of its output.
template <class F>
void for_each_index(std::int64_t n, F&& f, Exec exec = Exec::Parallel)
{
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
#pragma omp critical(defring_for_each)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace defring
