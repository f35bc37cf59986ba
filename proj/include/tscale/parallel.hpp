#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace tscale {

/// Selects the OpenMP kernel or the serial reference loop. Both produce
/// bit-identical results: iterations are independent and every reduction
/// over their outputs runs serially in index order.
enum class Execution { Serial, Parallel };

namespace kernels {

/// out[i] = fn(i) for i in [0, n). If any iteration throws, the exception of
/// the lowest failing index is rethrown once the loop has finished.
template <typename T, typename Fn>
std::vector<T> map_indices(std::size_t n, Fn&& fn, Execution exec) {
    std::vector<T> out(n);
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
        return out;
    }

    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = fn(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

/// Number of threads an OpenMP region would use.
int max_threads() noexcept;

}  // namespace kernels
}  // namespace tscale
