#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tomo/linalg.hpp"
#include "tomo/su3_algebra.hpp"
#include "tomo/wigner.hpp"

namespace tomo::kernels {

// Node sums are split into fixed chunks, each summed serially, then combined by a
// pairwise tree in a fixed order, so results do not depend on the thread count.
inline constexpr std::size_t kChunk = 1024;

void set_threads(int n);
int max_threads();

namespace detail {

template <class F>
void guarded_parallel_for(long n, F&& body) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(tomo_kernel_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

// add(k, acc) adds the contribution of node k to acc (length len)
template <class F>
CVec reduce_nodes(std::size_t n, int len, F&& add) {
    const std::size_t chunks = n == 0 ? 1 : (n + kChunk - 1) / kChunk;
    std::vector<CVec> part(chunks, CVec::Zero(len));
    detail::guarded_parallel_for(static_cast<long>(chunks), [&](long c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t k = lo; k < hi; ++k) add(k, part[c]);
    });
    for (std::size_t stride = 1; stride < chunks; stride *= 2)
        for (std::size_t i = 0; i + stride < chunks; i += 2 * stride) part[i] += part[i + stride];
    return part[0];
}

// reference: one running sum in node order
template <class F>
CVec reduce_nodes_serial(std::size_t n, int len, F&& add) {
    CVec acc = CVec::Zero(len);
    for (std::size_t k = 0; k < n; ++k) add(k, acc);
    return acc;
}

// out[k] = f(k)
template <class F>
std::vector<double> map_nodes(std::size_t n, F&& f) {
    std::vector<double> out(n);
    detail::guarded_parallel_for(static_cast<long>((n + kChunk - 1) / kChunk), [&](long c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(n, lo + kChunk);
        for (std::size_t k = lo; k < hi; ++k) out[k] = f(k);
    });
    return out;
}

template <class F>
std::vector<double> map_nodes_serial(std::size_t n, F&& f) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = f(k);
    return out;
}

// G[(i*db + k), (j*db + l)] = sum_nodes w conj(Da_ij) Db_kl over an SU(3) grid,
// contracted factor by factor (left R23 axes, middle R12 axes, right R23 axes).
CMat su3_gram_factored(const GeneratorSet& a, const GeneratorSet& b, const GroupGrid& grid);
// same sum, one node at a time
CMat su3_gram_bruteforce(const GeneratorSet& a, const GeneratorSet& b, const GroupGrid& grid);

}  // namespace tomo::kernels
