#ifndef MIRRORGW_KERNELS_HPP
#define MIRRORGW_KERNELS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <mirrorgw/rational.hpp>
#include <mirrorgw/tpoly.hpp>

// Hot loops of the pipeline. Each kernel has a plain serial reference
// version and an OpenMP version; exact arithmetic makes their results
// bit-identical, which the kernel tests assert.
namespace mirrorgw::kernels {

// Truncated product. The reference walks every pair of terms; the parallel
// version prunes by degree and splits the left operand across threads.
TPoly mul_serial(const TPoly& a, const TPoly& b);
TPoly mul_parallel(const TPoly& a, const TPoly& b);

// out[i] = p * in[i] for every i.
std::vector<TPoly> scale_all_serial(const TPoly& p, std::span<const TPoly> in);
std::vector<TPoly> scale_all_parallel(const TPoly& p, std::span<const TPoly> in);

// out[i] = sum_j weights[j] * scalars[i][j]; rows of scalars are sparse lists
// of (index into weights, scalar). This is the shape of "series with
// polynomial weights times constant period vectors".
struct SparseRow {
    std::vector<std::pair<std::size_t, Rational>> entries;
};
std::vector<TPoly> combine_serial(std::span<const TPoly> weights, std::span<const SparseRow> rows,
                                  std::size_t nvars, int degree);
std::vector<TPoly> combine_parallel(std::span<const TPoly> weights, std::span<const SparseRow> rows,
                                    std::size_t nvars, int degree);

// out[i] = sub.apply(in[i]).
std::vector<TPoly> substitute_all_serial(const Substitution& sub, std::span<const TPoly> in);
std::vector<TPoly> substitute_all_parallel(const Substitution& sub, std::span<const TPoly> in);

// Below this many term pairs the parallel product runs on one thread.
inline constexpr std::size_t parallel_mul_threshold = 4096;

int max_threads();

} // namespace mirrorgw::kernels

#endif
