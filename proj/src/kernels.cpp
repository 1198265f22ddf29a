#include <mirrorgw/kernels.hpp>

#include <map>
#include <unordered_map>

#include <mirrorgw/errors.hpp>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace mirrorgw::kernels {

namespace {

void check_same_ring(const TPoly& a, const TPoly& b)
{
    if (a.nvars() != b.nvars() || a.max_degree() != b.max_degree()) {
        throw TruncationMismatch("TPoly product: truncation mismatch (nvars " + std::to_string(a.nvars()) + " vs " +
                                 std::to_string(b.nvars()) + ", degree " + std::to_string(a.max_degree()) + " vs " +
                                 std::to_string(b.max_degree()) + ")");
    }
}

using Accumulator = std::unordered_map<std::uint64_t, Rational>;

// Terms of a in [begin, end) times all of b, pruned by degree. b is sorted by
// degree first, so the inner loop stops at the first term that overshoots.
void accumulate_products(const TPoly& a, std::size_t begin, std::size_t end, const TPoly& b, Accumulator& acc)
{
    const int top = a.max_degree();
    const auto at = a.terms();
    const auto bt = b.terms();
    Rational tmp;
    for (std::size_t i = begin; i < end; ++i) {
        const int room = top - at[i].mono.degree();
        for (const auto& tb : bt) {
            if (tb.mono.degree() > room) break;
            mpq_mul(tmp.get_mpq_t(), at[i].coef.get_mpq_t(), tb.coef.get_mpq_t());
            auto& slot = acc[(at[i].mono * tb.mono).packed()];
            mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
        }
    }
}

TPoly drain(std::size_t nvars, int degree, std::vector<Accumulator>& parts)
{
    std::vector<Term> terms;
    std::size_t total = 0;
    for (auto& p : parts) total += p.size();
    terms.reserve(total);
    for (auto& p : parts) {
        for (auto& [k, c] : p) terms.push_back({Monomial(k), std::move(c)});
    }
    return TPoly::from_terms(nvars, degree, std::move(terms));
}

} // namespace

int max_threads()
{
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

TPoly mul_serial(const TPoly& a, const TPoly& b)
{
    check_same_ring(a, b);
    std::map<std::uint64_t, Rational> acc;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            if (ta.mono.degree() + tb.mono.degree() > a.max_degree()) continue;
            acc[(ta.mono * tb.mono).packed()] += ta.coef * tb.coef;
        }
    }
    std::vector<Term> terms;
    for (auto& [k, c] : acc) {
        if (c != 0) terms.push_back({Monomial(k), std::move(c)});
    }
    return TPoly::from_terms(a.nvars(), a.max_degree(), std::move(terms));
}

TPoly mul_parallel(const TPoly& a, const TPoly& b)
{
    check_same_ring(a, b);
    if (a.is_zero() || b.is_zero()) return TPoly(a.nvars(), a.max_degree());
    const std::size_t na = a.size();
    int nthreads = 1;
#if defined(_OPENMP)
    if (na * b.size() >= parallel_mul_threshold && !omp_in_parallel()) nthreads = omp_get_max_threads();
#endif
    std::vector<Accumulator> parts(static_cast<std::size_t>(nthreads));
    if (nthreads == 1) {
        accumulate_products(a, 0, na, b, parts[0]);
    } else {
#if defined(_OPENMP)
#pragma omp parallel num_threads(nthreads)
        {
            const auto tid = static_cast<std::size_t>(omp_get_thread_num());
            const auto nt = static_cast<std::size_t>(omp_get_num_threads());
            // Interleave rows so low- and high-degree terms spread evenly.
            Accumulator& acc = parts[tid];
            for (std::size_t i = tid; i < na; i += nt) accumulate_products(a, i, i + 1, b, acc);
        }
#endif
    }
    return drain(a.nvars(), a.max_degree(), parts);
}

std::vector<TPoly> scale_all_serial(const TPoly& p, std::span<const TPoly> in)
{
    std::vector<TPoly> out;
    out.reserve(in.size());
    for (const auto& x : in) out.push_back(mul_serial(p, x));
    return out;
}

std::vector<TPoly> scale_all_parallel(const TPoly& p, std::span<const TPoly> in)
{
    // Exceptions must not escape the parallel region.
    for (const auto& x : in) check_same_ring(p, x);
    std::vector<TPoly> out(in.size());
    const auto count = static_cast<long>(in.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = mul_parallel(p, in[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<TPoly> combine_serial(std::span<const TPoly> weights, std::span<const SparseRow> rows, std::size_t nvars,
                                  int degree)
{
    std::vector<TPoly> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        TPoly acc(nvars, degree);
        for (const auto& [idx, s] : row.entries) acc.add_scaled(weights[idx], s);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<TPoly> combine_parallel(std::span<const TPoly> weights, std::span<const SparseRow> rows, std::size_t nvars,
                                    int degree)
{
    for (const auto& w : weights) {
        if (w.nvars() != nvars || w.max_degree() != degree) throw TruncationMismatch("combine: weight truncation mismatch");
    }
    std::vector<TPoly> out(rows.size());
    const auto count = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        Accumulator acc;
        Rational tmp;
        for (const auto& [idx, s] : row.entries) {
            for (const auto& t : weights[idx].terms()) {
                mpq_mul(tmp.get_mpq_t(), t.coef.get_mpq_t(), s.get_mpq_t());
                auto& slot = acc[t.mono.packed()];
                mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
            }
        }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto& [k, c] : acc) terms.push_back({Monomial(k), std::move(c)});
        out[static_cast<std::size_t>(i)] = TPoly::from_terms(nvars, degree, std::move(terms));
    }
    return out;
}

std::vector<TPoly> substitute_all_serial(const Substitution& sub, std::span<const TPoly> in)
{
    std::vector<TPoly> out;
    out.reserve(in.size());
    for (const auto& x : in) out.push_back(sub.apply(x));
    return out;
}

std::vector<TPoly> substitute_all_parallel(const Substitution& sub, std::span<const TPoly> in)
{
    if (!in.empty()) {
        // Surface the nvars check outside the parallel region.
        (void)sub.apply(TPoly(in[0].nvars(), in[0].max_degree()));
    }
    for (const auto& x : in) {
        if (x.nvars() != in[0].nvars()) throw TruncationMismatch("substitute_all: mixed variable counts");
    }
    std::vector<TPoly> out(in.size());
    const auto count = static_cast<long>(in.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = sub.apply(in[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace mirrorgw::kernels
