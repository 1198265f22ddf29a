#ifndef MIRRORGW_TEST_SUPPORT_HPP
#define MIRRORGW_TEST_SUPPORT_HPP

#include <map>
#include <random>
#include <vector>

#include <mirrorgw/rational.hpp>
#include <mirrorgw/tpoly.hpp>

namespace testsupport {

using mirrorgw::make_rational;
using mirrorgw::Rational;
using mirrorgw::TPoly;

// Truncated polynomial in one variable, plain vector convolution.
inline std::vector<Rational> conv(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t len)
{
    std::vector<Rational> out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Dense exponent-map polynomial, used as an arithmetic reference for TPoly.
using Dense = std::map<std::vector<int>, Rational>;

inline Dense to_dense(const TPoly& p)
{
    Dense d;
    for (const auto& t : p.terms()) d[t.mono.exponents(p.nvars())] = t.coef;
    return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b, int max_degree)
{
    Dense out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            int deg = 0;
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                deg += e[i];
            }
            if (deg > max_degree) continue;
            out[e] += ca * cb;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

inline TPoly random_tpoly(std::mt19937_64& rng, std::size_t nvars, int degree, int terms, bool constant_term = true)
{
    std::vector<mirrorgw::Term> out;
    for (int i = 0; i < terms; ++i) {
        std::vector<int> e(nvars, 0);
        const int deg = static_cast<int>(rng() % static_cast<unsigned>(degree + 1));
        for (int k = 0; k < deg; ++k) ++e[rng() % nvars];
        if (!constant_term && deg == 0) continue;
        const long num = static_cast<long>(rng() % 21) - 10;
        const long den = static_cast<long>(rng() % 5) + 1;
        out.push_back({mirrorgw::Monomial::from_exponents(e), make_rational(num, den)});
    }
    return TPoly::from_terms(nvars, degree, std::move(out));
}

} // namespace testsupport

#endif
