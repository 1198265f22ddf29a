#include <doctest.h>

#include <mirrorgw/gw_oracle.hpp>
#include <mirrorgw/pipeline.hpp>

using namespace mirrorgw;

namespace {

int dimension_weight(const std::vector<int>& m)
{
    int w = 0;
    for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<int>(i + 1) * m[i];
    return w;
}

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("CP2 counts")
    {
        const GWTable t = reconstruct(2, 5);
        CHECK(t.get(1, {2}) == 1);
        CHECK(t.get(2, {5}) == 1);
        CHECK(t.get(3, {8}) == 12);
        CHECK(t.get(4, {11}) == 620);
        CHECK(t.get(5, {14}) == 87304);
        CHECK(t.get(2, {4}) == 0);
        CHECK_THROWS_AS(t.get(6, {17}), OracleFailure);
    }

    TEST_CASE("plane-curve recursion agrees with reconstruction")
    {
        const auto k = kontsevich_cp2(6);
        CHECK(k.at(1) == 1);
        CHECK(k.at(2) == 1);
        CHECK(k.at(3) == 12);
        CHECK(k.at(6) == 26312976);
        const GWTable t = reconstruct(2, 6);
        for (const auto& [d, N] : k) CHECK(t.get(d, {3 * d - 1}) == N);
    }

    TEST_CASE("CP3 counts")
    {
        const GWTable t = reconstruct(3, 2);
        CHECK(t.get(1, {0, 2}) == 1);
        CHECK(t.get(1, {2, 1}) == 1);
        CHECK(t.get(1, {4, 0}) == 2);
        CHECK(t.get(2, {8, 0}) == 92);
        CHECK(t.get(2, {0, 4}) == 0);
    }

    TEST_CASE("table invariants")
    {
        for (int n = 2; n <= 4; ++n) {
            const int dmax = n == 2 ? 5 : 2;
            const GWTable t = reconstruct(n, dmax);
            std::vector<int> seed(static_cast<std::size_t>(n - 1), 0);
            seed.back() = 2;
            CHECK(t.get(1, seed) == 1);
            for (const auto& [key, N] : t.entries) {
                const auto& [d, m] = key;
                CHECK(dimension_weight(m) == (n + 1) * d + n - 3);
                CHECK(is_integer(N));
                CHECK(N >= 0);
            }
        }
        const GWTable t1 = reconstruct(1, 3);
        CHECK(t1.entries.size() == 1);
        CHECK(t1.get(1, {}) == 1);
        CHECK(t1.get(2, {}) == 0);
    }

    TEST_CASE("oracle potential")
    {
        const Potential p1 = oracle_potential(reconstruct(1, 1), 3);
        CHECK(p1.phi.coeff(std::vector<int>{2, 1}) == make_rational(1, 2));

        const GWTable t = reconstruct(2, oracle_degree_needed(2, 8));
        const Potential p = oracle_potential(t, 8);
        CHECK(p.phi.coeff(std::vector<int>{0, 0, 8}) == make_rational(12, 40320));
        CHECK(p.phi.coeff(std::vector<int>{0, 1, 5}) == Rational(2) * 1 / factorial(5));
        CHECK(wdvv_check(p).passed);
        CHECK_THROWS_AS(oracle_potential(reconstruct(2, 1), 8), OracleFailure);
    }

    TEST_CASE("compare reports every discrepancy")
    {
        const GWTable t = reconstruct(2, oracle_degree_needed(2, 8));
        const Potential p = oracle_potential(t, 8);
        CHECK(compare(p, p).equal);
        Potential q = p;
        q.phi += TPoly::monomial(3, 8, std::vector<int>{0, 2, 5}, 1);
        const CompareReport r = compare(p, q);
        CHECK_FALSE(r.equal);
        REQUIRE(r.discrepancies.size() == 1);
        CHECK(r.discrepancies[0].exponents == std::vector<int>{0, 2, 5});
    }

    TEST_CASE("mirror potential equals the oracle")
    {
        for (auto [n, D] : {std::pair{1, 6}, {2, 8}, {3, 5}}) {
            const MirrorRun run = run_mirror(n, D, default_windows(n, D), MirrorOptions{std::nullopt, false, false, false, false, false, false});
            const Potential o = oracle_potential(reconstruct(n, oracle_degree_needed(n, D)), D);
            const CompareReport r = compare(run.phi, o);
            CHECK_MESSAGE(r.equal, "n=" << n << " D=" << D << ": " << r.discrepancies.size() << " discrepancies");
        }
    }
}
