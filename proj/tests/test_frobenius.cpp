#include <doctest.h>

#include <mirrorgw/frobenius.hpp>
#include <mirrorgw/pipeline.hpp>

using namespace mirrorgw;

namespace {

const MirrorRun& cached_run(int n, int D)
{
    static std::map<std::pair<int, int>, MirrorRun> cache;
    auto it = cache.find({n, D});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, D), run_mirror(n, D, default_windows(n, D))).first;
    return it->second;
}

TPoly y(const MirrorRun& r, int k, int D) { return TPoly::variable(static_cast<std::size_t>(r.n + 1), D, static_cast<std::size_t>(k)); }

void require_all_pass(const MirrorRun& r)
{
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.witness);
}

bool any_failed(const std::vector<CheckResult>& cs)
{
    return std::any_of(cs.begin(), cs.end(), [](const CheckResult& c) { return !c.passed; });
}

} // namespace

TEST_SUITE("frobenius")
{
    TEST_CASE("every check passes for small n")
    {
        require_all_pass(cached_run(1, 6));
        require_all_pass(cached_run(2, 8));
        require_all_pass(cached_run(3, 5));
    }

    TEST_CASE("connection at the origin is cyclic convolution")
    {
        for (int n = 1; n <= 3; ++n) {
            const ConnectionData& cd = cached_run(n, 5).cd;
            for (int a = 0; a <= n; ++a) {
                for (int b = 0; b <= n; ++b) {
                    for (int c = 0; c <= n; ++c) {
                        const Rational want = ((a + b - c) % (n + 1) + (n + 1)) % (n + 1) == 0 ? 1 : 0;
                        CHECK(cd.at(a, b, c).constant_term() == want);
                        CHECK(cd.at(a, b, c) == cd.at(b, a, c));
                    }
                }
            }
        }
    }

    TEST_CASE("identity direction")
    {
        for (int n = 1; n <= 3; ++n) {
            const ConnectionData& cd = cached_run(n, 5).cd;
            for (int b = 0; b <= n; ++b) {
                for (int c = 0; c <= n; ++c) {
                    const TPoly want = TPoly::constant(cd.dim(), cd.degree, b == c ? 1 : 0);
                    CHECK(cd.at(0, b, c) == want);
                }
            }
            for (const auto& A : cd.A) CHECK(A.derivative(0).is_zero());
        }
    }

    TEST_CASE("small quantum cohomology of CP2")
    {
        const MirrorRun& r = cached_run(2, 8);
        const ConnectionData& cd = r.cd;
        const std::vector<std::size_t> only1{1};
        // e^{y1} expansion as the reference.
        TPoly expy = TPoly::constant(3, cd.degree, 0);
        Rational f = 1;
        for (int k = 0; k <= cd.degree; ++k) {
            expy += TPoly::monomial(3, cd.degree, std::vector<int>{0, k, 0}, 1 / f);
            f *= k + 1;
        }
        CHECK(cd.at(1, 0, 1).restricted_to(only1) == TPoly::constant(3, cd.degree, 1));
        CHECK(cd.at(1, 1, 2).restricted_to(only1) == TPoly::constant(3, cd.degree, 1));
        CHECK(cd.at(1, 2, 0).restricted_to(only1) == expy);
        // p o p o p = e^{y1}: compose three multiplications by y1 on the unit.
        std::vector<TPoly> v(3, TPoly(3, cd.degree));
        v[0] = TPoly::constant(3, cd.degree, 1);
        for (int step = 0; step < 3; ++step) {
            std::vector<TPoly> w(3, TPoly(3, cd.degree));
            for (int b = 0; b <= 2; ++b) {
                for (int c = 0; c <= 2; ++c) w[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(b)] * cd.at(1, b, c).restricted_to(only1);
            }
            v = w;
        }
        CHECK(v[0] == expy);
        CHECK(v[1].is_zero());
        CHECK(v[2].is_zero());
    }

    TEST_CASE("flatness negative control")
    {
        ConnectionData cd = cached_run(2, 6).cd;
        CHECK_FALSE(any_failed(verify_flatness(cd)));
        const TPoly bump = TPoly::variable(cd.dim(), cd.degree, 2);
        cd.at(1, 1, 2) += bump;
        CHECK(any_failed(verify_flatness(cd)));
    }

    TEST_CASE("lowered tensor")
    {
        for (int n = 1; n <= 3; ++n) {
            const LoweredTensor& T = cached_run(n, 5).lowered;
            CHECK(T.symmetry.passed);
            for (int a = 0; a <= n; ++a) {
                for (int b = 0; b <= n; ++b) {
                    CHECK(T.at(a, b, 0) == TPoly::constant(static_cast<std::size_t>(n + 1), T.degree, a + b == n ? 1 : 0));
                    for (int c = 0; c <= n; ++c) {
                        const int s = a + b + c;
                        CHECK(T.at(a, b, c).constant_term() == ((s == n || s == 2 * n + 1) ? 1 : 0));
                    }
                }
            }
        }
        CHECK(cached_run(2, 5).lowered.at(1, 1, 0).constant_term() == 1);
    }

    TEST_CASE("potential from constant tensors")
    {
        for (int n = 1; n <= 4; ++n) {
            const auto nv = static_cast<std::size_t>(n + 1);
            LoweredTensor T;
            T.n = n;
            T.degree = 0;
            T.symmetry = CheckResult::pass("flatness.symmetry");
            T.T.assign(nv * nv * nv, TPoly(nv, 0));
            CHECK(potential_from_tensor(T).potential.phi.is_zero());
            for (int a = 0; a <= n; ++a) {
                for (int b = 0; b <= n; ++b) {
                    for (int c = 0; c <= n; ++c) {
                        if (a + b + c == n) T.T[(static_cast<std::size_t>(a) * nv + static_cast<std::size_t>(b)) * nv + static_cast<std::size_t>(c)] = TPoly::constant(nv, 0, 1);
                    }
                }
            }
            const IntegratedPotential ip = potential_from_tensor(T);
            CHECK(ip.integrability.passed);
            // (1/6) sum over ordered triples i + j + k = n.
            TPoly want(nv, 3);
            for (int i = 0; i <= n; ++i) {
                for (int j = 0; i + j <= n; ++j) {
                    std::vector<int> e(nv, 0);
                    ++e[static_cast<std::size_t>(i)];
                    ++e[static_cast<std::size_t>(j)];
                    ++e[static_cast<std::size_t>(n - i - j)];
                    want += TPoly::monomial(nv, 3, e, make_rational(1, 6));
                }
            }
            CHECK(ip.potential.phi == want);
            CHECK(wdvv_check(ip.potential).passed);
        }
    }

    TEST_CASE("CP1 potential")
    {
        const Potential& phi = cached_run(1, 6).phi;
        TPoly want = TPoly::monomial(2, 6, std::vector<int>{2, 1}, make_rational(1, 2));
        for (int m = 3; m <= 6; ++m) want += TPoly::monomial(2, 6, std::vector<int>{0, m}, 1 / factorial(static_cast<unsigned>(m)));
        CHECK(phi.phi == want);
    }

    TEST_CASE("Euler field")
    {
        for (int n = 1; n <= 3; ++n) {
            const MirrorRun& r = cached_run(n, 5);
            for (int a = 0; a <= n; ++a) {
                const Rational want = a == 1 ? Rational(-(n + 1)) : Rational(0);
                CHECK(r.cd.euler[static_cast<std::size_t>(a)].constant_term() == want);
                CHECK(r.cd.euler[static_cast<std::size_t>(a)].homogeneous_part(1) ==
                      (y(r, a, r.cd.euler[0].max_degree()) * Rational(a - 1)).homogeneous_part(1));
            }
            CHECK_FALSE(any_failed(euler_checks(r.psi_y, r.cd)));
            // Grading of g: (1 - a) + (1 - b) = 2 - n exactly when a + b = n.
            for (int a = 0; a <= n; ++a) {
                for (int b = 0; b <= n; ++b) CHECK(((2 - a - b == 2 - n) == (a + b == n)));
            }
        }
        ConnectionData bad = cached_run(2, 6).cd;
        bad.at(1, 1, 2) += TPoly::variable(bad.dim(), bad.degree, 2) * Rational(3);
        CHECK(any_failed(euler_checks(cached_run(2, 6).psi_y, bad)));
    }

    TEST_CASE("identity field")
    {
        const MirrorRun& r = cached_run(2, 6);
        CHECK(identity_check(r.psi_y, r.cd).passed);
        HVec bad = r.psi_y;
        bad.at(0, -5) += TPoly::variable(bad.nvars(), bad.degree(), 1);
        CHECK_FALSE(identity_check(bad, r.cd).passed);
    }

    TEST_CASE("WDVV")
    {
        const MirrorRun& r = cached_run(2, 8);
        CHECK(wdvv_check(r.phi_full).passed);
        Potential bad = r.phi_full;
        bad.phi += TPoly::monomial(3, bad.degree(), std::vector<int>{0, 0, 5}, 1);
        const CheckResult c = wdvv_check(bad);
        CHECK_FALSE(c.passed);
        CHECK_FALSE(c.witness.empty());
    }

    TEST_CASE("sigma table")
    {
        const MirrorRun& r = cached_run(2, 8);
        const SigmaTable& st = r.sigma;
        CHECK(st.check.passed);
        for (const auto& [m, s] : st.sigma) {
            if (m[0] == 0 && (m[1] % 3) != 2) CHECK(s == 0);
        }
        CHECK(st.sigma.at({1, 5}) / st.sigma.at({0, 5}) == 2);
        CHECK(st.sigma.at({0, 8}) / factorial(8) == make_rational(12, 40320));
        REQUIRE_FALSE(st.gw.empty());
        CHECK(st.gw.front() == GWEntry{1, {2}, 1});

        Potential bad = r.phi;
        bad.phi += TPoly::monomial(3, bad.degree(), std::vector<int>{0, 1, 3}, 1);
        CHECK_FALSE(sigma_extract(bad).check.passed);
    }

    TEST_CASE("frame invariance")
    {
        const MirrorRun& base = cached_run(2, 4);
        CHECK(frame_invariance_test(base, AlphaPoly::unit(2)).passed);
        CHECK(frame_invariance_test(base, AlphaPoly(2, {1, 1, 0})).passed);
        CHECK(frame_invariance_test(base, AlphaPoly(2, {1, 3, make_rational(-1, 2)})).passed);
        for (const auto& c : random_unipotent_frames(3, 99, 3)) CHECK(frame_invariance_test(cached_run(3, 4), c).passed);
        const auto f1 = random_unipotent_frames(2, 5, 3);
        CHECK(f1 == random_unipotent_frames(2, 5, 3));
        for (const auto& c : f1) CHECK(c[0] == 1);
    }
}
