#include <doctest.h>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/normalization.hpp>
#include <mirrorgw/pipeline.hpp>

#include "support.hpp"

using namespace mirrorgw;

namespace {

bool same_on(const HVec& a, const HVec& b, int from, int to)
{
    return !first_difference(a, b, from, to, a.degree()).has_value();
}

} // namespace

TEST_SUITE("normalization")
{
    TEST_CASE("S0 / T projection")
    {
        const PeriodSeries xi = xi_series(1, 4, {-12, 3});
        const HVec t = project(xi.value, Part::T);
        for (int j = -10; j <= 3; ++j) {
            for (int k = 0; k <= 1; ++k) {
                const Rational want = (k == 0 && j == 0) ? Rational(1) : Rational(0);
                CHECK(t.get(k, j).constant_term() == want);
            }
        }
        for (int k = 0; k <= 3; ++k) {
            HVec v(3, {-3, 4}, 1, 0);
            v.at(k, k - 1) = TPoly::constant(1, 0, 1);
            CHECK(project(v, Part::S0).get(k, k - 1).constant_term() == 1);
            HVec w(3, {-3, 4}, 1, 0);
            w.at(k, k) = TPoly::constant(1, 0, 1);
            CHECK(project(w, Part::S0).is_zero());
        }
    }

    TEST_CASE("projection decomposition")
    {
        std::mt19937_64 rng(2);
        HVec v(3, {-5, 6}, 2, 3);
        for (auto& c : v.coeffs()) c = testsupport::random_tpoly(rng, 2, 3, 3);
        const HVec s = project(v, Part::S0);
        const HVec t = project(v, Part::T);
        CHECK(!first_difference(s + t, v, -5, 6, 3));
        for (int j = -5; j <= 6; ++j) {
            for (int k = 0; k <= 3; ++k) CHECK((s.get(k, j).is_zero() || t.get(k, j).is_zero()));
        }
    }

    TEST_CASE("transversality leading terms")
    {
        const ThetaFamily th = theta_columns(1, 3, default_windows(1, 3, std::nullopt, 2));
        const TransversalityReport rep = transversality_check(th);
        REQUIRE(rep.passed);
        auto lead = [&](int l, int i) {
            for (const auto& g : rep.leads) {
                if (g.l == l && g.i == i) return g;
            }
            FAIL("missing generator");
            return GeneratorLead{};
        };
        CHECK(lead(0, 0).slot == Slot{0, 0});
        CHECK(lead(0, 0).coeff == 1);
        CHECK(lead(1, 0).slot == Slot{1, 1});
        CHECK(lead(1, 0).coeff == 2);
        CHECK(lead(0, 1).slot == Slot{0, 1});
        CHECK(lead(0, 1).coeff == 1);
        CHECK(lead(1, 1).slot == Slot{1, 2});
        CHECK(lead(1, 1).coeff == 2);
        for (int n = 2; n <= 4; ++n) {
            const TransversalityReport r = transversality_check(theta_columns(n, 3, default_windows(n, 3)));
            CHECK(r.passed);
            CHECK(r.leads.front().slot == Slot{0, 0});
            CHECK(r.leads.front().coeff == 1);
        }
    }

    TEST_CASE("transversality fails when column n is zeroed")
    {
        for (int n = 1; n <= 3; ++n) {
            ThetaFamily th = theta_columns(n, 3, default_windows(n, 3));
            HVec& col = th.columns[static_cast<std::size_t>(n)];
            for (auto& c : col.coeffs()) c = TPoly(c.nvars(), c.max_degree());
            th.phi[static_cast<std::size_t>(n)].value = th.phi[static_cast<std::size_t>(n)].value.scaled(Rational(0));
            const TransversalityReport r = transversality_check(th);
            CHECK_FALSE(r.passed);
            CHECK_FALSE(r.witness.empty());
            CHECK_THROWS_AS(solve_normalized_period(th), SingularSolve);
        }
    }

    TEST_CASE("normalized period at low t-degree")
    {
        const int n = 1;
        const ThetaFamily th = theta_columns(n, 4, default_windows(n, 4));
        const NormalizedPeriod np = solve_normalized_period(th);
        const CheckResult nc = normalization_check(np);
        CHECK_MESSAGE(nc.passed, nc.witness);
        const HVec at0 = np.psi.at_origin();
        const HVec& xi = th.phi[0].value;
        for (int j = np.psi.exact_from(); j <= np.psi.window().hi; ++j) {
            for (int k = 0; k <= n; ++k) CHECK(at0.get(k, j).constant_term() == xi.get(k, j).constant_term());
        }
        // Degree 1 is hbar^{-1}(t0 phi0 + t1 phi1) with no correction.
        for (int j = np.psi.exact_from() + 2; j <= np.psi.window().hi - 1; ++j) {
            for (int k = 0; k <= n; ++k) {
                const TPoly lin = np.psi.get(k, j).homogeneous_part(1);
                CHECK(lin.coeff(std::vector<int>{1, 0}) == th.phi[0].coeff(k, j + 1));
                CHECK(lin.coeff(std::vector<int>{0, 1}) == th.phi[1].coeff(k, j + 1));
            }
        }
        const TPoly t0 = TPoly::variable(2, 4, 0);
        const TPoly t1 = TPoly::variable(2, 4, 1);
        CHECK(np.y_of_t[0] == t0);
        CHECK(np.y_of_t[1].homogeneous_part(1) == Rational(2) * t1.homogeneous_part(1));
    }

    TEST_CASE("mirror coordinates: linear part")
    {
        for (int n = 1; n <= 4; ++n) {
            const NormalizedPeriod np = solve_normalized_period(theta_columns(n, 3, default_windows(n, 3)));
            CHECK(np.y_of_t.size() == static_cast<std::size_t>(n + 1));
            Rational scale = 1;
            for (int k = 0; k <= n; ++k) {
                const TPoly& y = np.y_of_t[static_cast<std::size_t>(k)];
                CHECK(y.constant_term() == 0);
                const TPoly want = TPoly::variable(y.nvars(), y.max_degree(), static_cast<std::size_t>(k)) * scale;
                CHECK(y.homogeneous_part(1) == want.homogeneous_part(1));
                scale *= n + 1;
            }
            CHECK(np.t_of_y.after(np.y_of_t) == CoordMap::identity(static_cast<std::size_t>(n + 1), 3));
            CHECK(normalization_check(np).passed);
        }
    }

    TEST_CASE("reparametrized period")
    {
        for (int n = 1; n <= 3; ++n) {
            const int D = 5;
            const NormalizedPeriod np = solve_normalized_period(theta_columns(n, D, default_windows(n, D)));
            const HVec psi_y = reparametrize(np);
            for (int k = 0; k <= n; ++k) {
                const TPoly s = psi_y.get(k, k - 1) - np.omega0.get(k, k - 1);
                CHECK(s == TPoly::variable(psi_y.nvars(), D, static_cast<std::size_t>(k)));
            }
            CHECK(same_on(psi_y.at_origin(), np.psi.at_origin(), np.psi.exact_from(), np.psi.window().hi));
            // Substituting y(t) back returns the original period.
            const Substitution back(np.y_of_t.images(), psi_y.nvars(), D);
            CHECK(same_on(psi_y.substituted(back), np.psi, np.psi.exact_from(), np.psi.window().hi));
        }
    }

    TEST_CASE("deeper window leaves the period unchanged")
    {
        for (int n = 1; n <= 3; ++n) {
            const int D = 4;
            const PeriodWindows w = default_windows(n, D);
            const PeriodWindows deeper = deeper_windows(w, n);
            CHECK(deeper.columns.lo < w.columns.lo);
            CHECK(deeper.columns.hi > w.columns.hi);
            const NormalizedPeriod a = solve_normalized_period(theta_columns(n, D, w));
            const NormalizedPeriod b = solve_normalized_period(theta_columns(n, D, deeper));
            CHECK(same_on(a.psi, b.psi, std::max(a.psi.exact_from(), b.psi.exact_from()), b.psi.window().hi));
            CHECK(a.y_of_t == b.y_of_t);
        }
    }

    TEST_CASE("too shallow a window is reported")
    {
        CHECK_THROWS_AS(solve_normalized_period(theta_columns(2, 6, default_windows(2, 6, 1))), WindowTooShallow);
        CHECK_THROWS_AS(theta_columns(2, 6, default_windows(2, 6, std::nullopt, 3)), WindowOverflow);
    }
}
