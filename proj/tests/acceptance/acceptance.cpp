// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <mirrorgw/gw_oracle.hpp>
#include <mirrorgw/pipeline.hpp>

using namespace mirrorgw;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && passed) {
            passed = false;
            detail = what;
        }
    }
};

struct FullRun {
    MirrorRun run;
    std::vector<CheckResult> checks;   // every property check, oracle comparison included
    double seconds = 0;
};

FullRun full_run(int n, int D, std::uint64_t seed)
{
    const auto start = std::chrono::steady_clock::now();
    FullRun f;
    const PeriodWindows w = default_windows(n, D);
    f.run = run_mirror(n, D, w);
    f.checks = f.run.checks;
    for (const auto& c : random_unipotent_frames(n, seed, 3)) f.checks.push_back(frame_invariance_test(f.run, c));
    f.checks.push_back(stability_check(f.run, deeper_windows(w, n)));
    const Potential oracle = oracle_potential(reconstruct(n, oracle_degree_needed(n, D)), D);
    const CompareReport cmp = compare(f.run.phi, oracle);
    f.checks.push_back(cmp.equal ? CheckResult::pass("oracle.compare")
                                 : CheckResult::fail("oracle.compare", std::to_string(cmp.discrepancies.size()) +
                                                                           " coefficients differ"));
    f.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return f;
}

Rational gw_of(const MirrorRun& r, int d, const std::vector<int>& m)
{
    for (const auto& e : r.sigma.gw) {
        if (e.d == d && e.m == m) return e.N;
    }
    return Rational(-1);
}

Outcome end_to_end(const FullRun& f, const std::vector<GWEntry>& expected)
{
    Outcome o;
    for (const auto& c : f.checks) {
        if (c.name == "oracle.compare") o.require(c.passed, "mirror potential differs from oracle: " + c.witness);
    }
    for (const auto& e : expected) {
        const Rational got = gw_of(f.run, e.d, e.m);
        std::ostringstream os;
        os << "N(" << e.d << ";";
        for (int x : e.m) os << " " << x;
        os << ") = " << to_string(got) << ", expected " << to_string(e.N);
        o.require(got == e.N, os.str());
    }
    return o;
}

void report(int id, const std::string& title, const Outcome& o, double seconds, int& failures)
{
    std::printf("criterion %d %-42s %s (%.1f s)%s%s\n", id, title.c_str(), o.passed ? "PASS" : "FAIL", seconds,
                o.passed ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
}

} // namespace

int main()
{
    int failures = 0;
    const std::uint64_t seed = 2024;

    const FullRun cp1 = full_run(1, 6, seed);
    report(1, "CP1 end-to-end, D=6", end_to_end(cp1, {{1, {}, 1}}), cp1.seconds, failures);

    const FullRun cp2 = full_run(2, 11, seed);
    report(2, "CP2 end-to-end, D=11",
           end_to_end(cp2, {{1, {2}, 1}, {2, {5}, 1}, {3, {8}, 12}, {4, {11}, 620}}), cp2.seconds, failures);

    const FullRun cp2x = full_run(2, 14, seed);
    report(3, "CP2 extended, D=14", end_to_end(cp2x, {{5, {14}, 87304}}), cp2x.seconds, failures);

    const FullRun cp3 = full_run(3, 5, seed);
    report(4, "CP3 end-to-end, D=5", end_to_end(cp3, {{1, {0, 2}, 1}, {1, {2, 1}, 1}, {1, {4, 0}, 2}}), cp3.seconds,
           failures);

    {
        Outcome o;
        for (const FullRun* f : {&cp1, &cp2, &cp3}) {
            const ConnectionData& cd = f->run.cd;
            const int n = cd.n;
            for (int i = 0; i <= n; ++i) {
                for (int j = 0; j <= n; ++j) {
                    for (int k = 0; k <= n; ++k) {
                        const int want = (((i + j - k) % (n + 1)) + (n + 1)) % (n + 1) == 0 ? 1 : 0;
                        o.require(cd.at(i, j, k).constant_term() == want,
                                  "n=" + std::to_string(n) + " A^" + std::to_string(k) + "_{" + std::to_string(i) +
                                      std::to_string(j) + "}(0) = " + to_string(cd.at(i, j, k).constant_term()));
                    }
                }
            }
        }
        report(5, "A(0) is cyclic convolution, n=1,2,3", o, 0, failures);
    }

    {
        // Multiplication by p = d/dy1 restricted to y = (0, y1, 0), applied
        // three times to the unit, against the series e^{y1} 1.
        Outcome o;
        const int cut = 5;
        const ConnectionData& cd = cp2.run.cd;
        const std::vector<std::size_t> only1{1};
        auto slice = [&](int b, int c) { return cd.at(1, b, c).restricted_to(only1).truncated(cut); };
        std::vector<TPoly> v(3, TPoly(3, cut));
        v[0] = TPoly::constant(3, cut, 1);
        for (int step = 0; step < 3; ++step) {
            std::vector<TPoly> w(3, TPoly(3, cut));
            for (int b = 0; b <= 2; ++b) {
                for (int c = 0; c <= 2; ++c) w[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(b)] * slice(b, c);
            }
            v = w;
        }
        TPoly expy(3, cut);
        for (int k = 0; k <= cut; ++k) {
            expy += TPoly::monomial(3, cut, std::vector<int>{0, k, 0}, 1 / factorial(static_cast<unsigned>(k)));
        }
        o.require(cd.degree >= cut, "connection truncated below (y1)^5");
        o.require(v[0] == expy, "p^3 = " + v[0].to_string("y"));
        o.require(v[1].is_zero() && v[2].is_zero(), "p^3 has components off the unit");
        report(6, "CP2 small quantum cohomology slice", o, 0, failures);
    }

    {
        Outcome o;
        for (const FullRun* f : {&cp1, &cp2, &cp2x, &cp3}) {
            for (const auto& c : f->checks) {
                o.require(c.passed, "n=" + std::to_string(f->run.n) + " D=" + std::to_string(f->run.degree) + " " +
                                        c.name + ": " + c.witness);
            }
        }
        report(7, "property suite on every configuration", o, 0, failures);
    }

    {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        const GWTable t = reconstruct(2, 5);
        for (const auto& [d, N] : kontsevich_cp2(5)) {
            o.require(t.get(d, {3 * d - 1}) == N, "reconstruction and recursion differ at d=" + std::to_string(d));
        }
        for (auto [n, D] : {std::pair{1, 6}, {2, 11}, {2, 14}, {3, 5}}) {
            const CheckResult w = wdvv_check(oracle_potential(reconstruct(n, oracle_degree_needed(n, D)), D));
            o.require(w.passed, "oracle potential n=" + std::to_string(n) + " D=" + std::to_string(D) + ": " + w.witness);
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report(8, "oracle self-consistency", o, s, failures);
    }

    return failures == 0 ? 0 : 1;
}
