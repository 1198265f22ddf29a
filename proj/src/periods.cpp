#include <mirrorgw/periods.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/kernels.hpp>

namespace mirrorgw {

namespace {

std::string slot_name(int k, int j) { return "(" + std::to_string(k) + ", " + std::to_string(j) + ")"; }

} // namespace

PeriodSeries xi_series(int n, int depth, HbarWindow window)
{
    if (n < 1) throw std::invalid_argument("xi_series: n must be >= 1");
    if (depth < 0) throw std::invalid_argument("xi_series: negative depth");
    const int bottom = -(n + 1) * depth;
    if (bottom < window.lo) {
        throw WindowTooShallow("xi_series: depth " + std::to_string(depth) + " needs hbar^" + std::to_string(bottom) +
                               " but the window starts at " + std::to_string(window.lo));
    }
    if (window.hi < 0) throw WindowTooShallow("xi_series: window must contain hbar^0");

    HVec v(n, window, static_cast<std::size_t>(n + 1), 0);
    AlphaPoly term = AlphaPoly::unit(n);
    for (int d = 0; d <= depth; ++d) {
        if (d > 0) {
            const AlphaPoly inv = alpha_inverse(AlphaPoly(n, {Rational(d), Rational(1)}));
            term = alpha_mul(term, alpha_pow(inv, static_cast<unsigned>(n + 1)));
        }
        for (int k = 0; k <= n; ++k) {
            v.at(k, -(n + 1) * d) = TPoly::constant(static_cast<std::size_t>(n + 1), 0, term[k]);
        }
    }
#ifdef MIRRORGW_CORRUPT_PERIODS
    // Test hook: perturb the first instanton coefficient.
    if (depth >= 1) v.at(0, -(n + 1)) += TPoly::constant(static_cast<std::size_t>(n + 1), 0, Rational(1));
#endif
    v.set_exact_from(-(n + 1) * (depth + 1) + 1);
    return PeriodSeries{std::move(v)};
}

HVec mult_by_f(const HVec& v)
{
    const int n = v.n();
    const HbarWindow w = v.window();
    HVec r(n, w, v.nvars(), v.degree());
    for (int j = w.lo; j <= w.hi; ++j) {
        for (int k = 0; k <= n; ++k) {
            const TPoly& c = v.at(k, j);
            if (c.is_zero()) continue;
            if (j + 1 > w.hi) {
                throw WindowOverflow("mult_by_f: slot " + slot_name(k, j) + " leaves the window top " +
                                         std::to_string(w.hi),
                                     k, j + 1);
            }
            if (k < n) r.at(k + 1, j + 1).add_scaled(c, Rational(n + 1));
            if (j != 0) r.at(k, j + 1).add_scaled(c, Rational(-j));
        }
    }
    r.set_exact_from(v.exact_from() + 1);
    return r;
}

std::vector<PeriodSeries> f_periods(int n, int l_max, int depth, HbarWindow window)
{
    if (l_max < 0) throw std::invalid_argument("f_periods: negative l_max");
    std::vector<PeriodSeries> out;
    out.reserve(static_cast<std::size_t>(l_max + 1));
    out.push_back(xi_series(n, depth, window));
    for (int l = 1; l <= l_max; ++l) out.push_back(PeriodSeries{mult_by_f(out.back().value)});
    return out;
}

HVec hbar_derivative(const HVec& v)
{
    const int n = v.n();
    const HbarWindow w = v.window();
    HVec r(n, w, v.nvars(), v.degree());
    for (int j = w.lo; j <= w.hi; ++j) {
        for (int k = 0; k <= n; ++k) {
            const TPoly& c = v.at(k, j);
            if (c.is_zero() || j - 1 < w.lo) continue;
            if (j != 0) r.at(k, j - 1).add_scaled(c, Rational(j));
            if (k < n) r.at(k + 1, j - 1).add_scaled(c, Rational(-(n + 1)));
        }
    }
    r.set_exact_from(v.exact_from() - 1);
    return r;
}

TPoly SCoefficients::get(int l, int r) const
{
    const auto nv = static_cast<std::size_t>(n + 1);
    if (l < 0 || l > l_max() || r < 0 || r > degree) return TPoly(nv, degree);
    return by_power[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)];
}

SCoefficients s_coefficients(int n, int degree, int l_max)
{
    if (n < 1 || degree < 0 || l_max < 0) throw std::invalid_argument("s_coefficients: bad arguments");
    const auto nv = static_cast<std::size_t>(n + 1);
    SCoefficients s;
    s.n = n;
    s.degree = degree;
    s.by_power.assign(static_cast<std::size_t>(l_max + 1),
                      std::vector<TPoly>(static_cast<std::size_t>(degree + 1), TPoly(nv, degree)));

    // power[l] = [f^l] X^r / r!, X = sum_m t^m f^m, advanced one r at a time.
    std::vector<TPoly> power(static_cast<std::size_t>(l_max + 1), TPoly(nv, degree));
    power[0] = TPoly::constant(nv, degree, Rational(1));
    s.by_power[0][0] = power[0];
    for (int r = 1; r <= degree; ++r) {
        std::vector<TPoly> next(static_cast<std::size_t>(l_max + 1), TPoly(nv, degree));
        for (int l = 0; l <= l_max; ++l) {
            for (int m = 0; m <= std::min(n, l); ++m) {
                const TPoly& prev = power[static_cast<std::size_t>(l - m)];
                if (prev.is_zero()) continue;
                std::vector<Term> terms;
                terms.reserve(prev.size());
                const Monomial tm = Monomial::variable(static_cast<std::size_t>(m));
                for (const auto& t : prev.terms()) terms.push_back({t.mono * tm, t.coef});
                next[static_cast<std::size_t>(l)] += TPoly::from_terms(nv, degree, std::move(terms));
            }
            next[static_cast<std::size_t>(l)] *= make_rational(1, r);
        }
        power = std::move(next);
        for (int l = 0; l <= l_max; ++l) s.by_power[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)] = power[static_cast<std::size_t>(l)];
    }
    return s;
}

PeriodWindows default_windows(int n, int degree, std::optional<int> depth, std::optional<int> window_top)
{
    PeriodWindows w;
    w.depth = depth.value_or(degree + 2);
    w.j_columns = 2 * n;
    const int lo = -((n + 1) * w.depth + 2);
    const int hi = window_top.value_or(2 * n + degree * (n - 1) + 2);
    w.columns = HbarWindow{lo, hi};
    w.phi = HbarWindow{lo, std::max(hi, w.j_columns + degree * n)};
    return w;
}

ThetaFamily theta_from_periods(int n, int degree, const PeriodWindows& windows, std::vector<PeriodSeries> phi)
{
    const int l_max = windows.j_columns + degree * n;
    if (static_cast<int>(phi.size()) <= l_max) {
        throw std::invalid_argument("theta_columns: need periods up to f^" + std::to_string(l_max));
    }
    if (windows.j_columns < n) throw std::invalid_argument("theta_columns: need at least columns 0..n");

    ThetaFamily fam;
    fam.n = n;
    fam.degree = degree;
    fam.windows = windows;
    fam.phi = std::move(phi);
    fam.s = s_coefficients(n, degree, l_max);
    fam.frame = AlphaPoly::unit(n);

    const auto nv = fam.nvars();
    const int width = degree + 1;
    std::vector<TPoly> weights;
    weights.reserve(static_cast<std::size_t>((l_max + 1) * width));
    for (int m = 0; m <= l_max; ++m) {
        for (int r = 0; r <= degree; ++r) weights.push_back(fam.s.get(m, r));
    }

    const HbarWindow cw = windows.columns;
    // Highest hbar-degree any column can reach: j + (n-1) r.
    const int reach = windows.j_columns + (n - 1) * degree;
    const int top = std::max(cw.hi, reach);
    for (int j = 0; j <= windows.j_columns; ++j) {
        std::vector<kernels::SparseRow> rows;
        std::vector<Slot> slots;
        int exact = cw.lo;
        for (int m = 0; j + m <= l_max; ++m) {
            for (int r = 0; r <= degree; ++r) {
                if (!weights[static_cast<std::size_t>(m * width + r)].is_zero()) {
                    exact = std::max(exact, fam.phi[static_cast<std::size_t>(j + m)].value.exact_from() - r);
                }
            }
        }
        for (int J = cw.lo; J <= top; ++J) {
            for (int k = 0; k <= n; ++k) {
                kernels::SparseRow row;
                for (int m = 0; j + m <= l_max; ++m) {
                    const HVec& p = fam.phi[static_cast<std::size_t>(j + m)].value;
                    for (int r = 0; r <= degree; ++r) {
                        const std::size_t idx = static_cast<std::size_t>(m * width + r);
                        if (weights[idx].is_zero()) continue;
                        const Rational c = p.get(k, J + r).constant_term();
                        if (c != 0) row.entries.emplace_back(idx, c);
                    }
                }
                if (row.entries.empty()) continue;
                rows.push_back(std::move(row));
                slots.push_back({k, J});
            }
        }
        const auto vals = kernels::combine_parallel(weights, rows, nv, degree);
        HVec col(n, cw, nv, degree);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i].is_zero()) continue;
            if (slots[i].j > cw.hi) {
                throw WindowOverflow("theta_columns: column " + std::to_string(j) + " reaches slot " +
                                         slot_name(slots[i].k, slots[i].j) + " above the window top " +
                                         std::to_string(cw.hi),
                                     slots[i].k, slots[i].j);
            }
            col.at(slots[i].k, slots[i].j) = vals[i];
        }
        col.set_exact_from(exact);
        fam.columns.push_back(std::move(col));
    }
    return fam;
}

ThetaFamily theta_columns(int n, int degree, const PeriodWindows& windows)
{
    const int l_max = windows.j_columns + degree * n;
    return theta_from_periods(n, degree, windows, f_periods(n, l_max, windows.depth, windows.phi));
}

ThetaFamily ThetaFamily::with_frame(const AlphaPoly& c) const
{
    if (c.n() != n) throw TruncationMismatch("with_frame: mismatched n");
    if (c[0] == 0) throw NotInvertible("with_frame: frame must be a unit");
    ThetaFamily r = *this;
    for (auto& p : r.phi) p.value = p.value.times_alpha_poly(c);
    for (auto& col : r.columns) col = col.times_alpha_poly(c);
    r.frame = alpha_mul(frame, c);
    return r;
}

CheckResult xi_ode_check(const PeriodSeries& xi, int n)
{
    const std::string name = "pf.xi_ode";
    const HVec& v = xi.value;
    const HbarWindow w = v.window();
    // (alpha - j/(n+1)) on the coefficient of hbar^j, applied n+1 times.
    HVec lhs = v;
    for (int step = 0; step <= n; ++step) {
        HVec next(n, w, v.nvars(), v.degree());
        for (int j = w.lo; j <= w.hi; ++j) {
            for (int k = 0; k <= n; ++k) {
                const TPoly& c = lhs.at(k, j);
                if (c.is_zero()) continue;
                if (k < n) next.at(k + 1, j) += c;
                if (j != 0) next.at(k, j).add_scaled(c, make_rational(-j, n + 1));
            }
        }
        next.set_exact_from(lhs.exact_from());
        lhs = std::move(next);
    }
    HVec rhs = v.shift_hbar(-(n + 1));
    const int from = std::max(lhs.exact_from(), rhs.exact_from());
    if (auto d = first_difference(lhs, rhs, from, w.hi, 0)) {
        return CheckResult::fail(name, "slot " + slot_name(d->slot.k, d->slot.j) + ": " + d->detail);
    }
    return CheckResult::pass(name);
}

CheckResult griffiths_check(const ThetaFamily& family)
{
    const std::string name = "pf.griffiths";
    const int n = family.n;
    for (int j = 0; j <= family.j_max(); ++j) {
        for (int a = 0; a <= n && j + a <= family.j_max(); ++a) {
            const HVec& col = family.columns[static_cast<std::size_t>(j)];
            HVec lhs;
            try {
                lhs = col.derivative(static_cast<std::size_t>(a)).shift_hbar(1);
            } catch (const WindowOverflow& e) {
                return CheckResult::fail(name, std::string("overflow: ") + e.what());
            }
            const HVec rhs = family.columns[static_cast<std::size_t>(j + a)].truncated(lhs.degree());
            const int from = std::max(lhs.exact_from(), rhs.exact_from());
            if (auto d = first_difference(lhs, rhs, from, family.window().hi, lhs.degree())) {
                return CheckResult::fail(name, "d theta_" + std::to_string(j) + "/dt^" + std::to_string(a) + " at slot " +
                                                   slot_name(d->slot.k, d->slot.j) + ": " + d->detail);
            }
        }
    }
    return CheckResult::pass(name);
}

} // namespace mirrorgw
