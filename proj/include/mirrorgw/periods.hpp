#ifndef MIRRORGW_PERIODS_HPP
#define MIRRORGW_PERIODS_HPP

#include <optional>
#include <vector>

#include <mirrorgw/alpha_poly.hpp>
#include <mirrorgw/checks.hpp>
#include <mirrorgw/hvec.hpp>
#include <mirrorgw/tpoly.hpp>

namespace mirrorgw {

/// Constant (t-independent) element of the period space; stored as an HVec
/// whose coefficients have truncation degree 0.
struct PeriodSeries {
    HVec value;

    Rational coeff(int k, int j) const { return value.get(k, j).constant_term(); }
};

/// Gamma-stripped oscillating-integral period of the unperturbed function:
///   sum_{d=0}^{depth} hbar^{-(n+1)d} prod_{i=1}^{d} (alpha + i)^{-(n+1)}.
/// Throws WindowTooShallow when hbar^{-(n+1) depth} falls below the window.
PeriodSeries xi_series(int n, int depth, HbarWindow window);

/// Multiplication by f on the period space, i.e. d/d(hbar^{-1}). On stored
/// coefficients: alpha^k hbar^j -> ((n+1) alpha - j) alpha^k hbar^{j+1}.
HVec mult_by_f(const HVec& v);

/// phi^l = (mult_by_f)^l xi for l = 0..l_max, computed in `window`.
std::vector<PeriodSeries> f_periods(int n, int l_max, int depth, HbarWindow window);

/// d/dhbar including the frame factor. On stored coefficients:
/// alpha^k hbar^j -> (j - (n+1) alpha) alpha^k hbar^{j-1}.
HVec hbar_derivative(const HVec& v);

/// Coefficients of exp(sum_{m=0}^{n} t^m f^m / hbar) = sum_l s^l(t, hbar) f^l.
///
/// by_power[l][r] is the coefficient of hbar^{-r} in s^l: a homogeneous
/// polynomial of degree r in t^0..t^n, truncated at `degree`.
struct SCoefficients {
    int n = 0;
    int degree = 0;
    std::vector<std::vector<TPoly>> by_power;

    int l_max() const { return static_cast<int>(by_power.size()) - 1; }
    // Zero for l < 0 or beyond the stored range.
    TPoly get(int l, int r) const;
};

SCoefficients s_coefficients(int n, int degree, int l_max);

/// Windows used by the pipeline for a given truncation.
struct PeriodWindows {
    int depth = 0;         // instanton terms kept in xi
    HbarWindow columns{};  // where theta columns and the normalized period live
    HbarWindow phi{};      // taller window for the f-periods themselves
    int j_columns = 0;     // highest theta column index kept
};

/// Default windows: columns [-((n+1) depth + 2), 2n + D(n-1) + 2] with
/// depth = D + 2; optional overrides for depth and the top of the window.
PeriodWindows default_windows(int n, int degree, std::optional<int> depth = std::nullopt,
                              std::optional<int> window_top = std::nullopt);

/// Period matrix columns theta_j(t, hbar) = sum_{l >= j} s^{l-j}(t, hbar) phi^l.
///
/// The family also keeps the factored data (phi^l and s) used by the
/// normalization solve, and the constant alpha-frame it has been multiplied
/// by (the unit unless built through with_frame).
struct ThetaFamily {
    int n = 0;
    int degree = 0;
    PeriodWindows windows;
    std::vector<PeriodSeries> phi;
    SCoefficients s;
    std::vector<HVec> columns;
    AlphaPoly frame{1};

    HbarWindow window() const { return windows.columns; }
    int j_max() const { return static_cast<int>(columns.size()) - 1; }
    std::size_t nvars() const { return static_cast<std::size_t>(n + 1); }

    // Every column and period multiplied by the constant unit c(alpha).
    ThetaFamily with_frame(const AlphaPoly& c) const;
};

ThetaFamily theta_columns(int n, int degree, const PeriodWindows& windows);

/// Same columns computed from explicitly supplied periods (used by tests to
/// build deliberately corrupted families).
ThetaFamily theta_from_periods(int n, int degree, const PeriodWindows& windows, std::vector<PeriodSeries> phi);

/// (alpha - hbar d/dhbar / (n+1))^{n+1} xi = hbar^{-(n+1)} xi on exact slots.
CheckResult xi_ode_check(const PeriodSeries& xi, int n);

/// d theta_j / dt^a = hbar^{-1} theta_{j+a} for every column pair kept.
CheckResult griffiths_check(const ThetaFamily& family);

} // namespace mirrorgw

#endif
