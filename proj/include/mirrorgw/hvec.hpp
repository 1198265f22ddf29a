#ifndef MIRRORGW_HVEC_HPP
#define MIRRORGW_HVEC_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <mirrorgw/alpha_poly.hpp>
#include <mirrorgw/tpoly.hpp>

namespace mirrorgw {

/// Closed range [lo, hi] of hbar-degrees.
struct HbarWindow {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
    bool contains(int j) const { return lo <= j && j <= hi; }
    friend bool operator==(const HbarWindow&, const HbarWindow&) = default;
};

struct Slot {
    int k;  // alpha-degree
    int j;  // hbar-degree
    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Element of the period space in the single-valued frame:
///   hbar^{-(n+1) alpha} * sum_{k,j} alpha^k hbar^j c_{k,j}(t).
///
/// The frame factor is implicit. Coefficients live on an hbar-window; data
/// that would move above the top of the window raises WindowOverflow, data
/// that falls below the bottom is dropped and recorded by raising
/// exact_from(), the lowest hbar-degree whose coefficients are exact.
class HVec {
public:
    HVec() = default;
    HVec(int n, HbarWindow window, std::size_t nvars, int degree);

    int n() const { return n_; }
    HbarWindow window() const { return window_; }
    int exact_from() const { return exact_from_; }
    std::size_t nvars() const { return nvars_; }
    int degree() const { return degree_; }

    const TPoly& at(int k, int j) const;
    TPoly& at(int k, int j);
    // Zero outside the window (above the top everything is zero by the
    // overflow contract; below the bottom nothing is known, so callers must
    // stay above exact_from()).
    TPoly get(int k, int j) const;

    void set_exact_from(int j);
    bool is_zero() const;
    // Highest hbar-degree with a nonzero coefficient, or nullopt.
    std::optional<int> top_degree() const;

    std::span<const TPoly> coeffs() const { return coeffs_; }
    std::span<TPoly> coeffs() { return coeffs_; }
    std::size_t index(int k, int j) const;

    HVec& operator+=(const HVec& other);
    HVec& operator-=(const HVec& other);

    HVec scaled(const TPoly& p) const;
    HVec scaled(const Rational& c) const;
    // (k, j) -> (k, j + m)
    HVec shift_hbar(int m) const;
    // (k, j) -> (k + 1, j), dropping k = n
    HVec apply_alpha() const;
    HVec times_alpha_poly(const AlphaPoly& c) const;
    // Widen to a window containing the current one; new slots are zero.
    HVec embed(HbarWindow wider) const;
    // Narrow to a sub-window; nonzero data above the new top overflows.
    HVec restricted(HbarWindow narrower) const;
    HVec derivative(std::size_t var) const;
    HVec truncated(int degree) const;
    HVec substituted(const Substitution& sub) const;
    // Coefficients with t-degree 0 only (the value at t = 0).
    HVec at_origin() const;

    std::string to_string() const;

private:
    void check_compatible(const HVec& other, const char* op) const;

    int n_ = 0;
    HbarWindow window_{};
    int exact_from_ = 0;
    std::size_t nvars_ = 0;
    int degree_ = 0;
    std::vector<TPoly> coeffs_;  // index (j - lo) * (n + 1) + k
};

HVec operator+(HVec a, const HVec& b);
HVec operator-(HVec a, const HVec& b);

/// First slot where a and b differ, scanning hbar-degrees [j_from, j_to]
/// from the top down and comparing after truncation to `degree`.
struct SlotDifference {
    Slot slot;
    std::string detail;
};
std::optional<SlotDifference> first_difference(const HVec& a, const HVec& b, int j_from, int j_to, int degree);

} // namespace mirrorgw

#endif
