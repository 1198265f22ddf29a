#ifndef MIRRORGW_ALPHA_POLY_HPP
#define MIRRORGW_ALPHA_POLY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include <mirrorgw/rational.hpp>

namespace mirrorgw {

/// Element of the nilpotent algebra Q[alpha]/alpha^(n+1).
///
/// Coefficient k multiplies alpha^k. Every product discards alpha-degrees
/// above n.
class AlphaPoly {
public:
    explicit AlphaPoly(int n);
    AlphaPoly(int n, std::initializer_list<Rational> coeffs);
    AlphaPoly(int n, std::vector<Rational> coeffs);

    static AlphaPoly unit(int n);

    int n() const { return n_; }
    const Rational& operator[](int k) const { return coeffs_[k]; }
    Rational& operator[](int k) { return coeffs_[k]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_unit_element() const;
    bool is_zero() const;

    friend bool operator==(const AlphaPoly&, const AlphaPoly&) = default;

    std::string to_string() const;

private:
    int n_;
    std::vector<Rational> coeffs_;
};

AlphaPoly alpha_add(const AlphaPoly& a, const AlphaPoly& b);
AlphaPoly alpha_mul(const AlphaPoly& a, const AlphaPoly& b);
AlphaPoly alpha_pow(const AlphaPoly& a, unsigned e);
AlphaPoly alpha_inverse(const AlphaPoly& a);

} // namespace mirrorgw

#endif
