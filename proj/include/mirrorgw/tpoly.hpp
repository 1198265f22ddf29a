#ifndef MIRRORGW_TPOLY_HPP
#define MIRRORGW_TPOLY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <mirrorgw/rational.hpp>

namespace mirrorgw {

/// Packed exponent vector.
///
/// Byte i (i < 7) holds the exponent of variable i and byte 7 holds the total
/// degree, so the natural integer order sorts monomials by degree first and
/// exponent vectors add by integer addition as long as degrees stay <= 255.
class Monomial {
public:
    static constexpr std::size_t max_vars = 7;
    static constexpr int max_degree = 255;

    constexpr Monomial() = default;
    constexpr explicit Monomial(std::uint64_t packed) : packed_(packed) {}

    static Monomial from_exponents(std::span<const int> exps);
    static Monomial variable(std::size_t var, int power = 1);

    constexpr std::uint64_t packed() const { return packed_; }
    constexpr int degree() const { return static_cast<int>(packed_ >> 56); }
    constexpr int exponent(std::size_t var) const
    {
        return static_cast<int>((packed_ >> (8 * var)) & 0xffU);
    }
    std::vector<int> exponents(std::size_t nvars) const;

    // Caller checks that the combined degree is representable.
    constexpr Monomial operator*(Monomial other) const { return Monomial(packed_ + other.packed_); }
    // Requires exponent(var) > 0.
    constexpr Monomial lowered(std::size_t var) const
    {
        return Monomial(packed_ - (std::uint64_t{1} << (8 * var)) - (std::uint64_t{1} << 56));
    }
    constexpr bool divides(Monomial other, std::size_t nvars) const
    {
        for (std::size_t v = 0; v < nvars; ++v) {
            if (exponent(v) > other.exponent(v)) return false;
        }
        return true;
    }
    constexpr Monomial quotient(Monomial divisor) const { return Monomial(packed_ - divisor.packed_); }

    friend constexpr auto operator<=>(Monomial, Monomial) = default;

private:
    std::uint64_t packed_ = 0;
};

struct Term {
    Monomial mono;
    Rational coef;
};

/// Multivariate polynomial with exact rational coefficients, truncated at a
/// total degree.
///
/// Terms are kept sorted by monomial with no zero coefficients. Every
/// operation silently discards terms of total degree above max_degree().
/// Binary operations require identical (nvars, max_degree) and throw
/// TruncationMismatch otherwise.
class TPoly {
public:
    TPoly() = default;
    TPoly(std::size_t nvars, int max_degree);

    static TPoly constant(std::size_t nvars, int max_degree, const Rational& c);
    static TPoly variable(std::size_t nvars, int max_degree, std::size_t var);
    static TPoly monomial(std::size_t nvars, int max_degree, std::span<const int> exps, const Rational& c);
    // Takes ownership of unsorted, possibly duplicated terms.
    static TPoly from_terms(std::size_t nvars, int max_degree, std::vector<Term> terms);

    std::size_t nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }
    int low_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

    Rational coeff(Monomial m) const;
    Rational coeff(std::span<const int> exps) const { return coeff(Monomial::from_exponents(exps)); }
    Rational constant_term() const { return coeff(Monomial{}); }

    TPoly& operator+=(const TPoly& other);
    TPoly& operator-=(const TPoly& other);
    TPoly& operator*=(const Rational& c);
    // this += c * other
    void add_scaled(const TPoly& other, const Rational& c);

    TPoly operator-() const;

    // Derivative in variable var; the result is truncated at max_degree()-1.
    TPoly derivative(std::size_t var) const;
    // Repeated derivative along a list of variables.
    TPoly derivative(std::span<const std::size_t> vars) const;

    // Drops terms above d and records d as the new truncation (d may exceed
    // the current one; no information is invented).
    TPoly truncated(int d) const;
    TPoly homogeneous_part(int d) const;
    // Terms whose monomial involves only the given variables.
    TPoly restricted_to(std::span<const std::size_t> vars) const;

    friend bool operator==(const TPoly& a, const TPoly& b);

    std::string to_string(std::string_view var_prefix = "t") const;

private:
    void check_compatible(const TPoly& other, const char* op) const;

    std::size_t nvars_ = 0;
    int max_degree_ = 0;
    std::vector<Term> terms_;
};

TPoly operator+(TPoly a, const TPoly& b);
TPoly operator-(TPoly a, const TPoly& b);
TPoly operator*(const TPoly& a, const TPoly& b);
TPoly operator*(TPoly a, const Rational& c);
TPoly operator*(const Rational& c, TPoly a);

/// exp(a) = sum a^r / r!, for a with zero constant term.
TPoly tpoly_exp(const TPoly& a);

/// a^e under truncation.
TPoly tpoly_pow(const TPoly& a, unsigned e);

/// Substitutes images[v] for variable v. The images must share nvars and
/// degree with each other and have zero constant term; the result lives in
/// their ring.
TPoly compose(const TPoly& p, std::span<const TPoly> images);

/// Precomputed images of every monomial of degree <= max_degree under a
/// substitution, for composing many polynomials with the same map.
class Substitution {
public:
    Substitution(std::span<const TPoly> images, std::size_t source_nvars, int source_degree);
    TPoly apply(const TPoly& p) const;
    std::size_t target_nvars() const { return nvars_; }
    int target_degree() const { return degree_; }

private:
    const TPoly& image_of(Monomial m) const;
    std::size_t nvars_;
    int degree_;
    std::size_t source_nvars_;
    std::vector<std::pair<Monomial, TPoly>> cache_;
};

} // namespace mirrorgw

#endif
