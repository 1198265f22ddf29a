#include <mirrorgw/alpha_poly.hpp>

#include <sstream>

#include <mirrorgw/errors.hpp>

namespace mirrorgw {

AlphaPoly::AlphaPoly(int n) : n_(n), coeffs_(static_cast<std::size_t>(n + 1))
{
    if (n < 0) throw std::invalid_argument("AlphaPoly: n must be non-negative");
}

AlphaPoly::AlphaPoly(int n, std::initializer_list<Rational> coeffs) : AlphaPoly(n, std::vector<Rational>(coeffs)) {}

AlphaPoly::AlphaPoly(int n, std::vector<Rational> coeffs) : AlphaPoly(n)
{
    // Entries beyond alpha^n vanish in the quotient.
    for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(n); ++k) {
        coeffs_[k] = std::move(coeffs[k]);
    }
}

AlphaPoly AlphaPoly::unit(int n)
{
    AlphaPoly u(n);
    u.coeffs_[0] = 1;
    return u;
}

bool AlphaPoly::is_unit_element() const
{
    if (coeffs_[0] != 1) return false;
    for (int k = 1; k <= n_; ++k) {
        if (coeffs_[k] != 0) return false;
    }
    return true;
}

bool AlphaPoly::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

std::string AlphaPoly::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (int k = 0; k <= n_; ++k) {
        if (k) os << ", ";
        os << mirrorgw::to_string(coeffs_[k]);
    }
    os << ')';
    return os.str();
}

static void require_same_n(const AlphaPoly& a, const AlphaPoly& b, const char* op)
{
    if (a.n() != b.n()) {
        throw TruncationMismatch(std::string(op) + ": mismatched n (" + std::to_string(a.n()) + " vs " +
                                 std::to_string(b.n()) + ")");
    }
}

AlphaPoly alpha_add(const AlphaPoly& a, const AlphaPoly& b)
{
    require_same_n(a, b, "alpha_add");
    AlphaPoly r(a.n());
    for (int k = 0; k <= a.n(); ++k) r[k] = a[k] + b[k];
    return r;
}

AlphaPoly alpha_mul(const AlphaPoly& a, const AlphaPoly& b)
{
    require_same_n(a, b, "alpha_mul");
    const int n = a.n();
    AlphaPoly r(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

AlphaPoly alpha_pow(const AlphaPoly& a, unsigned e)
{
    AlphaPoly r = AlphaPoly::unit(a.n());
    for (unsigned i = 0; i < e; ++i) r = alpha_mul(r, a);
    return r;
}

AlphaPoly alpha_inverse(const AlphaPoly& a)
{
    if (a[0] == 0) throw NotInvertible("alpha_inverse: zero constant term " + a.to_string());
    // Solve a * b = 1 term by term.
    const int n = a.n();
    AlphaPoly b(n);
    const Rational inv0 = 1 / a[0];
    b[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        Rational acc;
        for (int i = 1; i <= k; ++i) acc += a[i] * b[k - i];
        b[k] = -acc * inv0;
    }
    return b;
}

} // namespace mirrorgw
