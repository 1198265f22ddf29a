#include <mirrorgw/rational.hpp>

#include <stdexcept>

namespace mirrorgw {

Rational make_rational(long num, long den)
{
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view part) {
        if (part.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
            }
        }
        std::string digits(part[0] == '+' ? part.substr(1) : part);
        return Integer(digits, 10);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational factorial(unsigned k)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return Rational(r);
}

Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return Rational(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

} // namespace mirrorgw
