#include <mirrorgw/tpoly.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/kernels.hpp>

namespace mirrorgw {

Monomial Monomial::from_exponents(std::span<const int> exps)
{
    if (exps.size() > max_vars) throw std::invalid_argument("Monomial: too many variables");
    std::uint64_t packed = 0;
    int total = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] < 0) throw std::invalid_argument("Monomial: negative exponent");
        total += exps[v];
        if (total > max_degree) throw std::invalid_argument("Monomial: degree above 255");
        packed |= static_cast<std::uint64_t>(exps[v]) << (8 * v);
    }
    packed |= static_cast<std::uint64_t>(total) << 56;
    return Monomial(packed);
}

Monomial Monomial::variable(std::size_t var, int power)
{
    if (var >= max_vars) throw std::invalid_argument("Monomial: variable index out of range");
    if (power < 0 || power > max_degree) throw std::invalid_argument("Monomial: bad power");
    return Monomial((static_cast<std::uint64_t>(power) << (8 * var)) | (static_cast<std::uint64_t>(power) << 56));
}

std::vector<int> Monomial::exponents(std::size_t nvars) const
{
    std::vector<int> e(nvars);
    for (std::size_t v = 0; v < nvars; ++v) e[v] = exponent(v);
    return e;
}

TPoly::TPoly(std::size_t nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree)
{
    if (nvars > Monomial::max_vars) throw std::invalid_argument("TPoly: at most 7 variables");
    if (max_degree < 0 || max_degree > Monomial::max_degree) {
        throw std::invalid_argument("TPoly: truncation degree must lie in [0, 255]");
    }
}

TPoly TPoly::constant(std::size_t nvars, int max_degree, const Rational& c)
{
    TPoly p(nvars, max_degree);
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    return p;
}

TPoly TPoly::variable(std::size_t nvars, int max_degree, std::size_t var)
{
    if (var >= nvars) throw std::invalid_argument("TPoly::variable: index out of range");
    TPoly p(nvars, max_degree);
    if (max_degree >= 1) p.terms_.push_back({Monomial::variable(var), Rational(1)});
    return p;
}

TPoly TPoly::monomial(std::size_t nvars, int max_degree, std::span<const int> exps, const Rational& c)
{
    if (exps.size() != nvars) throw std::invalid_argument("TPoly::monomial: exponent count != nvars");
    TPoly p(nvars, max_degree);
    const Monomial m = Monomial::from_exponents(exps);
    if (c != 0 && m.degree() <= max_degree) p.terms_.push_back({m, c});
    return p;
}

TPoly TPoly::from_terms(std::size_t nvars, int max_degree, std::vector<Term> terms)
{
    TPoly p(nvars, max_degree);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    for (auto& t : terms) {
        if (t.mono.degree() > max_degree) break;
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
    return p;
}

Rational TPoly::coeff(Monomial m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, Monomial x) { return t.mono < x; });
    if (it != terms_.end() && it->mono == m) return it->coef;
    return Rational(0);
}

void TPoly::check_compatible(const TPoly& other, const char* op) const
{
    if (nvars_ != other.nvars_ || max_degree_ != other.max_degree_) {
        std::ostringstream os;
        os << op << ": truncation mismatch (nvars " << nvars_ << " vs " << other.nvars_ << ", degree " << max_degree_
           << " vs " << other.max_degree_ << ")";
        throw TruncationMismatch(os.str());
    }
}

void TPoly::add_scaled(const TPoly& other, const Rational& c)
{
    check_compatible(other, "TPoly::add_scaled");
    if (c == 0 || other.terms_.empty()) return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    Rational tmp;
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->mono < a->mono) {
            merged.push_back({b->mono, b->coef * c});
            ++b;
        } else {
            mpq_mul(tmp.get_mpq_t(), b->coef.get_mpq_t(), c.get_mpq_t());
            a->coef += tmp;
            if (a->coef != 0) merged.push_back(std::move(*a));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
}

TPoly& TPoly::operator+=(const TPoly& other)
{
    add_scaled(other, Rational(1));
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& other)
{
    add_scaled(other, Rational(-1));
    return *this;
}

TPoly& TPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

TPoly TPoly::operator-() const
{
    TPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

TPoly TPoly::derivative(std::size_t var) const
{
    if (var >= nvars_) throw std::invalid_argument("TPoly::derivative: variable out of range");
    const int d = std::max(max_degree_ - 1, 0);
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const int e = t.mono.exponent(var);
        if (e == 0) continue;
        out.push_back({t.mono.lowered(var), t.coef * e});
    }
    return from_terms(nvars_, d, std::move(out));
}

TPoly TPoly::derivative(std::span<const std::size_t> vars) const
{
    TPoly r = *this;
    for (auto v : vars) r = r.derivative(v);
    return r;
}

TPoly TPoly::truncated(int d) const
{
    TPoly r(nvars_, d);
    for (const auto& t : terms_) {
        if (t.mono.degree() > d) break;
        r.terms_.push_back(t);
    }
    return r;
}

TPoly TPoly::homogeneous_part(int d) const
{
    TPoly r(nvars_, max_degree_);
    for (const auto& t : terms_) {
        if (t.mono.degree() == d) r.terms_.push_back(t);
        if (t.mono.degree() > d) break;
    }
    return r;
}

TPoly TPoly::restricted_to(std::span<const std::size_t> vars) const
{
    TPoly r(nvars_, max_degree_);
    for (const auto& t : terms_) {
        int inside = 0;
        for (auto v : vars) inside += t.mono.exponent(v);
        if (inside == t.mono.degree()) r.terms_.push_back(t);
    }
    return r;
}

bool operator==(const TPoly& a, const TPoly& b)
{
    if (a.nvars_ != b.nvars_ || a.max_degree_ != b.max_degree_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
    }
    return true;
}

std::string TPoly::to_string(std::string_view var_prefix) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << mirrorgw::to_string(t.coef);
        for (std::size_t v = 0; v < nvars_; ++v) {
            const int e = t.mono.exponent(v);
            if (e == 0) continue;
            os << '*' << var_prefix << v;
            if (e > 1) os << '^' << e;
        }
    }
    return os.str();
}

TPoly operator+(TPoly a, const TPoly& b)
{
    a += b;
    return a;
}

TPoly operator-(TPoly a, const TPoly& b)
{
    a -= b;
    return a;
}

TPoly operator*(const TPoly& a, const TPoly& b) { return kernels::mul_parallel(a, b); }

TPoly operator*(TPoly a, const Rational& c)
{
    a *= c;
    return a;
}

TPoly operator*(const Rational& c, TPoly a)
{
    a *= c;
    return a;
}

TPoly tpoly_pow(const TPoly& a, unsigned e)
{
    TPoly r = TPoly::constant(a.nvars(), a.max_degree(), Rational(1));
    TPoly base = a;
    while (e) {
        if (e & 1U) r = r * base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return r;
}

TPoly tpoly_exp(const TPoly& a)
{
    if (a.constant_term() != 0) {
        throw std::invalid_argument("tpoly_exp: argument must have zero constant term");
    }
    TPoly result = TPoly::constant(a.nvars(), a.max_degree(), Rational(1));
    TPoly power = result;
    for (int r = 1; r <= a.max_degree(); ++r) {
        power = power * a;
        power *= make_rational(1, r);
        if (power.is_zero()) break;
        result += power;
    }
    return result;
}

Substitution::Substitution(std::span<const TPoly> images, std::size_t source_nvars, int source_degree)
    : source_nvars_(source_nvars)
{
    if (images.size() != source_nvars) throw std::invalid_argument("Substitution: need one image per variable");
    if (images.empty()) throw std::invalid_argument("Substitution: no variables");
    nvars_ = images[0].nvars();
    degree_ = images[0].max_degree();
    for (const auto& img : images) {
        if (img.nvars() != nvars_ || img.max_degree() != degree_) {
            throw TruncationMismatch("Substitution: images disagree on truncation");
        }
        if (img.constant_term() != 0) throw std::invalid_argument("Substitution: images need zero constant term");
    }
    // Monomials above the target degree map to zero, so only enumerate up to
    // min(source, target) degree.
    const int top = std::min(source_degree, degree_);
    std::vector<Monomial> monos;
    std::vector<int> exps(source_nvars, 0);
    auto enumerate = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var + 1 == source_nvars) {
            for (int e = 0; e <= remaining; ++e) {
                exps[var] = e;
                monos.push_back(Monomial::from_exponents(exps));
            }
            exps[var] = 0;
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            exps[var] = e;
            self(self, var + 1, remaining - e);
        }
        exps[var] = 0;
    };
    enumerate(enumerate, 0, top);
    std::sort(monos.begin(), monos.end());
    cache_.reserve(monos.size());
    for (auto m : monos) {
        if (m.degree() == 0) {
            cache_.emplace_back(m, TPoly::constant(nvars_, degree_, Rational(1)));
            continue;
        }
        std::size_t v = 0;
        while (m.exponent(v) == 0) ++v;
        // The lowered monomial has smaller degree, so it is already cached.
        TPoly img = image_of(m.lowered(v)) * images[v];
        cache_.emplace_back(m, std::move(img));
    }
}

const TPoly& Substitution::image_of(Monomial m) const
{
    auto it = std::lower_bound(cache_.begin(), cache_.end(), m,
                               [](const std::pair<Monomial, TPoly>& e, Monomial x) { return e.first < x; });
    if (it == cache_.end() || it->first != m) throw std::logic_error("Substitution: monomial not cached");
    return it->second;
}

TPoly Substitution::apply(const TPoly& p) const
{
    if (p.nvars() != source_nvars_) throw TruncationMismatch("Substitution::apply: wrong number of variables");
    const int out_degree = std::min(p.max_degree(), degree_);
    std::unordered_map<std::uint64_t, Rational> acc;
    Rational tmp;
    for (const auto& t : p.terms()) {
        if (t.mono.degree() > out_degree) break;
        for (const auto& it : image_of(t.mono).terms()) {
            if (it.mono.degree() > out_degree) break;
            mpq_mul(tmp.get_mpq_t(), t.coef.get_mpq_t(), it.coef.get_mpq_t());
            acc[it.mono.packed()] += tmp;
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [k, c] : acc) {
        if (c != 0) terms.push_back({Monomial(k), std::move(c)});
    }
    return TPoly::from_terms(nvars_, out_degree, std::move(terms));
}

TPoly compose(const TPoly& p, std::span<const TPoly> images)
{
    Substitution sub(images, p.nvars(), p.max_degree());
    return sub.apply(p);
}

} // namespace mirrorgw
