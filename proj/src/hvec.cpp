#include <mirrorgw/hvec.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/kernels.hpp>

namespace mirrorgw {

HVec::HVec(int n, HbarWindow window, std::size_t nvars, int degree)
    : n_(n), window_(window), exact_from_(window.lo), nvars_(nvars), degree_(degree)
{
    if (n < 1) throw std::invalid_argument("HVec: n must be >= 1");
    if (window.hi < window.lo) throw std::invalid_argument("HVec: empty window");
    coeffs_.assign(static_cast<std::size_t>(window.size()) * static_cast<std::size_t>(n + 1), TPoly(nvars, degree));
}

std::size_t HVec::index(int k, int j) const
{
    if (k < 0 || k > n_ || !window_.contains(j)) {
        throw std::out_of_range("HVec: slot (" + std::to_string(k) + ", " + std::to_string(j) + ") outside window [" +
                                std::to_string(window_.lo) + ", " + std::to_string(window_.hi) + "]");
    }
    return static_cast<std::size_t>(j - window_.lo) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(k);
}

const TPoly& HVec::at(int k, int j) const { return coeffs_[index(k, j)]; }
TPoly& HVec::at(int k, int j) { return coeffs_[index(k, j)]; }

TPoly HVec::get(int k, int j) const
{
    if (k < 0 || k > n_ || !window_.contains(j)) return TPoly(nvars_, degree_);
    return coeffs_[index(k, j)];
}

void HVec::set_exact_from(int j) { exact_from_ = std::clamp(j, window_.lo, window_.hi + 1); }

bool HVec::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const TPoly& p) { return p.is_zero(); });
}

std::optional<int> HVec::top_degree() const
{
    for (int j = window_.hi; j >= window_.lo; --j) {
        for (int k = 0; k <= n_; ++k) {
            if (!at(k, j).is_zero()) return j;
        }
    }
    return std::nullopt;
}

void HVec::check_compatible(const HVec& other, const char* op) const
{
    if (n_ != other.n_ || window_ != other.window_ || nvars_ != other.nvars_ || degree_ != other.degree_) {
        std::ostringstream os;
        os << op << ": incompatible HVec (n " << n_ << "/" << other.n_ << ", window [" << window_.lo << "," << window_.hi
           << "]/[" << other.window_.lo << "," << other.window_.hi << "], degree " << degree_ << "/" << other.degree_
           << ")";
        throw TruncationMismatch(os.str());
    }
}

HVec& HVec::operator+=(const HVec& other)
{
    check_compatible(other, "HVec::+=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    exact_from_ = std::max(exact_from_, other.exact_from_);
    return *this;
}

HVec& HVec::operator-=(const HVec& other)
{
    check_compatible(other, "HVec::-=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    exact_from_ = std::max(exact_from_, other.exact_from_);
    return *this;
}

HVec operator+(HVec a, const HVec& b)
{
    a += b;
    return a;
}

HVec operator-(HVec a, const HVec& b)
{
    a -= b;
    return a;
}

HVec HVec::scaled(const TPoly& p) const
{
    HVec r = *this;
    r.coeffs_ = kernels::scale_all_parallel(p, coeffs_);
    return r;
}

HVec HVec::scaled(const Rational& c) const
{
    HVec r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

HVec HVec::shift_hbar(int m) const
{
    HVec r(n_, window_, nvars_, degree_);
    for (int j = window_.lo; j <= window_.hi; ++j) {
        for (int k = 0; k <= n_; ++k) {
            const TPoly& c = at(k, j);
            if (c.is_zero()) continue;
            const int target = j + m;
            if (target > window_.hi) {
                throw WindowOverflow("shift_hbar(" + std::to_string(m) + "): slot (" + std::to_string(k) + ", " +
                                         std::to_string(j) + ") leaves the window top " + std::to_string(window_.hi),
                                     k, target);
            }
            if (target < window_.lo) continue;
            r.at(k, target) = c;
        }
    }
    r.set_exact_from(exact_from_ + m);
    return r;
}

HVec HVec::apply_alpha() const
{
    HVec r(n_, window_, nvars_, degree_);
    for (int j = window_.lo; j <= window_.hi; ++j) {
        for (int k = 0; k < n_; ++k) r.at(k + 1, j) = at(k, j);
    }
    r.exact_from_ = exact_from_;
    return r;
}

HVec HVec::times_alpha_poly(const AlphaPoly& c) const
{
    if (c.n() != n_) throw TruncationMismatch("times_alpha_poly: mismatched n");
    HVec r(n_, window_, nvars_, degree_);
    for (int j = window_.lo; j <= window_.hi; ++j) {
        for (int k = 0; k <= n_; ++k) {
            const TPoly& x = at(k, j);
            if (x.is_zero()) continue;
            for (int i = 0; i + k <= n_; ++i) {
                if (c[i] != 0) r.at(k + i, j).add_scaled(x, c[i]);
            }
        }
    }
    r.exact_from_ = exact_from_;
    return r;
}

HVec HVec::embed(HbarWindow wider) const
{
    if (wider.lo > window_.lo || wider.hi < window_.hi) {
        throw std::invalid_argument("HVec::embed: target window must contain the current one");
    }
    HVec r(n_, wider, nvars_, degree_);
    for (int j = window_.lo; j <= window_.hi; ++j) {
        for (int k = 0; k <= n_; ++k) r.at(k, j) = at(k, j);
    }
    // Slots below the old bottom are unknown, not zero.
    r.exact_from_ = exact_from_;
    return r;
}

HVec HVec::restricted(HbarWindow narrower) const
{
    if (narrower.lo < window_.lo) throw std::invalid_argument("HVec::restricted: cannot extend the bottom");
    HVec r(n_, narrower, nvars_, degree_);
    for (int j = window_.lo; j <= window_.hi; ++j) {
        for (int k = 0; k <= n_; ++k) {
            const TPoly& c = at(k, j);
            if (c.is_zero()) continue;
            if (j > narrower.hi) {
                throw WindowOverflow("restricted: slot (" + std::to_string(k) + ", " + std::to_string(j) +
                                         ") above new top " + std::to_string(narrower.hi),
                                     k, j);
            }
            if (j >= narrower.lo) r.at(k, j) = c;
        }
    }
    r.set_exact_from(std::max(exact_from_, narrower.lo));
    return r;
}

HVec HVec::derivative(std::size_t var) const
{
    HVec r(n_, window_, nvars_, std::max(degree_ - 1, 0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i].derivative(var);
    r.exact_from_ = exact_from_;
    return r;
}

HVec HVec::truncated(int degree) const
{
    HVec r(n_, window_, nvars_, degree);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i].truncated(degree);
    r.exact_from_ = exact_from_;
    return r;
}

HVec HVec::substituted(const Substitution& sub) const
{
    HVec r(n_, window_, sub.target_nvars(), std::min(degree_, sub.target_degree()));
    r.coeffs_ = kernels::substitute_all_parallel(sub, coeffs_);
    r.exact_from_ = exact_from_;
    return r;
}

HVec HVec::at_origin() const { return truncated(0); }

std::string HVec::to_string() const
{
    std::ostringstream os;
    os << "HVec(n=" << n_ << ", window=[" << window_.lo << "," << window_.hi << "], exact_from=" << exact_from_ << ")";
    for (int j = window_.hi; j >= window_.lo; --j) {
        for (int k = 0; k <= n_; ++k) {
            if (!at(k, j).is_zero()) os << "\n  (" << k << "," << j << "): " << at(k, j).to_string();
        }
    }
    return os.str();
}

std::optional<SlotDifference> first_difference(const HVec& a, const HVec& b, int j_from, int j_to, int degree)
{
    if (a.n() != b.n()) throw TruncationMismatch("first_difference: mismatched n");
    for (int j = j_to; j >= j_from; --j) {
        for (int k = 0; k <= a.n(); ++k) {
            const TPoly x = a.get(k, j).truncated(degree);
            const TPoly y = b.get(k, j).truncated(degree);
            if (x.nvars() != y.nvars()) throw TruncationMismatch("first_difference: mismatched nvars");
            if (!(x == y)) {
                const TPoly diff = x - y;
                return SlotDifference{{k, j}, "difference " + diff.to_string()};
            }
        }
    }
    return std::nullopt;
}

} // namespace mirrorgw
