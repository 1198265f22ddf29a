#include <mirrorgw/coord_map.hpp>

#include <stdexcept>

#include <mirrorgw/errors.hpp>

namespace mirrorgw {

CoordMap::CoordMap(std::vector<TPoly> images) : images_(std::move(images))
{
    for (const auto& p : images_) {
        if (p.nvars() != images_.front().nvars() || p.max_degree() != images_.front().max_degree()) {
            throw TruncationMismatch("CoordMap: components disagree on truncation");
        }
        if (p.constant_term() != 0) throw std::invalid_argument("CoordMap: components need zero constant term");
    }
}

CoordMap CoordMap::identity(std::size_t nvars, int degree)
{
    std::vector<TPoly> imgs;
    for (std::size_t v = 0; v < nvars; ++v) imgs.push_back(TPoly::variable(nvars, degree, v));
    return CoordMap(std::move(imgs));
}

RationalMatrix CoordMap::linear_part() const
{
    const std::size_t nv = images_.empty() ? 0 : images_.front().nvars();
    RationalMatrix m(images_.size(), nv);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        for (std::size_t v = 0; v < nv; ++v) m(i, v) = images_[i].coeff(Monomial::variable(v));
    }
    return m;
}

CoordMap CoordMap::after(const CoordMap& inner) const
{
    if (images_.empty()) return *this;
    Substitution sub(inner.images_, images_.front().nvars(), degree());
    std::vector<TPoly> out;
    out.reserve(images_.size());
    for (const auto& p : images_) out.push_back(sub.apply(p));
    return CoordMap(std::move(out));
}

CoordMap invert_coord_map(const CoordMap& y)
{
    const std::size_t m = y.size();
    if (m == 0) return y;
    const std::size_t nv = y[0].nvars();
    if (nv != m) throw NotInvertible("invert_coord_map: map is not square");
    const int D = y.degree();
    const RationalMatrix lin_inv = inverse(y.linear_part());

    // y = L t + N(t)  =>  t = L^{-1} (y - N(t)); each pass fixes one more degree.
    std::vector<TPoly> nonlinear;
    for (std::size_t i = 0; i < m; ++i) {
        TPoly p = y[i];
        for (std::size_t v = 0; v < nv; ++v) {
            const Rational c = p.coeff(Monomial::variable(v));
            if (c != 0) p.add_scaled(TPoly::variable(nv, D, v), -c);
        }
        nonlinear.push_back(std::move(p));
    }
    auto apply_lin_inv = [&](const std::vector<TPoly>& rhs, int degree) {
        std::vector<TPoly> out;
        for (std::size_t i = 0; i < m; ++i) {
            TPoly acc(nv, degree);
            for (std::size_t k = 0; k < m; ++k) {
                if (lin_inv(i, k) != 0) acc.add_scaled(rhs[k], lin_inv(i, k));
            }
            out.push_back(std::move(acc));
        }
        return out;
    };

    std::vector<TPoly> vars;
    for (std::size_t v = 0; v < nv; ++v) vars.push_back(TPoly::variable(nv, D, v));
    std::vector<TPoly> t = apply_lin_inv(vars, D);
    for (int pass = 2; pass <= D; ++pass) {
        std::vector<TPoly> t_low;
        for (const auto& p : t) t_low.push_back(p.truncated(pass));
        Substitution sub(t_low, nv, pass);
        std::vector<TPoly> rhs;
        for (std::size_t i = 0; i < m; ++i) rhs.push_back(vars[i].truncated(pass) - sub.apply(nonlinear[i].truncated(pass)));
        t = apply_lin_inv(rhs, pass);
    }
    for (auto& p : t) p = p.truncated(D);
    return CoordMap(std::move(t));
}

} // namespace mirrorgw
