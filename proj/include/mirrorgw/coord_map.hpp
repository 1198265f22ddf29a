#ifndef MIRRORGW_COORD_MAP_HPP
#define MIRRORGW_COORD_MAP_HPP

#include <cstddef>
#include <vector>

#include <mirrorgw/linalg.hpp>
#include <mirrorgw/tpoly.hpp>

namespace mirrorgw {

/// Polynomial coordinate change x -> (f_0(x), ..., f_m(x)), each component
/// truncated at a common degree and with zero constant term.
class CoordMap {
public:
    CoordMap() = default;
    explicit CoordMap(std::vector<TPoly> images);

    static CoordMap identity(std::size_t nvars, int degree);

    std::size_t size() const { return images_.size(); }
    int degree() const { return images_.empty() ? 0 : images_.front().max_degree(); }
    const TPoly& operator[](std::size_t i) const { return images_[i]; }
    const std::vector<TPoly>& images() const { return images_; }

    // L(i, v) = coefficient of x^v in component i.
    RationalMatrix linear_part() const;

    // (this o inner)(x) = this(inner(x)).
    CoordMap after(const CoordMap& inner) const;

    friend bool operator==(const CoordMap&, const CoordMap&) = default;

private:
    std::vector<TPoly> images_;
};

/// Inverse map, exact up to the common truncation degree. Throws
/// NotInvertible when the linear part is singular.
CoordMap invert_coord_map(const CoordMap& y);

} // namespace mirrorgw

#endif
