#ifndef MIRRORGW_LINALG_HPP
#define MIRRORGW_LINALG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <mirrorgw/rational.hpp>

namespace mirrorgw {

/// Small dense matrix over Q, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

struct RowEchelon {
    RationalMatrix reduced;            // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_reduce(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

// Throws NotInvertible when m is singular or not square.
RationalMatrix inverse(const RationalMatrix& m);

} // namespace mirrorgw

#endif
