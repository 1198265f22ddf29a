#ifndef MIRRORGW_ERRORS_HPP
#define MIRRORGW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mirrorgw {

// Arithmetic on objects whose truncation data (n, nvars, degree) disagree.
class TruncationMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inversion of a non-unit or of a singular linear map.
class NotInvertible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A nonzero coefficient would land above the top of an hbar window.
class WindowOverflow : public std::runtime_error {
public:
    WindowOverflow(const std::string& what, int slot_k, int slot_j)
        : std::runtime_error(what), k(slot_k), j(slot_j) {}
    int k;
    int j;
};

// The requested series depth does not fit inside the window, or the window
// is too shallow for a requested verification.
class WindowTooShallow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A degree-by-degree linear solve that should be uniquely solvable is not.
class SingularSolve : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mirrorgw

#endif
