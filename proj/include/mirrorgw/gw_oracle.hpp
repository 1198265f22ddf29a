#ifndef MIRRORGW_GW_ORACLE_HPP
#define MIRRORGW_GW_ORACLE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <mirrorgw/frobenius.hpp>
#include <mirrorgw/rational.hpp>

namespace mirrorgw {

/// Reconstruction found an inconsistent or underdetermined system.
class OracleFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// N(d; m_2..m_n) for d = 1..d_max, keyed by (d, m).
struct GWTable {
    int n = 0;
    int d_max = 0;
    std::map<std::pair<int, std::vector<int>>, Rational> entries;

    // Zero for keys that violate the dimension constraint; throws
    // OracleFailure for d beyond d_max.
    Rational get(int d, const std::vector<int>& m) const;
};

/// Solves the associativity equations for the potential
///   (1/6) sum delta_{i+j+k,n} y^i y^j y^k + sum N(d; m) e^{d y^1} y^m / m!
/// one degree d at a time, seeded by N(1; 0..0, 2) = 1.
GWTable reconstruct(int n, int d_max);

/// Plane-curve counts from the one-variable recursion
///   N_d = sum_{d1+d2=d} N_{d1} N_{d2} [d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)].
std::map<int, Rational> kontsevich_cp2(int d_max);

/// Largest d with an invariant contributing to a potential truncated at D.
int oracle_degree_needed(int n, int D);

/// The potential above as a polynomial truncated at D, without terms of
/// degree <= 2. Throws OracleFailure if the table is too short.
Potential oracle_potential(const GWTable& table, int D);

struct Discrepancy {
    std::vector<int> exponents;
    Rational mirror;
    Rational oracle;
};

struct CompareReport {
    bool equal = true;
    std::vector<Discrepancy> discrepancies;
};

CompareReport compare(const Potential& mirror, const Potential& oracle);

} // namespace mirrorgw

#endif
