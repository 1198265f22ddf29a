#ifndef MIRRORGW_FROBENIUS_HPP
#define MIRRORGW_FROBENIUS_HPP

#include <map>
#include <vector>

#include <mirrorgw/checks.hpp>
#include <mirrorgw/hvec.hpp>
#include <mirrorgw/linalg.hpp>
#include <mirrorgw/tpoly.hpp>

namespace mirrorgw {

/// Structure constants A^c_{ab}(y) of the quantum product read off the
/// normalized period in flat coordinates, with the flat metric and the
/// Euler field.
struct ConnectionData {
    int n = 0;
    int degree = 0;                // truncation of A (= degree of Psi minus 2)
    std::vector<TPoly> A;          // A[(a (n+1) + b)(n+1) + c] = A^c_{ab}
    RationalMatrix g;              // g_{ab} = delta_{a+b,n}
    std::vector<TPoly> euler;      // E^a(y) = (a - 1) y^a - (n+1) delta_{a,1}
    int e_index = 0;
    std::vector<CheckResult> residuals;   // pf.connection

    std::size_t dim() const { return static_cast<std::size_t>(n + 1); }
    const TPoly& at(int a, int b, int c) const { return A[index(a, b, c)]; }
    TPoly& at(int a, int b, int c) { return A[index(a, b, c)]; }
    std::size_t index(int a, int b, int c) const
    {
        return (static_cast<std::size_t>(a) * dim() + static_cast<std::size_t>(b)) * dim() + static_cast<std::size_t>(c);
    }
};

/// A^c_{ab} = slot (c, c-1) of hbar d_a d_b Psi. Records in `residuals`
/// whether the T-part of hbar d_a d_b Psi vanishes and whether
/// hbar d_a d_b Psi = sum_c A^c_{ab} d_c Psi holds on every exact slot.
ConnectionData connection_from_period(const HVec& psi_y, int n);

/// flatness.dA (d_d A^c_{ab} = d_a A^c_{db}) and flatness.commutator.
std::vector<CheckResult> verify_flatness(const ConnectionData& cd);

/// Symmetric 3-tensor A_{abc} = A^{n-c}_{ab}.
struct LoweredTensor {
    int n = 0;
    int degree = 0;
    std::vector<TPoly> T;   // same index layout as ConnectionData::A
    CheckResult symmetry;   // flatness.symmetry

    const TPoly& at(int a, int b, int c) const
    {
        const auto d = static_cast<std::size_t>(n + 1);
        return T[(static_cast<std::size_t>(a) * d + static_cast<std::size_t>(b)) * d + static_cast<std::size_t>(c)];
    }
};

LoweredTensor lower_index(const ConnectionData& cd);

/// Potential in y^0..y^n without terms of total degree <= 2.
struct Potential {
    int n = 0;
    TPoly phi;

    int degree() const { return phi.max_degree(); }
};

/// Triple integration of a symmetric tensor of degree m into a potential of
/// degree m + 3. `integrability` reports whether every third derivative of
/// the result reproduces the tensor.
struct IntegratedPotential {
    Potential potential;
    CheckResult integrability;
};

IntegratedPotential potential_from_tensor(const LoweredTensor& T);

/// euler.operator: hbar_derivative(Psi) = hbar^{-1} sum_a E^a d_a Psi;
/// euler.grading: per-monomial conformality constraints on A and on g.
std::vector<CheckResult> euler_checks(const HVec& psi_y, const ConnectionData& cd);

/// hbar^{-1} Psi = d Psi / dy^0, and A^c_{0b} = delta^c_b.
CheckResult identity_check(const HVec& psi_y, const ConnectionData& cd);

/// All associativity equations with g^{ef} = delta_{e+f,n}, exact through
/// degree deg(phi) - 3.
CheckResult wdvv_check(const Potential& phi);

/// Genus-0 invariant N(d; m_2..m_n).
struct GWEntry {
    int d = 0;
    std::vector<int> m;
    Rational N;

    friend bool operator==(const GWEntry&, const GWEntry&) = default;
};

/// sigma(m_1..m_n) = m! * [y^m] phi for y^0-free monomials, with the
/// recursion and vanishing checks, and the invariants read from it.
struct SigmaTable {
    int n = 0;
    std::map<std::vector<int>, Rational> sigma;
    CheckResult check;        // "sigma"
    std::vector<GWEntry> gw;
};

/// (3 - n + sum_{k>=2} (k-1) m_k) / (n+1).
Rational sigma_weight(int n, const std::vector<int>& m);

SigmaTable sigma_extract(const Potential& phi);

/// Largest d such that every N(d; m) fits into a potential truncated at D.
int complete_degree(int n, int D);

/// All (m_2..m_n) with sum (k-1) m_k = (n+1) d + n - 3, in lexicographic order.
std::vector<std::vector<int>> incidence_profiles(int n, int d);

} // namespace mirrorgw

#endif
