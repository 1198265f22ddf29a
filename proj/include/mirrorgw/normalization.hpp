#ifndef MIRRORGW_NORMALIZATION_HPP
#define MIRRORGW_NORMALIZATION_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <mirrorgw/checks.hpp>
#include <mirrorgw/coord_map.hpp>
#include <mirrorgw/hvec.hpp>
#include <mirrorgw/periods.hpp>

namespace mirrorgw {

enum class Part { S0, T };

/// Opposite subspace in the single-valued frame: slot (k, j) belongs to S0
/// when j <= k - 1 and to the complement T when j >= k.
struct S0Grading {
    static bool in_s0(int k, int j) { return j <= k - 1; }
    static bool in_t(int k, int j) { return j >= k; }
    static Part part(int k, int j) { return in_s0(k, j) ? Part::S0 : Part::T; }
};

/// Keeps the coefficients of `part` and zeroes the rest.
HVec project(const HVec& v, Part part);

/// Leading T-slot of the generator hbar^i phi^l and its coefficient.
struct GeneratorLead {
    int l = 0;
    int i = 0;
    Slot slot{};
    Rational coeff;
};

/// Triangular structure of the t = 0 generators hbar^i theta_l(0), l <= n,
/// against the T-slots of the window. Block J couples the T-slots of
/// hbar-degree J to the generators whose top degree is J.
struct TransversalityReport {
    bool passed = false;
    std::vector<int> rank_profile;   // rank of block J, for J = 0..window top
    std::vector<int> block_size;     // min(n, J) + 1
    std::vector<GeneratorLead> leads;
    std::string witness;
};

TransversalityReport transversality_check(const ThetaFamily& theta);

struct NormalizationDiagnostics {
    HbarWindow window{};
    int psi_exact_from = 0;
    int psi_top_degree = 0;
    int max_hbar_power = 0;   // largest i with some u_{j,i} != 0
    std::vector<int> rank_profile;
};

/// Psi = sum u_{j,i}(t) hbar^i theta_j with Psi - Omega_0 in S0, where
/// Omega_0 = theta_0(0) is the family's phi^0.
struct NormalizedPeriod {
    int n = 0;
    int degree = 0;
    HVec psi;
    HVec omega0;   // phi^0 lifted to the t-ring of psi
    std::map<std::pair<int, int>, TPoly> u;   // (j, i) -> u_{j,i}
    CoordMap y_of_t;
    CoordMap t_of_y;
    NormalizationDiagnostics diagnostics;
};

/// Degree-by-degree solve in t. Throws SingularSolve when transversality
/// fails and WindowOverflow when Psi does not fit in the window.
NormalizedPeriod solve_normalized_period(const ThetaFamily& theta);

/// y^k(t) = coefficient of (Psi - Omega_0) at slot (k, k - 1).
CoordMap extract_mirror_coordinates(const HVec& psi, const HVec& omega0);

/// Psi with t replaced by t(y).
HVec reparametrize(const NormalizedPeriod& np);

/// pi_T(Psi - Omega_0) = 0 on every T-slot of the window and Psi(0) = Omega_0.
CheckResult normalization_check(const NormalizedPeriod& np);

} // namespace mirrorgw

#endif
