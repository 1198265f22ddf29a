#include <mirrorgw/normalization.hpp>

#include <algorithm>
#include <stdexcept>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/kernels.hpp>
#include <mirrorgw/linalg.hpp>

namespace mirrorgw {

namespace {

std::string slot_name(int k, int j) { return "(" + std::to_string(k) + ", " + std::to_string(j) + ")"; }

// Dense copy of the constant periods phi^l for fast lookups.
class PeriodTable {
public:
    explicit PeriodTable(const ThetaFamily& theta) : n_(theta.n), window_(theta.windows.phi)
    {
        for (const auto& p : theta.phi) {
            std::vector<Rational> v(static_cast<std::size_t>(window_.size() * (n_ + 1)));
            for (int j = window_.lo; j <= window_.hi; ++j) {
                for (int k = 0; k <= n_; ++k) v[idx(k, j)] = p.value.get(k, j).constant_term();
            }
            values_.push_back(std::move(v));
            exact_.push_back(p.value.exact_from());
        }
    }

    int size() const { return static_cast<int>(values_.size()); }
    int exact_from(int l) const { return exact_[static_cast<std::size_t>(l)]; }

    // Zero above the window top; throws below the exact region.
    const Rational& at(int l, int k, int j) const
    {
        if (j > window_.hi) return zero_;
        if (j < exact_from(l)) {
            throw WindowTooShallow("normalization: needs phi^" + std::to_string(l) + " at hbar^" + std::to_string(j) +
                                   " below its exact region (from " + std::to_string(exact_from(l)) + ")");
        }
        return values_[static_cast<std::size_t>(l)][idx(k, j)];
    }

private:
    std::size_t idx(int k, int j) const
    {
        return static_cast<std::size_t>(j - window_.lo) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(k);
    }

    int n_;
    HbarWindow window_;
    std::vector<std::vector<Rational>> values_;
    std::vector<int> exact_;
    Rational zero_{0};
};

// P[k][l] = theta_l(0) at slot (k, l): the top rows of the generators.
RationalMatrix leading_matrix(const ThetaFamily& theta)
{
    const int n = theta.n;
    RationalMatrix p(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
    for (int l = 0; l <= n; ++l) {
        const HVec& col = theta.columns[static_cast<std::size_t>(l)];
        for (int k = 0; k <= n; ++k) p(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) = col.get(k, l).constant_term();
    }
    return p;
}

RationalMatrix leading_block(const RationalMatrix& p, int m)
{
    RationalMatrix b(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(m + 1));
    for (int r = 0; r <= m; ++r) {
        for (int c = 0; c <= m; ++c) b(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = p(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
    return b;
}

// Nonzero coefficients of a generator above its top row must not exist.
std::optional<std::string> generator_above_top(const ThetaFamily& theta, int l)
{
    const HVec& col = theta.columns[static_cast<std::size_t>(l)];
    for (int j = l + 1; j <= col.window().hi; ++j) {
        for (int k = 0; k <= theta.n; ++k) {
            if (col.get(k, j).constant_term() != 0) {
                return "theta_" + std::to_string(l) + "(0) is nonzero at " + slot_name(k, j) + " above hbar^" +
                       std::to_string(l);
            }
        }
    }
    return std::nullopt;
}

HVec lift_constant(const HVec& v, HbarWindow window, std::size_t nvars, int degree)
{
    HVec r(v.n(), window, nvars, degree);
    for (int j = std::max(window.lo, v.window().lo); j <= std::min(window.hi, v.window().hi); ++j) {
        for (int k = 0; k <= v.n(); ++k) {
            const Rational c = v.at(k, j).constant_term();
            if (c != 0) r.at(k, j) = TPoly::constant(nvars, degree, c);
        }
    }
    r.set_exact_from(std::max(v.exact_from(), window.lo));
    return r;
}

} // namespace

HVec project(const HVec& v, Part part)
{
    HVec r = v;
    const HbarWindow w = v.window();
    for (int j = w.lo; j <= w.hi; ++j) {
        for (int k = 0; k <= v.n(); ++k) {
            if (S0Grading::part(k, j) != part) r.at(k, j) = TPoly(v.nvars(), v.degree());
        }
    }
    return r;
}

TransversalityReport transversality_check(const ThetaFamily& theta)
{
    TransversalityReport rep;
    const int n = theta.n;
    const int top = theta.window().hi;
    if (theta.j_max() < n) {
        rep.witness = "family has fewer than n + 1 columns";
        return rep;
    }
    for (int l = 0; l <= n; ++l) {
        if (auto w = generator_above_top(theta, l)) {
            rep.witness = *w;
            return rep;
        }
    }
    const RationalMatrix p = leading_matrix(theta);
    rep.passed = true;
    for (int J = 0; J <= top; ++J) {
        const int m = std::min(n, J);
        const auto r = static_cast<int>(rank(leading_block(p, m)));
        rep.rank_profile.push_back(r);
        rep.block_size.push_back(m + 1);
        if (r != m + 1 && rep.passed) {
            rep.passed = false;
            rep.witness = "block at hbar^" + std::to_string(J) + " has rank " + std::to_string(r) + " < " +
                          std::to_string(m + 1);
        }
        for (int l = 0; l <= m; ++l) {
            rep.leads.push_back({l, J - l, Slot{l, J}, p(static_cast<std::size_t>(l), static_cast<std::size_t>(l))});
        }
    }
    return rep;
}

NormalizedPeriod solve_normalized_period(const ThetaFamily& theta)
{
    const TransversalityReport rep = transversality_check(theta);
    if (!rep.passed) throw SingularSolve("solve_normalized_period: transversality fails: " + rep.witness);

    const int n = theta.n;
    const int D = theta.degree;
    const auto nv = theta.nvars();
    const HbarWindow W = theta.window();
    const int hi = W.hi;
    const PeriodTable phi(theta);

    const RationalMatrix p = leading_matrix(theta);
    std::vector<RationalMatrix> block_inv;
    for (int m = 0; m <= n; ++m) block_inv.push_back(inverse(leading_block(p, m)));

    NormalizedPeriod out;
    out.n = n;
    out.degree = D;
    // Psi = sum_{l,p} w_{l,p}(t) hbar^p phi^l.
    std::map<std::pair<int, int>, TPoly> w;
    const TPoly zero(nv, D);

    auto t_index = [&](int k, int J) { return static_cast<std::size_t>(J) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(k); };

    for (int d = 0; d <= D; ++d) {
        // Residual pi_T(known part of Psi^{(d)} - delta_{d0} Omega_0).
        std::vector<TPoly> weights;
        std::vector<std::pair<int, int>> keys;
        for (const auto& [key, poly] : w) {
            TPoly h = poly.homogeneous_part(d);
            if (h.is_zero()) continue;
            weights.push_back(std::move(h));
            keys.push_back(key);
        }
        std::vector<kernels::SparseRow> rows(static_cast<std::size_t>((hi + 1) * (n + 1)));
        for (int J = 0; J <= hi; ++J) {
            for (int k = 0; k <= std::min(n, J); ++k) {
                auto& row = rows[t_index(k, J)];
                for (std::size_t q = 0; q < keys.size(); ++q) {
                    const auto [l, pw] = keys[q];
                    const Rational& c = phi.at(l, k, J - pw);
                    if (c != 0) row.entries.emplace_back(q, c);
                }
            }
        }
        std::vector<TPoly> R = kernels::combine_parallel(weights, rows, nv, D);
        if (d == 0) {
            for (int J = 0; J <= hi; ++J) {
                for (int k = 0; k <= std::min(n, J); ++k) {
                    R[t_index(k, J)] -= TPoly::constant(nv, D, phi.at(0, k, J));
                }
            }
        }

        // Sweep from the top: block J fixes the generators with top degree J.
        std::vector<std::pair<std::pair<int, int>, TPoly>> found;
        for (int J = hi; J >= 0; --J) {
            const int m = std::min(n, J);
            const RationalMatrix& inv = block_inv[static_cast<std::size_t>(m)];
            std::vector<TPoly> xs;
            for (int l = 0; l <= m; ++l) {
                TPoly x(nv, D);
                for (int k = 0; k <= m; ++k) {
                    const Rational& c = inv(static_cast<std::size_t>(l), static_cast<std::size_t>(k));
                    if (c != 0) x.add_scaled(R[t_index(k, J)], -c);
                }
                xs.push_back(std::move(x));
            }
            for (int l = 0; l <= m; ++l) {
                TPoly& x = xs[static_cast<std::size_t>(l)];
                if (x.is_zero()) continue;
                const int i = J - l;
                for (int jp = 0; jp <= J; ++jp) {
                    for (int k = 0; k <= std::min(n, jp); ++k) {
                        const Rational& c = phi.at(l, k, jp - i);
                        if (c != 0) R[t_index(k, jp)].add_scaled(x, c);
                    }
                }
                found.push_back({{l, i}, std::move(x)});
            }
        }
        for (int J = 0; J <= hi; ++J) {
            for (int k = 0; k <= std::min(n, J); ++k) {
                if (!R[t_index(k, J)].is_zero()) {
                    throw SingularSolve("solve_normalized_period: residual left at " + slot_name(k, J) + " in t-degree " +
                                        std::to_string(d));
                }
            }
        }

        // Propagate the new u through the s-expansion of the columns.
        for (const auto& [key, x] : found) {
            const auto [l, i] = key;
            auto [it, inserted] = out.u.try_emplace(key, x);
            if (!inserted) it->second += x;
            for (int r = 0; r + d <= D; ++r) {
                for (int m = 0; m <= n * r && l + m < phi.size(); ++m) {
                    const TPoly& s = theta.s.by_power[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)];
                    if (s.is_zero()) continue;
                    TPoly prod = r == 0 ? x : x * s;
                    auto [wit, fresh] = w.try_emplace({l + m, i - r}, zero);
                    wit->second += prod;
                }
            }
        }
    }

    // Assemble Psi on the whole window.
    std::vector<TPoly> weights;
    std::vector<std::pair<int, int>> keys;
    int exact = W.lo;
    int top = W.lo;
    for (const auto& [key, poly] : w) {
        if (poly.is_zero()) continue;
        weights.push_back(poly);
        keys.push_back(key);
        exact = std::max(exact, phi.exact_from(key.first) + key.second);
        top = std::max(top, key.first + key.second);
    }
    const int reach = std::max(top, hi);
    std::vector<kernels::SparseRow> rows;
    std::vector<Slot> slots;
    for (int J = exact; J <= reach; ++J) {
        for (int k = 0; k <= n; ++k) {
            kernels::SparseRow row;
            for (std::size_t q = 0; q < keys.size(); ++q) {
                const auto [l, pw] = keys[q];
                const Rational& c = phi.at(l, k, J - pw);
                if (c != 0) row.entries.emplace_back(q, c);
            }
            if (row.entries.empty()) continue;
            rows.push_back(std::move(row));
            slots.push_back({k, J});
        }
    }
    const auto vals = kernels::combine_parallel(weights, rows, nv, D);
    HVec psi(n, W, nv, D);
    int psi_top = W.lo;
    for (std::size_t q = 0; q < vals.size(); ++q) {
        if (vals[q].is_zero()) continue;
        if (slots[q].j > hi) {
            throw WindowOverflow("solve_normalized_period: Psi reaches " + slot_name(slots[q].k, slots[q].j) +
                                     " above the window top " + std::to_string(hi),
                                 slots[q].k, slots[q].j);
        }
        psi.at(slots[q].k, slots[q].j) = vals[q];
        psi_top = std::max(psi_top, slots[q].j);
    }
    psi.set_exact_from(exact);

    out.psi = std::move(psi);
    out.omega0 = lift_constant(theta.phi[0].value, W, nv, D);
    out.y_of_t = extract_mirror_coordinates(out.psi, out.omega0);
    out.t_of_y = invert_coord_map(out.y_of_t);

    auto& diag = out.diagnostics;
    diag.window = W;
    diag.psi_exact_from = exact;
    diag.psi_top_degree = psi_top;
    diag.rank_profile = rep.rank_profile;
    for (const auto& [key, x] : out.u) {
        if (!x.is_zero()) diag.max_hbar_power = std::max(diag.max_hbar_power, key.second);
    }
    return out;
}

CoordMap extract_mirror_coordinates(const HVec& psi, const HVec& omega0)
{
    const int n = psi.n();
    if (psi.exact_from() > -1) {
        throw WindowTooShallow("extract_mirror_coordinates: Psi not exact at hbar^-1 (exact from " +
                               std::to_string(psi.exact_from()) + ")");
    }
    std::vector<TPoly> y;
    for (int k = 0; k <= n; ++k) y.push_back(psi.get(k, k - 1) - omega0.get(k, k - 1));
    return CoordMap(std::move(y));
}

HVec reparametrize(const NormalizedPeriod& np)
{
    const Substitution sub(np.t_of_y.images(), np.psi.nvars(), np.psi.degree());
    return np.psi.substituted(sub);
}

CheckResult normalization_check(const NormalizedPeriod& np)
{
    const std::string name = "pf.normalization";
    const HVec& psi = np.psi;
    const HbarWindow w = psi.window();
    for (int J = std::max(0, psi.exact_from()); J <= w.hi; ++J) {
        for (int k = 0; k <= std::min(np.n, J); ++k) {
            if (!(psi.at(k, J) == np.omega0.at(k, J))) {
                return CheckResult::fail(name, "pi_T(Psi - Omega_0) nonzero at " + slot_name(k, J) + ": " +
                                                   (psi.at(k, J) - np.omega0.at(k, J)).to_string());
            }
        }
    }
    const HVec origin = psi.at_origin();
    const HVec base = np.omega0.at_origin();
    if (auto d = first_difference(origin, base, psi.exact_from(), w.hi, 0)) {
        return CheckResult::fail(name, "Psi(0) != Omega_0 at " + slot_name(d->slot.k, d->slot.j) + ": " + d->detail);
    }
    return CheckResult::pass(name);
}

} // namespace mirrorgw
