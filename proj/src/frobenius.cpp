#include <mirrorgw/frobenius.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <string>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/normalization.hpp>
#include <mirrorgw/periods.hpp>

namespace mirrorgw {

namespace {

std::string slot_name(int k, int j) { return "(" + std::to_string(k) + ", " + std::to_string(j) + ")"; }

std::string triple_name(const char* sym, int a, int b, int c)
{
    return std::string(sym) + "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

std::string monomial_name(Monomial m, std::size_t nvars)
{
    std::string s;
    for (std::size_t v = 0; v < nvars; ++v) {
        const int e = m.exponent(v);
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += "y" + std::to_string(v);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

// First monomial where a and b differ, for witnesses.
std::string first_term_difference(const TPoly& a, const TPoly& b)
{
    const TPoly diff = a - b;
    if (diff.is_zero()) return "equal";
    const Term& t = diff.terms().front();
    return "at " + monomial_name(t.mono, a.nvars()) + " difference " + to_string(t.coef);
}

Rational exponent_factorial(Monomial m, std::size_t nvars)
{
    Rational f = 1;
    for (std::size_t v = 0; v < nvars; ++v) f *= factorial(static_cast<unsigned>(m.exponent(v)));
    return f;
}

} // namespace

ConnectionData connection_from_period(const HVec& psi_y, int n)
{
    ConnectionData cd;
    cd.n = n;
    const int D = psi_y.degree();
    if (D < 2) throw std::invalid_argument("connection_from_period: need t-degree >= 2");
    cd.degree = D - 2;
    const auto dim = cd.dim();
    const auto nv = psi_y.nvars();
    const HbarWindow w = psi_y.window();
    cd.A.assign(dim * dim * dim, TPoly(nv, cd.degree));

    cd.g = RationalMatrix(dim, dim);
    for (int a = 0; a <= n; ++a) cd.g(static_cast<std::size_t>(a), static_cast<std::size_t>(n - a)) = 1;
    for (int a = 0; a <= n; ++a) {
        TPoly e = TPoly::variable(nv, D - 1, static_cast<std::size_t>(a)) * Rational(a - 1);
        if (a == 1) e -= TPoly::constant(nv, D - 1, Rational(n + 1));
        cd.euler.push_back(std::move(e));
    }

    std::vector<HVec> first;
    for (int c = 0; c <= n; ++c) first.push_back(psi_y.derivative(static_cast<std::size_t>(c)).truncated(cd.degree));

    std::string failure;
    for (int a = 0; a <= n && failure.empty(); ++a) {
        const HVec da = psi_y.derivative(static_cast<std::size_t>(a));
        for (int b = a; b <= n && failure.empty(); ++b) {
            HVec V;
            try {
                V = da.derivative(static_cast<std::size_t>(b)).shift_hbar(1);
            } catch (const WindowOverflow& e) {
                failure = std::string("overflow: ") + e.what();
                break;
            }
            const int from = V.exact_from();
            if (from > -1) throw WindowTooShallow("connection_from_period: hbar d^2 Psi not exact at hbar^-1");
            for (int J = std::max(0, from); J <= w.hi && failure.empty(); ++J) {
                for (int k = 0; k <= std::min(n, J); ++k) {
                    if (!V.at(k, J).is_zero()) {
                        failure = "T-part of hbar d" + std::to_string(a) + "d" + std::to_string(b) + " Psi at " +
                                  slot_name(k, J) + ": " + V.at(k, J).to_string("y");
                        break;
                    }
                }
            }
            for (int c = 0; c <= n; ++c) {
                cd.at(a, b, c) = V.at(c, c - 1);
                cd.at(b, a, c) = V.at(c, c - 1);
            }
            // Full identity on every exact slot.
            for (int J = from; J <= w.hi && failure.empty(); ++J) {
                for (int k = 0; k <= n; ++k) {
                    TPoly rhs(nv, cd.degree);
                    for (int c = 0; c <= n; ++c) {
                        const TPoly& x = first[static_cast<std::size_t>(c)].at(k, J);
                        if (!x.is_zero() && !cd.at(a, b, c).is_zero()) rhs += cd.at(a, b, c) * x;
                    }
                    if (!(rhs == V.at(k, J))) {
                        failure = "hbar d" + std::to_string(a) + "d" + std::to_string(b) +
                                  " Psi != sum_c A^c d_c Psi at " + slot_name(k, J) + ": " +
                                  first_term_difference(V.at(k, J), rhs);
                        break;
                    }
                }
            }
        }
    }
    cd.residuals.push_back(failure.empty() ? CheckResult::pass("pf.connection")
                                           : CheckResult::fail("pf.connection", failure));
    return cd;
}

std::vector<CheckResult> verify_flatness(const ConnectionData& cd)
{
    const int n = cd.n;
    std::vector<CheckResult> out;

    std::string dA;
    for (int a = 0; a <= n && dA.empty(); ++a) {
        for (int b = 0; b <= n && dA.empty(); ++b) {
            for (int c = 0; c <= n && dA.empty(); ++c) {
                for (int d = 0; d <= n; ++d) {
                    const TPoly lhs = cd.at(a, b, c).derivative(static_cast<std::size_t>(d));
                    const TPoly rhs = cd.at(d, b, c).derivative(static_cast<std::size_t>(a));
                    if (!(lhs == rhs)) {
                        dA = "d_" + std::to_string(d) + " A^" + std::to_string(c) + "_{" + std::to_string(a) +
                             std::to_string(b) + "} != d_" + std::to_string(a) + " A^" + std::to_string(c) + "_{" +
                             std::to_string(d) + std::to_string(b) + "} " + first_term_difference(lhs, rhs);
                        break;
                    }
                }
            }
        }
    }
    out.push_back(dA.empty() ? CheckResult::pass("flatness.dA") : CheckResult::fail("flatness.dA", dA));

    // [A_a, A_d] = 0 as matrices (A_a)^c_b = A^c_{ab}.
    std::string comm;
    for (int a = 0; a <= n && comm.empty(); ++a) {
        for (int d = a + 1; d <= n && comm.empty(); ++d) {
            for (int b = 0; b <= n && comm.empty(); ++b) {
                for (int c = 0; c <= n; ++c) {
                    TPoly acc(cd.at(0, 0, 0).nvars(), cd.degree);
                    for (int e = 0; e <= n; ++e) {
                        acc += cd.at(a, b, e) * cd.at(e, d, c);
                        acc -= cd.at(d, b, e) * cd.at(e, a, c);
                    }
                    if (!acc.is_zero()) {
                        comm = "sum_e A^e_{" + std::to_string(a) + std::to_string(b) + "} A^" + std::to_string(c) +
                               "_{e" + std::to_string(d) + "} - (a<->d) = " + acc.to_string("y");
                        break;
                    }
                }
            }
        }
    }
    out.push_back(comm.empty() ? CheckResult::pass("flatness.commutator")
                               : CheckResult::fail("flatness.commutator", comm));
    return out;
}

LoweredTensor lower_index(const ConnectionData& cd)
{
    const int n = cd.n;
    LoweredTensor t;
    t.n = n;
    t.degree = cd.degree;
    t.T.resize(cd.A.size());
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            for (int c = 0; c <= n; ++c) t.T[cd.index(a, b, c)] = cd.at(a, b, n - c);
        }
    }
    std::string asym;
    for (int a = 0; a <= n && asym.empty(); ++a) {
        for (int b = 0; b <= n && asym.empty(); ++b) {
            for (int c = 0; c <= n; ++c) {
                const std::array<std::array<int, 3>, 5> perms{{{b, a, c}, {a, c, b}, {c, b, a}, {b, c, a}, {c, a, b}}};
                for (const auto& p : perms) {
                    if (!(t.at(a, b, c) == t.at(p[0], p[1], p[2]))) {
                        asym = triple_name("A", a, b, c) + " != " + triple_name("A", p[0], p[1], p[2]) + " " +
                               first_term_difference(t.at(a, b, c), t.at(p[0], p[1], p[2]));
                        break;
                    }
                }
                if (!asym.empty()) break;
            }
        }
    }
    t.symmetry = asym.empty() ? CheckResult::pass("flatness.symmetry") : CheckResult::fail("flatness.symmetry", asym);
    return t;
}

IntegratedPotential potential_from_tensor(const LoweredTensor& T)
{
    const int n = T.n;
    const auto nv = static_cast<std::size_t>(n + 1);
    const int P = T.degree + 3;
    std::vector<Term> terms;
    for (int a = 0; a <= n; ++a) {
        for (int b = a; b <= n; ++b) {
            for (int c = b; c <= n; ++c) {
                const std::array<int, 3> idx{a, b, c};
                const Monomial abc = Monomial::variable(static_cast<std::size_t>(a)) *
                                     Monomial::variable(static_cast<std::size_t>(b)) *
                                     Monomial::variable(static_cast<std::size_t>(c));
                for (const auto& t : T.at(a, b, c).terms()) {
                    const Monomial e = t.mono * abc;
                    // Each monomial is read from the triple of its three lowest variables.
                    std::array<int, 3> first{};
                    int found = 0;
                    for (std::size_t v = 0; v < nv && found < 3; ++v) {
                        for (int r = 0; r < e.exponent(v) && found < 3; ++r) first[static_cast<std::size_t>(found++)] = static_cast<int>(v);
                    }
                    if (first != idx) continue;
                    Integer f = 1;
                    std::vector<int> ex = e.exponents(nv);
                    for (int v : idx) {
                        f *= ex[static_cast<std::size_t>(v)];
                        --ex[static_cast<std::size_t>(v)];
                    }
                    terms.push_back({e, t.coef / Rational(f)});
                }
            }
        }
    }
    IntegratedPotential out;
    out.potential.n = n;
    out.potential.phi = TPoly::from_terms(nv, P, std::move(terms));

    std::string bad;
    for (int a = 0; a <= n && bad.empty(); ++a) {
        for (int b = 0; b <= n && bad.empty(); ++b) {
            for (int c = 0; c <= n; ++c) {
                const std::array<std::size_t, 3> vars{static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                                                      static_cast<std::size_t>(c)};
                const TPoly d3 = out.potential.phi.derivative(vars);
                if (!(d3 == T.at(a, b, c))) {
                    bad = "d^3 Phi / " + triple_name("dy", a, b, c) + " != " + triple_name("A", a, b, c) + " " +
                          first_term_difference(d3, T.at(a, b, c));
                    break;
                }
            }
        }
    }
    out.integrability = bad.empty() ? CheckResult::pass("flatness.integrability")
                                    : CheckResult::fail("flatness.integrability", bad);
    return out;
}

std::vector<CheckResult> euler_checks(const HVec& psi_y, const ConnectionData& cd)
{
    const int n = cd.n;
    const int D = psi_y.degree();
    const HbarWindow w = psi_y.window();
    std::vector<CheckResult> out;

    // Operator identity.
    {
        const HVec lhs = hbar_derivative(psi_y).truncated(D - 1);
        HVec sum(n, w, psi_y.nvars(), D - 1);
        sum.set_exact_from(psi_y.exact_from());
        for (int a = 0; a <= n; ++a) {
            sum += psi_y.derivative(static_cast<std::size_t>(a)).scaled(cd.euler[static_cast<std::size_t>(a)]);
        }
        const HVec rhs = sum.shift_hbar(-1);
        const int from = std::max(lhs.exact_from(), rhs.exact_from());
        if (auto d = first_difference(lhs, rhs, from, w.hi, D - 1)) {
            out.push_back(CheckResult::fail("euler.operator", "hbar_derivative(Psi) != hbar^-1 E Psi at " +
                                                                  slot_name(d->slot.k, d->slot.j) + ": " + d->detail));
        } else {
            out.push_back(CheckResult::pass("euler.operator"));
        }
    }

    // Conformality: with the grading field sum (1-k) y^k d_k + (n+1) d_1, every
    // A^c_{ab} has weight a + b - c and g has weight 2 - n.
    std::string bad;
    const auto nv = psi_y.nvars();
    for (int a = 0; a <= n && bad.empty(); ++a) {
        for (int b = 0; b <= n && bad.empty(); ++b) {
            if (cd.g(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) != 0 && (1 - a) + (1 - b) != 2 - n) {
                bad = "g_{" + std::to_string(a) + std::to_string(b) + "} has weight " + std::to_string(2 - a - b);
                break;
            }
            for (int c = 0; c <= n && bad.empty(); ++c) {
                const TPoly& A = cd.at(a, b, c);
                std::vector<Monomial> probes;
                for (const auto& t : A.terms()) {
                    if (t.mono.degree() < cd.degree) probes.push_back(t.mono);
                    if (t.mono.exponent(1) > 0) probes.push_back(t.mono.lowered(1));
                }
                std::sort(probes.begin(), probes.end());
                probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
                for (Monomial e : probes) {
                    int weight = 0;
                    for (std::size_t k = 0; k < nv; ++k) weight += (1 - static_cast<int>(k)) * e.exponent(k);
                    const Rational lhs = Rational(weight - (a + b - c)) * A.coeff(e) +
                                         Rational((n + 1) * (e.exponent(1) + 1)) * A.coeff(e * Monomial::variable(1));
                    if (lhs != 0) {
                        bad = "grading of A^" + std::to_string(c) + "_{" + std::to_string(a) + std::to_string(b) +
                              "} fails at " + monomial_name(e, nv) + ": residual " + to_string(lhs);
                        break;
                    }
                }
            }
        }
    }
    out.push_back(bad.empty() ? CheckResult::pass("euler.grading") : CheckResult::fail("euler.grading", bad));
    return out;
}

CheckResult identity_check(const HVec& psi_y, const ConnectionData& cd)
{
    const std::string name = "identity";
    const int D = psi_y.degree();
    const HVec lhs = psi_y.shift_hbar(-1).truncated(D - 1);
    const HVec rhs = psi_y.derivative(0);
    const int from = std::max(lhs.exact_from(), rhs.exact_from());
    if (auto d = first_difference(lhs, rhs, from, psi_y.window().hi, D - 1)) {
        return CheckResult::fail(name, "hbar^-1 Psi != d_0 Psi at " + slot_name(d->slot.k, d->slot.j) + ": " + d->detail);
    }
    const auto nv = psi_y.nvars();
    for (int b = 0; b <= cd.n; ++b) {
        for (int c = 0; c <= cd.n; ++c) {
            const TPoly expect = TPoly::constant(nv, cd.degree, Rational(b == c ? 1 : 0));
            if (!(cd.at(0, b, c) == expect)) {
                return CheckResult::fail(name, "A^" + std::to_string(c) + "_{0" + std::to_string(b) + "} = " +
                                                   cd.at(0, b, c).to_string("y"));
            }
        }
    }
    return CheckResult::pass(name);
}

CheckResult wdvv_check(const Potential& phi)
{
    const std::string name = "wdvv";
    const int n = phi.n;
    const auto dim = static_cast<std::size_t>(n + 1);
    if (phi.degree() < 3) return CheckResult::pass(name);
    std::vector<TPoly> d3(dim * dim * dim);
    auto at = [&](int a, int b, int c) -> TPoly& {
        return d3[(static_cast<std::size_t>(a) * dim + static_cast<std::size_t>(b)) * dim + static_cast<std::size_t>(c)];
    };
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            for (int c = 0; c <= n; ++c) {
                const std::array<std::size_t, 3> vars{static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                                                      static_cast<std::size_t>(c)};
                at(a, b, c) = phi.phi.derivative(vars);
            }
        }
    }
    // sum_e F_{abe} F_{(n-e)cd}: symmetric in (a,b) and in (c,d), so only
    // a <= b, c <= d need checking against the exchange b <-> d.
    auto side = [&](int a, int b, int c, int d) {
        TPoly s(phi.phi.nvars(), phi.degree() - 3);
        for (int e = 0; e <= n; ++e) {
            if (at(a, b, e).is_zero() || at(n - e, c, d).is_zero()) continue;
            s += at(a, b, e) * at(n - e, c, d);
        }
        return s;
    };
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            for (int c = 0; c <= n; ++c) {
                for (int d = 0; d <= n; ++d) {
                    const TPoly lhs = side(a, b, c, d);
                    const TPoly rhs = side(a, d, c, b);
                    if (!(lhs == rhs)) {
                        return CheckResult::fail(name, "indices (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                           std::to_string(c) + "," + std::to_string(d) + ") " +
                                                           first_term_difference(lhs, rhs));
                    }
                }
            }
        }
    }
    return CheckResult::pass(name);
}

Rational sigma_weight(int n, const std::vector<int>& m)
{
    // m = (m_1, ..., m_n)
    long w = 3 - n;
    for (std::size_t k = 2; k <= m.size(); ++k) w += static_cast<long>(k - 1) * m[k - 1];
    return make_rational(w, n + 1);
}

int complete_degree(int n, int D)
{
    if (n == 1) return D >= 3 ? 1 : 0;
    return std::max(0, (D - n + 3) / (n + 1));
}

std::vector<std::vector<int>> incidence_profiles(int n, int d)
{
    const int W = (n + 1) * d + n - 3;
    std::vector<std::vector<int>> out;
    if (W < 0) return out;
    std::vector<int> cur(static_cast<std::size_t>(n - 1), 0);
    // cur[i] = m_{i+2}
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == cur.size()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        const int k = static_cast<int>(i) + 2;
        for (int m = 0; m * (k - 1) <= left; ++m) {
            cur[i] = m;
            rec(i + 1, left - m * (k - 1));
        }
        cur[i] = 0;
    };
    rec(0, W);
    return out;
}

SigmaTable sigma_extract(const Potential& phi)
{
    const int n = phi.n;
    const auto nv = static_cast<std::size_t>(n + 1);
    const int D = phi.degree();
    SigmaTable st;
    st.n = n;
    std::string bad;

    // Terms containing y^0 must be the classical cubic.
    for (const auto& t : phi.phi.terms()) {
        if (t.mono.exponent(0) == 0) continue;
        Rational expect = 0;
        if (t.mono.degree() == 3) {
            int weight = 0;
            for (std::size_t k = 0; k < nv; ++k) weight += static_cast<int>(k) * t.mono.exponent(k);
            if (weight == n) expect = Rational(1) / exponent_factorial(t.mono, nv);
        }
        if (t.coef != expect && bad.empty()) {
            bad = "y^0 term outside the classical cubic: " + monomial_name(t.mono, nv) + " coefficient " + to_string(t.coef);
        }
    }

    std::vector<int> m(static_cast<std::size_t>(n));
    for (const auto& t : phi.phi.terms()) {
        if (t.mono.exponent(0) != 0) continue;
        for (int k = 1; k <= n; ++k) m[static_cast<std::size_t>(k - 1)] = t.mono.exponent(static_cast<std::size_t>(k));
        st.sigma[m] = t.coef * exponent_factorial(t.mono, nv);
    }
    auto sigma = [&](const std::vector<int>& key) {
        auto it = st.sigma.find(key);
        return it == st.sigma.end() ? Rational(0) : it->second;
    };

    // Recursion sigma(m + e_1) = lambda(m) sigma(m) and the vanishing rule,
    // over every monomial of degree 3..D in y^1..y^n.
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    std::function<void(std::size_t, int)> visit = [&](std::size_t i, int total) {
        if (!bad.empty()) return;
        if (i == cur.size()) {
            if (total < 3) return;
            const Rational lam = sigma_weight(n, cur);
            const Rational s = sigma(cur);
            if (!is_integer(lam) && s != 0) {
                bad = "sigma" + std::string("(") + [&] {
                    std::string r;
                    for (std::size_t q = 0; q < cur.size(); ++q) r += (q ? "," : "") + std::to_string(cur[q]);
                    return r;
                }() + ") = " + to_string(s) + " with non-integral weight " + to_string(lam);
                return;
            }
            if (total + 1 <= D) {
                std::vector<int> up = cur;
                ++up[0];
                if (sigma(up) != lam * s) {
                    std::string r;
                    for (std::size_t q = 0; q < cur.size(); ++q) r += (q ? "," : "") + std::to_string(cur[q]);
                    bad = "sigma recursion fails at m = (" + r + "): sigma(m+e1) = " + to_string(sigma(up)) +
                          ", weight * sigma(m) = " + to_string(lam * s);
                }
            }
            return;
        }
        for (int e = 0; total + e <= D; ++e) {
            cur[i] = e;
            visit(i + 1, total + e);
        }
        cur[i] = 0;
    };
    visit(0, 0);
    st.check = bad.empty() ? CheckResult::pass("sigma") : CheckResult::fail("sigma", bad);

    for (int d = 1;; ++d) {
        bool any = false;
        bool reachable = false;
        for (const auto& mp : incidence_profiles(n, d)) {
            int total = 0;
            for (int x : mp) total += x;
            const int m1 = std::max(0, 3 - total);
            if (m1 + total > D) continue;
            any = true;
            std::vector<int> key;
            key.push_back(m1);
            key.insert(key.end(), mp.begin(), mp.end());
            Rational N = sigma(key);
            for (int r = 0; r < m1; ++r) N /= d;
            st.gw.push_back({d, mp, N});
        }
        // Profiles of degree d need at least ((n+1)d + n - 3)/(n-1) variables.
        if (n >= 2) reachable = ((n + 1) * d + n - 3 + (n - 2)) / (n - 1) <= D;
        if (!any && !reachable) break;
        if (n == 1 && d >= 1) break;
    }
    return st;
}

} // namespace mirrorgw
