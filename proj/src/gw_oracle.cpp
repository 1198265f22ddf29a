#include <mirrorgw/gw_oracle.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include <mirrorgw/linalg.hpp>

namespace mirrorgw {

namespace {

using Profile = std::vector<int>;   // (m_2, ..., m_n)

int weight(const Profile& m)
{
    int w = 0;
    for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<int>(i + 1) * m[i];
    return w;
}

int target_weight(int n, int d) { return (n + 1) * d + n - 3; }

// Affine function of the unknowns of the current degree.
struct LinForm {
    Rational constant;
    std::map<std::size_t, Rational> coef;

    bool is_zero() const { return constant == 0 && coef.empty(); }
    void add(const LinForm& o, const Rational& s)
    {
        if (s == 0) return;
        constant += o.constant * s;
        for (const auto& [k, v] : o.coef) {
            Rational& x = coef[k];
            x += v * s;
            if (x == 0) coef.erase(k);
        }
    }
};

// Every profile with weight <= w_max.
std::vector<Profile> profiles_up_to(int n, int w_max)
{
    std::vector<Profile> out;
    Profile cur(static_cast<std::size_t>(n - 1), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == cur.size()) {
            out.push_back(cur);
            return;
        }
        const int k = static_cast<int>(i) + 2;
        for (int m = 0; m * (k - 1) <= left; ++m) {
            cur[i] = m;
            self(self, i + 1, left - m * (k - 1));
        }
        cur[i] = 0;
    };
    if (w_max >= 0) rec(rec, 0, w_max);
    return out;
}

Rational multinomial_split(const Profile& m, const Profile& m1)
{
    Rational c = 1;
    for (std::size_t i = 0; i < m.size(); ++i) c *= binomial(m[i], m1[i]);
    return c;
}

class Reconstructor {
public:
    Reconstructor(int n, int d_max) : n_(n), d_max_(d_max) { table_.n = n; }

    GWTable run()
    {
        for (int d = 1; d <= d_max_; ++d) solve_degree(d);
        table_.d_max = d_max_;
        return table_;
    }

private:
    // Third derivative d_a d_b d_c of the potential, coefficient of
    // q^dd y^M / M! (q = e^{y^1}); linear in the unknowns when dd == current_.
    LinForm gamma(int a, int b, int c, int dd, const Profile& M) const
    {
        LinForm out;
        if (dd == 0) {
            const bool origin = std::all_of(M.begin(), M.end(), [](int x) { return x == 0; });
            if (origin && a + b + c == n_) out.constant = 1;
            return out;
        }
        if (a == 0 || b == 0 || c == 0) return out;
        Profile full = M;
        Integer power = 1;
        for (int idx : {a, b, c}) {
            if (idx == 1) power *= dd;
            else ++full[static_cast<std::size_t>(idx - 2)];
        }
        if (weight(full) != target_weight(n_, dd)) return out;
        if (dd < current_) {
            out.constant = Rational(power) * table_.entries.at({dd, full});
        } else {
            out.coef[unknown_index_.at(full)] = Rational(power);
        }
        return out;
    }

    // Coefficient at (dd, M) of sum_e F_{a b e} F_{(n-e) c d}.
    LinForm side(int a, int b, int c, int dq, int dd, const Profile& M) const
    {
        LinForm out;
        const auto splits = sub_profiles(M);
        for (int e = 0; e <= n_; ++e) {
            for (int d1 = 0; d1 <= dd; ++d1) {
                const int d2 = dd - d1;
                for (const Profile& M1 : splits) {
                    Profile M2 = M;
                    for (std::size_t i = 0; i < M.size(); ++i) M2[i] -= M1[i];
                    const LinForm x = gamma(a, b, e, d1, M1);
                    if (x.is_zero()) continue;
                    const LinForm y = gamma(n_ - e, c, dq, d2, M2);
                    if (y.is_zero()) continue;
                    const Rational binom = multinomial_split(M, M1);
                    // At most one factor carries unknowns: the other has d = 0.
                    if (!x.coef.empty()) {
                        out.add(x, binom * y.constant);
                    } else {
                        out.add(y, binom * x.constant);
                    }
                }
            }
        }
        return out;
    }

    static std::vector<Profile> sub_profiles(const Profile& M)
    {
        std::vector<Profile> out;
        Profile cur(M.size(), 0);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == M.size()) {
                out.push_back(cur);
                return;
            }
            for (int x = 0; x <= M[i]; ++x) {
                cur[i] = x;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        return out;
    }

    void solve_degree(int d)
    {
        current_ = d;
        unknown_index_.clear();
        std::vector<Profile> unknowns;
        for (const Profile& p : profiles_up_to(n_, target_weight(n_, d))) {
            if (weight(p) == target_weight(n_, d)) {
                unknown_index_[p] = unknowns.size();
                unknowns.push_back(p);
            }
        }
        if (unknowns.empty()) return;

        std::vector<LinForm> eqs;
        if (d == 1) {
            // Seed: one line through two points.
            LinForm seed;
            Profile two(static_cast<std::size_t>(n_ - 1), 0);
            if (n_ >= 2) two.back() = 2;
            seed.coef[unknown_index_.at(two)] = 1;
            seed.constant = -1;
            eqs.push_back(seed);
        }
        // Equation coefficients at (d, M): every M the unknowns can reach.
        const int n = n_;
        for (const Profile& M : profiles_up_to(n, target_weight(n, d))) {
            for (int a = 1; a <= n; ++a) {
                for (int b = a; b <= n; ++b) {
                    for (int c = 1; c <= n; ++c) {
                        for (int q = c; q <= n; ++q) {
                            LinForm lhs = side(a, b, c, q, d, M);
                            lhs.add(side(a, q, c, b, d, M), Rational(-1));
                            if (!lhs.is_zero()) eqs.push_back(std::move(lhs));
                        }
                    }
                }
            }
        }

        const std::size_t cols = unknowns.size();
        RationalMatrix m(eqs.size(), cols + 1);
        for (std::size_t r = 0; r < eqs.size(); ++r) {
            for (const auto& [k, v] : eqs[r].coef) m(r, k) = v;
            m(r, cols) = -eqs[r].constant;
        }
        const RowEchelon ech = row_reduce(m);
        for (std::size_t p : ech.pivots) {
            if (p == cols) {
                throw OracleFailure("reconstruct: inconsistent equations at degree " + std::to_string(d));
            }
        }
        if (ech.rank() != cols) {
            throw OracleFailure("reconstruct: degree " + std::to_string(d) + " underdetermined (rank " +
                                std::to_string(ech.rank()) + " of " + std::to_string(cols) + ")");
        }
        for (std::size_t r = 0; r < cols; ++r) {
            table_.entries[{d, unknowns[ech.pivots[r]]}] = ech.reduced(r, cols);
        }
    }

    int n_;
    int d_max_;
    int current_ = 0;
    GWTable table_;
    std::map<Profile, std::size_t> unknown_index_;
};

} // namespace

Rational GWTable::get(int d, const std::vector<int>& m) const
{
    if (d < 1 || d > d_max) throw OracleFailure("GWTable: degree " + std::to_string(d) + " not reconstructed");
    auto it = entries.find({d, m});
    return it == entries.end() ? Rational(0) : it->second;
}

GWTable reconstruct(int n, int d_max)
{
    if (n < 1 || d_max < 1) throw std::invalid_argument("reconstruct: need n >= 1 and d_max >= 1");
    if (n == 1) {
        // Two-dimensional: associativity is vacuous and only d = 1 passes the
        // dimension filter.
        GWTable t;
        t.n = 1;
        t.d_max = d_max;
        t.entries[{1, {}}] = 1;
        return t;
    }
    return Reconstructor(n, d_max).run();
}

std::map<int, Rational> kontsevich_cp2(int d_max)
{
    std::map<int, Rational> N;
    if (d_max >= 1) N[1] = 1;
    for (int d = 2; d <= d_max; ++d) {
        Rational s = 0;
        for (int d1 = 1; d1 < d; ++d1) {
            const int d2 = d - d1;
            const long top = 3 * d - 4;
            Rational term = Rational(d1 * d1 * d2 * d2) * binomial(top, 3 * d1 - 2);
            term -= Rational(d1 * d1 * d1 * d2) * binomial(top, 3 * d1 - 1);
            s += N[d1] * N[d2] * term;
        }
        N[d] = s;
    }
    return N;
}

int oracle_degree_needed(int n, int D)
{
    if (n == 1) return 1;
    int d = 0;
    // Smallest profile of degree d puts everything on y^n.
    while (true) {
        const int w = target_weight(n, d + 1);
        const int least = (w + n - 2) / (n - 1);
        if (least > D) break;
        ++d;
    }
    return std::max(d, 1);
}

Potential oracle_potential(const GWTable& table, int D)
{
    const int n = table.n;
    const auto nv = static_cast<std::size_t>(n + 1);
    if (table.d_max < oracle_degree_needed(n, D)) {
        throw OracleFailure("oracle_potential: table stops at degree " + std::to_string(table.d_max) + ", need " +
                            std::to_string(oracle_degree_needed(n, D)));
    }
    std::vector<Term> terms;
    // (1/6) sum over ordered (i,j,k) = 1/|stabilizer| per distinct monomial.
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const int k = n - i - j;
            if (k < 0) continue;
            std::vector<int> e(nv, 0);
            ++e[static_cast<std::size_t>(i)];
            ++e[static_cast<std::size_t>(j)];
            ++e[static_cast<std::size_t>(k)];
            terms.push_back({Monomial::from_exponents(e), Rational(1, 6)});
        }
    }
    for (const auto& [key, N] : table.entries) {
        const auto& [d, m] = key;
        int size = 0;
        Rational mfact = 1;
        for (int x : m) {
            size += x;
            mfact *= factorial(static_cast<unsigned>(x));
        }
        Rational dpow = 1;
        for (int j = 0; size + j <= D; ++j) {
            if (size + j >= 3 && N != 0) {
                std::vector<int> e(nv, 0);
                e[1] = j;
                for (std::size_t i = 0; i < m.size(); ++i) e[i + 2] = m[i];
                terms.push_back({Monomial::from_exponents(e), N * dpow / (factorial(static_cast<unsigned>(j)) * mfact)});
            }
            dpow *= d;
        }
    }
    Potential p;
    p.n = n;
    p.phi = TPoly::from_terms(nv, D, std::move(terms));
    return p;
}

CompareReport compare(const Potential& mirror, const Potential& oracle)
{
    if (mirror.n != oracle.n || mirror.degree() != oracle.degree()) {
        throw std::invalid_argument("compare: potentials differ in n or truncation");
    }
    CompareReport rep;
    const auto nv = static_cast<std::size_t>(mirror.n + 1);
    std::set<Monomial> monos;
    for (const auto& t : mirror.phi.terms()) monos.insert(t.mono);
    for (const auto& t : oracle.phi.terms()) monos.insert(t.mono);
    for (Monomial m : monos) {
        const Rational a = mirror.phi.coeff(m);
        const Rational b = oracle.phi.coeff(m);
        if (a != b) rep.discrepancies.push_back({m.exponents(nv), a, b});
    }
    rep.equal = rep.discrepancies.empty();
    return rep;
}

} // namespace mirrorgw
