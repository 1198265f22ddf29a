#include <mirrorgw/pipeline.hpp>

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <mirrorgw/errors.hpp>

namespace mirrorgw {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    Stopwatch(std::map<std::string, double>& sink, std::string name, bool enabled)
        : sink_(sink), name_(std::move(name)), enabled_(enabled), start_(Clock::now())
    {
    }
    ~Stopwatch()
    {
        if (enabled_) sink_[name_] += std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    }

private:
    std::map<std::string, double>& sink_;
    std::string name_;
    bool enabled_;
    Clock::time_point start_;
};

std::string exponent_key(const std::vector<int>& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s;
}

std::string frame_name(const AlphaPoly& c) { return "c = " + c.to_string(); }

// First component where two coordinate maps or tensors differ.
std::optional<std::string> first_mismatch(const std::vector<TPoly>& a, const std::vector<TPoly>& b, const char* what)
{
    if (a.size() != b.size()) return std::string(what) + ": size differs";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i])) return std::string(what) + "[" + std::to_string(i) + "] differs";
    }
    return std::nullopt;
}

std::optional<std::string> compare_runs(const MirrorRun& a, const MirrorRun& b)
{
    if (auto m = first_mismatch(a.np.y_of_t.images(), b.np.y_of_t.images(), "y")) return m;
    if (auto m = first_mismatch(a.cd.A, b.cd.A, "A")) return m;
    if (!(a.phi_full.phi == b.phi_full.phi)) return std::string("Phi differs");
    return std::nullopt;
}

} // namespace

const std::vector<std::string>& check_groups()
{
    static const std::vector<std::string> groups{"pf",   "flatness", "euler", "identity",
                                                 "wdvv", "sigma",    "frame", "stability"};
    return groups;
}

bool RunConfig::wants(const std::string& group) const
{
    return std::find(checks.begin(), checks.end(), group) != checks.end();
}

void validate_config(const RunConfig& cfg)
{
    if (cfg.command != "compute" && cfg.command != "gw" && cfg.command != "verify") {
        throw ConfigError("unknown command '" + cfg.command + "'");
    }
    if (cfg.n < 1) throw ConfigError("--n must be >= 1");
    if (cfg.n > static_cast<int>(Monomial::max_vars) - 1) {
        throw ConfigError("--n must be <= " + std::to_string(Monomial::max_vars - 1));
    }
    if (cfg.degree < 3) throw ConfigError("--degree must be >= 3");
    if (cfg.dmax < 0) throw ConfigError("--dmax must be >= 1");
    if (cfg.hbar_depth && *cfg.hbar_depth < 1) throw ConfigError("--hbar-depth must be >= 1");
    if (cfg.window_top && *cfg.window_top < cfg.n) throw ConfigError("--window-top must be >= n");
    if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
    for (const auto& c : cfg.checks) {
        if (std::find(check_groups().begin(), check_groups().end(), c) == check_groups().end()) {
            throw ConfigError("unknown check group '" + c + "'");
        }
    }
}

PeriodWindows windows_for(const RunConfig& cfg)
{
    return default_windows(cfg.n, cfg.degree, cfg.hbar_depth, cfg.window_top);
}

MirrorRun run_mirror(int n, int degree, const PeriodWindows& windows, const MirrorOptions& opts)
{
    MirrorRun run;
    run.n = n;
    run.degree = degree;
    run.windows = windows;

    ThetaFamily theta = theta_columns(n, degree, windows);
    if (opts.frame) theta = theta.with_frame(*opts.frame);
    if (opts.pf) {
        run.checks.push_back(xi_ode_check(theta.phi[0], n));
        run.checks.push_back(griffiths_check(theta));
        const TransversalityReport tr = transversality_check(theta);
        run.checks.push_back(tr.passed ? CheckResult::pass("pf.transversality")
                                       : CheckResult::fail("pf.transversality", tr.witness));
    }

    run.np = solve_normalized_period(theta);
    if (opts.pf) run.checks.push_back(normalization_check(run.np));

    run.psi_y = reparametrize(run.np);
    if (opts.pf) {
        // In flat coordinates slot (k, k-1) of Psi - Omega_0 is exactly y^k.
        CheckResult flat = CheckResult::pass("pf.flat_coordinates");
        for (int k = 0; k <= n; ++k) {
            const TPoly got = run.psi_y.get(k, k - 1) - run.np.omega0.get(k, k - 1);
            const TPoly want = TPoly::variable(run.psi_y.nvars(), degree, static_cast<std::size_t>(k));
            if (!(got == want)) {
                flat = CheckResult::fail("pf.flat_coordinates", "slot (" + std::to_string(k) + ", " +
                                                                    std::to_string(k - 1) + ") = " + got.to_string("y"));
                break;
            }
        }
        run.checks.push_back(flat);
    }

    run.cd = connection_from_period(run.psi_y, n);
    if (opts.pf) run.checks.insert(run.checks.end(), run.cd.residuals.begin(), run.cd.residuals.end());
    if (opts.flatness) {
        const auto fl = verify_flatness(run.cd);
        run.checks.insert(run.checks.end(), fl.begin(), fl.end());
    }
    run.lowered = lower_index(run.cd);
    if (opts.flatness) run.checks.push_back(run.lowered.symmetry);
    IntegratedPotential ip = potential_from_tensor(run.lowered);
    if (opts.flatness) run.checks.push_back(ip.integrability);
    run.phi_full = ip.potential;
    run.phi = Potential{n, run.phi_full.phi.truncated(degree)};

    if (opts.euler) {
        const auto eu = euler_checks(run.psi_y, run.cd);
        run.checks.insert(run.checks.end(), eu.begin(), eu.end());
    }
    if (opts.identity) run.checks.push_back(identity_check(run.psi_y, run.cd));
    if (opts.wdvv) run.checks.push_back(wdvv_check(run.phi_full));
    run.sigma = sigma_extract(run.phi);
    if (opts.sigma) run.checks.push_back(run.sigma.check);
    return run;
}

std::vector<AlphaPoly> random_unipotent_frames(int n, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::vector<AlphaPoly> out;
    for (int i = 0; i < count; ++i) {
        AlphaPoly c = AlphaPoly::unit(n);
        for (int k = 1; k <= n; ++k) {
            // Plain modulo keeps the mapping identical across standard libraries.
            long num = static_cast<long>(rng() % 11) - 5;
            const long den = static_cast<long>(rng() % 4) + 1;
            if (k == 1 && num == 0) num = 1;
            c[k] = make_rational(num, den);
        }
        out.push_back(std::move(c));
    }
    return out;
}

CheckResult frame_invariance_test(const MirrorRun& base, const AlphaPoly& c)
{
    MirrorOptions opts{c, false, false, false, false, false, false};
    const MirrorRun other = run_mirror(base.n, base.degree, base.windows, opts);
    if (auto m = compare_runs(base, other)) return CheckResult::fail("frame", frame_name(c) + ": " + *m);
    return CheckResult::pass("frame");
}

PeriodWindows deeper_windows(const PeriodWindows& w, int n)
{
    PeriodWindows d = w;
    d.depth = w.depth + std::max(1, w.depth / 2);
    d.columns.lo = -((n + 1) * d.depth + 2);
    d.columns.hi = w.columns.hi + std::max(1, w.columns.hi / 2);
    d.phi.lo = d.columns.lo;
    d.phi.hi = std::max(d.columns.hi, w.phi.hi);
    return d;
}

CheckResult stability_check(const MirrorRun& base, const PeriodWindows& deeper)
{
    MirrorOptions opts{std::nullopt, false, false, false, false, false, false};
    const MirrorRun other = run_mirror(base.n, base.degree, deeper, opts);
    const HVec& a = base.np.psi;
    const HVec& b = other.np.psi;
    const int from = std::max(a.exact_from(), b.exact_from());
    if (auto d = first_difference(a, b, from, b.window().hi, base.degree)) {
        return CheckResult::fail("stability", "Psi differs at (" + std::to_string(d->slot.k) + ", " +
                                                  std::to_string(d->slot.j) + "): " + d->detail);
    }
    if (auto m = compare_runs(base, other)) return CheckResult::fail("stability", *m);
    return CheckResult::pass("stability");
}

bool Report::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

void add_oracle_checks(const RunConfig& cfg, const Potential& mirror_phi, Report& rep, int D)
{
    const int n = cfg.n;
    const GWTable table = reconstruct(n, oracle_degree_needed(n, D));
    const Potential oracle = oracle_potential(table, D);
    const CompareReport cmp = compare(mirror_phi, oracle);
    if (cmp.equal) {
        rep.checks.push_back(CheckResult::pass("oracle.compare"));
    } else {
        const auto& d = cmp.discrepancies.front();
        rep.checks.push_back(CheckResult::fail(
            "oracle.compare", std::to_string(cmp.discrepancies.size()) + " discrepancies; first at y^(" +
                                  exponent_key(d.exponents) + "): mirror " + to_string(d.mirror) + ", oracle " +
                                  to_string(d.oracle)));
    }
    CheckResult ow = wdvv_check(oracle);
    ow.name = "oracle.wdvv";
    rep.checks.push_back(ow);
    if (n == 2) {
        const auto k = kontsevich_cp2(table.d_max);
        CheckResult kc = CheckResult::pass("oracle.kontsevich");
        for (const auto& [d, N] : k) {
            const Rational r = table.get(d, {3 * d - 1});
            if (r != N) {
                kc = CheckResult::fail("oracle.kontsevich", "d = " + std::to_string(d) + ": reconstruction " +
                                                                to_string(r) + ", recursion " + to_string(N));
                break;
            }
        }
        rep.checks.push_back(kc);
    }
}

Report mirror_report(const RunConfig& cfg)
{
    validate_config(cfg);
    Report rep;
    rep.config = cfg;
    const PeriodWindows windows = windows_for(cfg);

    MirrorOptions opts;
    opts.pf = cfg.wants("pf");
    opts.flatness = cfg.wants("flatness");
    opts.euler = cfg.wants("euler");
    opts.identity = cfg.wants("identity");
    opts.wdvv = cfg.wants("wdvv");
    opts.sigma = cfg.wants("sigma");

    MirrorRun run;
    {
        Stopwatch sw(rep.timings_ms, "pipeline", cfg.timings);
        run = run_mirror(cfg.n, cfg.degree, windows, opts);
    }
    rep.checks = run.checks;
    rep.gw = run.sigma.gw;
    for (const auto& t : run.phi.phi.terms()) {
        rep.phi_coefficients[exponent_key(t.mono.exponents(static_cast<std::size_t>(cfg.n + 1)))] = to_string(t.coef);
    }

    if (cfg.wants("frame")) {
        Stopwatch sw(rep.timings_ms, "frame", cfg.timings);
        CheckResult fr = CheckResult::pass("frame");
        for (const auto& c : random_unipotent_frames(cfg.n, cfg.seed, 3)) {
            fr = frame_invariance_test(run, c);
            if (!fr.passed) break;
        }
        rep.checks.push_back(fr);
    }
    if (cfg.wants("stability")) {
        Stopwatch sw(rep.timings_ms, "stability", cfg.timings);
        const PeriodWindows deeper = deeper_windows(windows, cfg.n);
        const CheckResult st = stability_check(run, deeper);
        rep.checks.push_back(st);
        rep.stability = StabilityInfo{windows.columns, deeper.columns, st.passed};
    }
    if (cfg.compare_oracle) {
        Stopwatch sw(rep.timings_ms, "oracle", cfg.timings);
        add_oracle_checks(cfg, run.phi, rep, cfg.degree);
    }
    return rep;
}

} // namespace

Report cmd_compute(const RunConfig& cfg) { return mirror_report(cfg); }

Report cmd_verify(const RunConfig& cfg)
{
    RunConfig all = cfg;
    all.checks = check_groups();
    return mirror_report(all);
}

Report cmd_gw(const RunConfig& cfg)
{
    validate_config(cfg);
    Report rep;
    rep.config = cfg;
    const int n = cfg.n;
    const int dmax = cfg.dmax > 0 ? cfg.dmax : oracle_degree_needed(n, cfg.degree);
    rep.config.dmax = dmax;
    GWTable table;
    {
        Stopwatch sw(rep.timings_ms, "oracle", cfg.timings);
        table = reconstruct(n, dmax);
    }
    for (int d = 1; d <= dmax; ++d) {
        for (const auto& m : incidence_profiles(n, d)) rep.gw.push_back({d, m, table.get(d, m)});
    }
    if (n == 2) {
        const auto k = kontsevich_cp2(dmax);
        CheckResult kc = CheckResult::pass("oracle.kontsevich");
        for (const auto& [d, N] : k) {
            if (table.get(d, {3 * d - 1}) != N) {
                kc = CheckResult::fail("oracle.kontsevich", "disagreement at d = " + std::to_string(d));
                break;
            }
        }
        rep.checks.push_back(kc);
    }
    return rep;
}

Report run_command(const RunConfig& cfg)
{
    if (cfg.command == "gw") return cmd_gw(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    return cmd_compute(cfg);
}

nlohmann::json report_to_json(const Report& r)
{
    using nlohmann::json;
    const RunConfig& c = r.config;
    json cfg = {{"command", c.command},     {"n", c.n},           {"degree", c.degree},
                {"dmax", c.dmax},           {"checks", c.checks}, {"compare_oracle", c.compare_oracle},
                {"seed", c.seed},           {"format", c.format}, {"timings", c.timings}};
    cfg["hbar_depth"] = c.hbar_depth ? json(*c.hbar_depth) : json(nullptr);
    cfg["window_top"] = c.window_top ? json(*c.window_top) : json(nullptr);

    json gw = json::array();
    for (const auto& e : r.gw) gw.push_back({{"d", e.d}, {"m", e.m}, {"N", to_string(e.N)}});
    json checks = json::array();
    for (const auto& ch : r.checks) {
        json o = {{"name", ch.name}, {"status", ch.passed ? "pass" : "fail"}};
        if (!ch.passed) o["witness"] = ch.witness;
        checks.push_back(o);
    }
    json out = {{"config", cfg},
                {"gw", gw},
                {"checks", checks},
                {"phi_coefficients", r.phi_coefficients},
                {"timings_ms", r.timings_ms}};
    if (r.stability) {
        out["stability"] = {{"window", {r.stability->window.lo, r.stability->window.hi}},
                            {"deeper_window", {r.stability->deeper.lo, r.stability->deeper.hi}},
                            {"status", r.stability->passed ? "pass" : "fail"}};
    }
    return out;
}

Report report_from_json(const nlohmann::json& j)
{
    Report r;
    const auto& c = j.at("config");
    r.config.command = c.at("command").get<std::string>();
    r.config.n = c.at("n").get<int>();
    r.config.degree = c.at("degree").get<int>();
    r.config.dmax = c.at("dmax").get<int>();
    if (!c.at("hbar_depth").is_null()) r.config.hbar_depth = c.at("hbar_depth").get<int>();
    if (!c.at("window_top").is_null()) r.config.window_top = c.at("window_top").get<int>();
    r.config.checks = c.at("checks").get<std::vector<std::string>>();
    r.config.compare_oracle = c.at("compare_oracle").get<bool>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.format = c.at("format").get<std::string>();
    r.config.timings = c.at("timings").get<bool>();
    for (const auto& e : j.at("gw")) {
        r.gw.push_back({e.at("d").get<int>(), e.at("m").get<std::vector<int>>(), parse_rational(e.at("N").get<std::string>())});
    }
    for (const auto& ch : j.at("checks")) {
        CheckResult res{ch.at("name").get<std::string>(), ch.at("status").get<std::string>() == "pass", {}};
        if (ch.contains("witness")) res.witness = ch.at("witness").get<std::string>();
        r.checks.push_back(std::move(res));
    }
    r.phi_coefficients = j.at("phi_coefficients").get<std::map<std::string, std::string>>();
    r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    if (j.contains("stability")) {
        const auto& s = j.at("stability");
        StabilityInfo info;
        info.window = {s.at("window").at(0).get<int>(), s.at("window").at(1).get<int>()};
        info.deeper = {s.at("deeper_window").at(0).get<int>(), s.at("deeper_window").at(1).get<int>()};
        info.passed = s.at("status").get<std::string>() == "pass";
        r.stability = info;
    }
    return r;
}

std::string render_csv(const Report& r)
{
    std::ostringstream os;
    os << "d";
    for (int k = 2; k <= r.config.n; ++k) os << ",m_" << k;
    os << ",N\n";
    for (const auto& e : r.gw) {
        os << e.d;
        for (int x : e.m) os << "," << x;
        os << "," << to_string(e.N) << "\n";
    }
    return os.str();
}

std::string render(const Report& r)
{
    if (r.config.format == "csv") return render_csv(r);
    return report_to_json(r).dump(2) + "\n";
}

} // namespace mirrorgw
