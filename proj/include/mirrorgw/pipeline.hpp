#ifndef MIRRORGW_PIPELINE_HPP
#define MIRRORGW_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <mirrorgw/checks.hpp>
#include <mirrorgw/frobenius.hpp>
#include <mirrorgw/gw_oracle.hpp>
#include <mirrorgw/normalization.hpp>
#include <mirrorgw/periods.hpp>

namespace mirrorgw {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Check groups selectable with --checks.
const std::vector<std::string>& check_groups();

struct RunConfig {
    std::string command = "compute";   // compute | gw | verify
    int n = 2;
    int degree = 6;
    int dmax = 0;                      // gw: highest degree; 0 picks one from degree
    std::optional<int> hbar_depth;
    std::optional<int> window_top;
    std::vector<std::string> checks = check_groups();
    bool compare_oracle = false;
    std::uint64_t seed = 0;
    std::string format = "json";       // json | csv
    std::string out;                   // empty: stdout
    bool timings = false;              // wall-clock timings break byte-identical output, so opt-in

    bool wants(const std::string& group) const;
};

/// Throws ConfigError.
void validate_config(const RunConfig& cfg);

PeriodWindows windows_for(const RunConfig& cfg);

/// One pass of periods -> normalization -> connection -> potential.
struct MirrorRun {
    int n = 0;
    int degree = 0;
    PeriodWindows windows;
    NormalizedPeriod np;
    HVec psi_y;
    ConnectionData cd;
    LoweredTensor lowered;
    Potential phi_full;   // exact through degree + 1
    Potential phi;        // truncated at degree
    SigmaTable sigma;
    std::vector<CheckResult> checks;
};

struct MirrorOptions {
    std::optional<AlphaPoly> frame;   // multiply every period by this unit
    bool pf = true;
    bool flatness = true;
    bool euler = true;
    bool identity = true;
    bool wdvv = true;
    bool sigma = true;
};

MirrorRun run_mirror(int n, int degree, const PeriodWindows& windows, const MirrorOptions& opts = {});

/// Unipotent c(alpha) = 1 + c_1 alpha + ... drawn from a seeded mt19937_64.
std::vector<AlphaPoly> random_unipotent_frames(int n, std::uint64_t seed, int count);

/// y(t), A and Phi of a rerun with every period multiplied by c must be
/// identical to the base run.
CheckResult frame_invariance_test(const MirrorRun& base, const AlphaPoly& c);

/// Windows for the deeper rerun: depth and top both raised by half.
PeriodWindows deeper_windows(const PeriodWindows& w, int n);

/// Rerun in deeper windows; Psi on the common exact region, y, A and Phi must
/// be identical.
CheckResult stability_check(const MirrorRun& base, const PeriodWindows& deeper);

struct StabilityInfo {
    HbarWindow window{};
    HbarWindow deeper{};
    bool passed = false;
};

struct Report {
    RunConfig config;
    std::vector<GWEntry> gw;
    std::vector<CheckResult> checks;
    std::map<std::string, std::string> phi_coefficients;   // "e0,e1,..." -> "p/q"
    std::optional<StabilityInfo> stability;
    std::map<std::string, double> timings_ms;

    bool all_passed() const;
};

Report cmd_compute(const RunConfig& cfg);
Report cmd_gw(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);
Report run_command(const RunConfig& cfg);

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string render_csv(const Report& r);
std::string render(const Report& r);

} // namespace mirrorgw

#endif
