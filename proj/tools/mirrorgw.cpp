#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <mirrorgw/errors.hpp>
#include <mirrorgw/pipeline.hpp>

namespace {

constexpr int exit_check_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_window = 3;

void add_common(CLI::App* sub, mirrorgw::RunConfig& cfg, std::string& checks)
{
    sub->add_option("--n", cfg.n, "projective space dimension");
    sub->add_option("--degree", cfg.degree, "truncation degree D of the potential");
    sub->add_option("--hbar-depth", cfg.hbar_depth, "number of hbar^-1 powers kept in the periods");
    sub->add_option("--window-top", cfg.window_top, "top hbar power of the period window");
    sub->add_option("--checks", checks, "comma-separated check groups (default: all)");
    sub->add_flag("--compare-oracle", cfg.compare_oracle, "compare against the associativity reconstruction");
    sub->add_option("--seed", cfg.seed, "seed for the random frame test");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_flag("--timings", cfg.timings, "record wall-clock timings in the report");
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = s.find(',', start);
        const std::string part = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!part.empty()) out.push_back(part);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Genus-0 Gromov-Witten potential of CP^n from mirror periods"};
    app.require_subcommand(1);

    mirrorgw::RunConfig cfg;
    std::string checks;
    for (const char* name : {"compute", "gw", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, cfg, checks);
        if (std::string(name) == "gw") sub->add_option("--dmax", cfg.dmax, "highest curve degree");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (!checks.empty()) cfg.checks = split_commas(checks);

    mirrorgw::Report report;
    try {
        report = mirrorgw::run_command(cfg);
    } catch (const mirrorgw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const mirrorgw::WindowOverflow& e) {
        std::cerr << "window error: " << e.what() << " at slot (" << e.k << ", " << e.j
                  << "); raise --window-top\n";
        return exit_window;
    } catch (const mirrorgw::WindowTooShallow& e) {
        std::cerr << "window error: " << e.what() << "; raise --hbar-depth\n";
        return exit_window;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return exit_check_failed;
    }

    const std::string text = mirrorgw::render(report);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << cfg.out << "\n";
            return exit_config;
        }
        f << text;
    }
    for (const auto& c : report.checks) {
        if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.witness << "\n";
    }
    return report.all_passed() ? 0 : exit_check_failed;
}
