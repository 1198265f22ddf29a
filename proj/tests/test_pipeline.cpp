#include <doctest.h>

#include <mirrorgw/pipeline.hpp>

using namespace mirrorgw;

namespace {

RunConfig small_config()
{
    RunConfig cfg;
    cfg.n = 2;
    cfg.degree = 5;
    cfg.seed = 7;
    return cfg;
}

} // namespace

TEST_SUITE("pipeline")
{
    TEST_CASE("config validation")
    {
        RunConfig cfg = small_config();
        CHECK_NOTHROW(validate_config(cfg));
        cfg.degree = 2;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg = small_config();
        cfg.n = 0;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg = small_config();
        cfg.format = "xml";
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg = small_config();
        cfg.checks = {"pf", "nonsense"};
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg = small_config();
        cfg.command = "plot";
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    }

    TEST_CASE("compute report")
    {
        const Report r = cmd_compute(small_config());
        CHECK(r.all_passed());
        for (const auto& g : check_groups()) {
            const bool present = std::any_of(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) {
                return c.name == g || c.name.rfind(g + ".", 0) == 0;
            });
            CHECK_MESSAGE(present, g);
        }
        REQUIRE(r.gw.size() == 2);
        CHECK(r.gw[1] == GWEntry{2, {5}, 1});
        CHECK(r.stability.has_value());
        CHECK(r.timings_ms.empty());
        CHECK(r.phi_coefficients.at("2,0,1") == "1/2");
    }

    TEST_CASE("check selection")
    {
        RunConfig cfg = small_config();
        cfg.checks = {"wdvv"};
        const Report r = cmd_compute(cfg);
        REQUIRE(r.checks.size() == 1);
        CHECK(r.checks[0].name == "wdvv");
    }

    TEST_CASE("json round trip")
    {
        RunConfig cfg = small_config();
        cfg.compare_oracle = true;
        cfg.window_top = 12;
        const Report r = cmd_compute(cfg);
        const nlohmann::json j = report_to_json(r);
        const Report back = report_from_json(nlohmann::json::parse(j.dump()));
        CHECK(report_to_json(back) == j);
        CHECK(back.gw == r.gw);
        CHECK(back.config.window_top == 12);
        CHECK_FALSE(back.config.hbar_depth.has_value());
    }

    TEST_CASE("deterministic rendering")
    {
        const RunConfig cfg = small_config();
        CHECK(render(cmd_verify(cfg)) == render(cmd_verify(cfg)));
    }

    TEST_CASE("gw command")
    {
        RunConfig cfg;
        cfg.command = "gw";
        cfg.n = 2;
        cfg.dmax = 5;
        cfg.format = "csv";
        CHECK(render(run_command(cfg)) == "d,m_2,N\n1,2,1\n2,5,1\n3,8,12\n4,11,620\n5,14,87304\n");

        cfg.n = 3;
        cfg.dmax = 1;
        const std::string csv3 = render(run_command(cfg));
        CHECK(csv3.find("1,0,2,1\n") != std::string::npos);
        CHECK(csv3.find("1,4,0,2\n") != std::string::npos);
        CHECK(csv3.find("1,2,1,1\n") != std::string::npos);

        cfg.n = 1;
        cfg.dmax = 3;
        CHECK(render(run_command(cfg)) == "d,N\n1,1\n");
    }
}
