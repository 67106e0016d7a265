#include <doctest.h>

#include "nehari/config.hpp"

using namespace nehari;

namespace {

const char* sample_config = R"json({
  "problem": {"dim": 2, "p": 3.0, "a_inf": 1.0, "b_inf": 1.0, "lambda": 0.5},
  "coefficients": {
    "a": {"family": "compact_bump", "amplitude": 1.0, "radius": 1.0},
    "b": {"family": "exponential", "amplitude": 1.0, "rate": 0.5}
  },
  "sigma": 0.25,
  "grid": {"kind": "box", "half_width": 10.0, "spacing": 0.25, "ladder": [7.0, 10.0]},
  "solver": {"max_iters": 5000, "tol_grad": 1e-5, "init": {"kind": "soliton"}},
  "sweep": {"lambdas": [0.0, 1.0, 10.0], "delta": 0.1},
  "output_dir": "out",
  "seed": 7
})json";

} // namespace

TEST_CASE("config parsing picks up every section")
{
    const RunConfig cfg = parse_config(sample_config);
    CHECK(cfg.problem.dim == 2);
    CHECK(cfg.problem.lambda == 0.5);
    CHECK(cfg.a.family == ProfileFamily::compact_bump);
    CHECK(cfg.b.rate == 0.5);
    CHECK(cfg.sigma == 0.25);
    CHECK(cfg.grid.kind == "box");
    CHECK(cfg.grid.ladder.size() == 2);
    CHECK(cfg.solver.max_iters == 5000);
    CHECK(cfg.sweep.lambdas.size() == 3);
    CHECK(cfg.seed == 7);
}

TEST_CASE("config round trip is the identity")
{
    const RunConfig cfg = parse_config(sample_config);
    const std::string text = serialize_config(cfg);
    const RunConfig again = parse_config(text);
    CHECK(serialize_config(again) == text);
}

TEST_CASE("validation failures carry exit-worthy diagnostics")
{
    // supercritical exponent names the bound
    {
        RunConfig cfg = parse_config(sample_config);
        cfg.problem.dim = 3;
        cfg.problem.p = 6.0;
        try {
            cfg.validate();
            CHECK(false);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("subcritical") != std::string::npos);
        }
    }
    {
        RunConfig cfg = parse_config(sample_config);
        cfg.sigma = 2.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    {
        RunConfig cfg = parse_config(sample_config);
        cfg.grid.kind = "hex";
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    {
        RunConfig cfg = parse_config(sample_config);
        cfg.solver.init.kind = "soliton_at";
        cfg.solver.init.center = {9.9, 0.0, 0.0};
        CHECK_THROWS_AS(cfg.validate(), ConfigError); // clearance
    }
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
}
