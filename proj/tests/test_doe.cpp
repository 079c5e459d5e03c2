#include <cmath>
#include <random>

#include "doctest.h"
#include "mulchsim/doe.hpp"
#include "mulchsim/errors.hpp"

using namespace mulchsim;
using namespace mulchsim::doe;

namespace {

const physics::SoilProperties kFieldSoil{2.2, 1.01e6, 0.95, 0.25};
const physics::ConvectionModel kConv{};

fem::SimulationConfig small_config() {
    fem::SimulationConfig cfg;
    cfg.mesh = fem::Mesh1D::uniform(1.0, 10);
    cfg.dt = 600.0;
    cfg.T_bottom = 287.0;
    cfg.initial_profile = fem::linear_initial_profile(284.0, 287.0, 1.0);
    return cfg;
}

const std::vector<FactorEffects> kReferenceEffects =
    marginal_means(builtin_design(), builtin_reference_responses());

} // namespace

TEST_CASE("builtin design shape") {
    const auto d = builtin_design();
    CHECK(d.runs.size() == 7);
    CHECK(d.factors.size() == 4);
    // run 6: tau_s 0.7, rho_s 0.01, tau_l 0.7, rho_l 0.2
    CHECK(d.level_of(5, 0) == 0.7);
    CHECK(d.level_of(5, 1) == 0.01);
    CHECK(d.level_of(5, 2) == 0.7);
    CHECK(d.level_of(5, 3) == 0.2);
    // validate() already checks full level coverage; spot-check one factor
    for (size_t f = 0; f < 4; ++f)
        CHECK(d.levels[f] == std::vector<double>{0.01, 0.2, 0.7});
}

TEST_CASE("marginal means of the reference responses") {
    auto mean_of = [&](const std::string& factor, double level) {
        for (const auto& fe : kReferenceEffects)
            if (fe.factor == factor)
                for (const auto& le : fe.levels)
                    if (le.level == level)
                        return le.marginal_mean;
        FAIL("missing factor/level");
        return 0.0;
    };
    CHECK(mean_of("tau_s", 0.01) == doctest::Approx(41.404).epsilon(1e-12));
    CHECK(mean_of("tau_s", 0.2) == doctest::Approx(43.057666666666666).epsilon(1e-12));
    CHECK(mean_of("tau_s", 0.7) == doctest::Approx(56.6805).epsilon(1e-12));
    CHECK(mean_of("rho_s", 0.01) == doctest::Approx(47.406333333333333).epsilon(1e-12));
    CHECK(mean_of("rho_s", 0.2) == doctest::Approx(47.393333333333333).epsilon(1e-12));
    CHECK(mean_of("rho_s", 0.7) == doctest::Approx(40.943).epsilon(1e-12));
    CHECK(mean_of("tau_l", 0.01) == doctest::Approx(47.536333333333333).epsilon(1e-12));
    CHECK(mean_of("tau_l", 0.2) == doctest::Approx(43.9885).epsilon(1e-12));
    CHECK(mean_of("tau_l", 0.7) == doctest::Approx(47.378).epsilon(1e-12));
    CHECK(mean_of("rho_l", 0.01) == doctest::Approx(41.5305).epsilon(1e-12));
    CHECK(mean_of("rho_l", 0.2) == doctest::Approx(45.148666666666666).epsilon(1e-12));
    CHECK(mean_of("rho_l", 0.7) == doctest::Approx(53.4175).epsilon(1e-12));
}

TEST_CASE("optimal combination from the reference responses") {
    const auto optimal = select_optimal(kReferenceEffects);
    REQUIRE(optimal.size() == 4);
    CHECK(optimal[0].factor == "tau_s");
    CHECK(optimal[0].level == 0.7);
    CHECK(optimal[0].direction == +1);
    CHECK(!optimal[0].near_tie);
    CHECK(optimal[1].factor == "rho_s");
    CHECK(optimal[1].level == 0.01);
    CHECK(optimal[1].direction == -1);
    CHECK(optimal[1].near_tie); // 47.406 vs 47.393
    CHECK(!optimal[1].exact_tie);
    CHECK(optimal[2].factor == "tau_l");
    CHECK(optimal[2].level == 0.01);
    CHECK(optimal[2].direction == -1);
    CHECK(optimal[3].factor == "rho_l");
    CHECK(optimal[3].level == 0.7);
    CHECK(optimal[3].direction == +1);
}

TEST_CASE("select_optimal tie handling") {
    std::vector<FactorEffects> effects{{"f", {{0.1, 5.0, 1}, {0.2, 5.0, 1}, {0.3, 1.0, 1}}}};
    const auto opt = select_optimal(effects);
    CHECK(opt[0].level == 0.1); // first-listed wins the exact tie
    CHECK(opt[0].exact_tie);
    CHECK(opt[0].near_tie);

    std::vector<FactorEffects> single{{"g", {{0.5, 2.0, 3}}}};
    const auto s = select_optimal(single);
    CHECK(s[0].level == 0.5);
    CHECK(s[0].direction == 0);
    CHECK(!s[0].exact_tie);
}

TEST_CASE("argmax invariance under increasing transforms") {
    const auto design = builtin_design();
    const auto base = builtin_reference_responses();
    const auto ref = select_optimal(marginal_means(design, base), 0.0);

    auto transformed = [&](auto f) {
        std::vector<double> out;
        for (double y : base)
            out.push_back(f(y));
        return select_optimal(marginal_means(design, out), 0.0);
    };
    for (const auto& opt : {transformed([](double y) { return 2.0 * y + 5.0; }),
                            transformed([](double y) { return y * y * y; }),
                            select_optimal(marginal_means(design,
                                                          sn_ratio_larger_better(base)),
                                           0.0)}) {
        REQUIRE(opt.size() == ref.size());
        for (size_t i = 0; i < ref.size(); ++i)
            CHECK(opt[i].level == ref[i].level);
    }
}

TEST_CASE("marginal mean sum identity") {
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> u(10.0, 60.0);
    const auto design = builtin_design();
    std::vector<double> responses(design.runs.size());
    for (auto& r : responses)
        r = u(rng);
    double total = 0.0;
    for (double r : responses)
        total += r;

    const auto effects = marginal_means(design, responses);
    for (const auto& fe : effects) {
        double weighted = 0.0;
        for (const auto& le : fe.levels)
            weighted += le.marginal_mean * le.run_count;
        CHECK(weighted == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("design validation") {
    auto d = builtin_design();
    d.runs[0][2] = 9;
    CHECK_THROWS_AS(d.validate(), ValidationError);

    auto uncovered = builtin_design();
    uncovered.levels[0].push_back(0.9); // level with no run
    CHECK_THROWS_AS(uncovered.validate(), ValidationError);
    CHECK_THROWS_AS(marginal_means(uncovered, builtin_reference_responses()),
                    ValidationError);

    CHECK_THROWS_AS(marginal_means(builtin_design(), {1.0, 2.0}), ValidationError);
}

TEST_CASE("run_design on a small problem") {
    const auto series = weather::synthesize_clear_day(86400.0, 900.0, 287.0, 6.0, 1.5, 1800.0);
    const auto cfg = small_config();

    SUBCASE("identical runs give identical responses") {
        FactorDesign d;
        d.factors = {"tau_s", "rho_s", "tau_l", "rho_l"};
        d.levels = {{0.733}, {0.265}, {0.6}, {0.398}};
        d.runs = {{0, 0, 0, 0}, {0, 0, 0, 0}};
        const auto responses = run_design(d, kFieldSoil, kConv, series, cfg);
        REQUIRE(responses.size() == 2);
        CHECK(responses[0] == responses[1]);
    }
    SUBCASE("more shortwave transmission does not cool the soil") {
        FactorDesign d;
        d.factors = {"tau_s", "rho_s", "tau_l", "rho_l"};
        d.levels = {{0.2, 0.7}, {0.2}, {0.6}, {0.398}};
        d.runs = {{0, 0, 0, 0}, {1, 0, 0, 0}};
        const auto responses = run_design(d, kFieldSoil, kConv, series, cfg);
        CHECK(responses[1] >= responses[0]);
    }
    SUBCASE("max metric dominates mean metric") {
        FactorDesign d;
        d.factors = {"tau_s", "rho_s", "tau_l", "rho_l"};
        d.levels = {{0.733}, {0.265}, {0.6}, {0.398}};
        d.runs = {{0, 0, 0, 0}};
        const auto tmax = run_design(d, kFieldSoil, kConv, series, cfg,
                                     ResponseMetric::MaxSurfaceTemp);
        const auto tmean = run_design(d, kFieldSoil, kConv, series, cfg,
                                      ResponseMetric::MeanSurfaceTemp);
        CHECK(tmax[0] > tmean[0]);
    }
}
