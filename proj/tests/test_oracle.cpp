#include <cmath>
#include <random>

#include "doctest.h"
#include "mulchsim/oracle.hpp"

using namespace mulchsim::oracle;

namespace {

// Field-soil problem: k = 2.2 W/(m K), rho_cp = 1.01e6 J/(m^3 K).
PeriodicHalfspaceProblem diurnal_field_problem() {
    return {288.0, 10.0, 2.0 * std::acos(-1.0) / kDaySeconds, 2.2 / 1.01e6};
}

} // namespace

TEST_CASE("damping depth") {
    const auto p = diurnal_field_problem();
    // frozen high-precision value of sqrt(2 alpha / omega)
    CHECK(damping_depth(p) == doctest::Approx(0.244755572486477).epsilon(1e-12));

    PeriodicHalfspaceProblem annual = p;
    annual.omega = 2.0 * std::acos(-1.0) / kYearSeconds;
    CHECK(damping_depth(annual) == doctest::Approx(4.676048646674009).epsilon(1e-12));

    // quadrupling the frequency halves the depth
    PeriodicHalfspaceProblem fast = p;
    fast.omega *= 4.0;
    CHECK(damping_depth(fast) == doctest::Approx(0.5 * damping_depth(p)).epsilon(1e-14));
}

TEST_CASE("attenuation depth") {
    const auto p = diurnal_field_problem();
    CHECK(attenuation_depth(p, 0.02) == doctest::Approx(0.957489430273834).epsilon(1e-12));
    CHECK(attenuation_depth(p, std::exp(-1.0)) ==
          doctest::Approx(damping_depth(p)).epsilon(1e-12));
    CHECK_THROWS_AS(attenuation_depth(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(attenuation_depth(p, 1.5), std::domain_error);
}

TEST_CASE("periodic temperature") {
    const auto p = diurnal_field_problem();
    const double d = damping_depth(p);

    // surface trace
    for (double t : {0.0, 3600.0, 40000.0})
        CHECK(periodic_temperature(p, 0.0, t) ==
              doctest::Approx(p.T_mean + p.amplitude * std::sin(p.omega * t)).epsilon(1e-14));

    // amplitude at one damping depth decays by e^-1 (scan a day for the max)
    double max_dev = 0.0;
    for (double t = 0.0; t < kDaySeconds; t += 60.0)
        max_dev = std::max(max_dev, std::abs(periodic_temperature(p, d, t) - p.T_mean));
    CHECK(max_dev == doctest::Approx(p.amplitude * std::exp(-1.0)).epsilon(1e-6));

    // at 1.0 m the wave is down to ~1.7% of the surface amplitude
    CHECK(std::exp(-1.0 / d) == doctest::Approx(0.016811219049549).epsilon(1e-10));

    CHECK_THROWS_AS(periodic_temperature(p, -0.1, 0.0), std::domain_error);
}

TEST_CASE("periodic temperature satisfies the diffusion equation") {
    const auto p = diurnal_field_problem();
    const double rho_cp = 1.01e6, k = 2.2;
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> depth(0.01, 1.0);
    std::uniform_real_distribution<double> time(0.0, 2.0 * kDaySeconds);
    const double hz = 1e-3, ht = 1e-3;
    for (int i = 0; i < 100; ++i) {
        const double z = depth(rng), t = time(rng);
        const double dTdt =
            (periodic_temperature(p, z, t + ht) - periodic_temperature(p, z, t - ht)) /
            (2.0 * ht);
        const double d2Tdz2 = (periodic_temperature(p, z + hz, t) -
                               2.0 * periodic_temperature(p, z, t) +
                               periodic_temperature(p, z - hz, t)) /
                              (hz * hz);
        const double residual = rho_cp * dTdt - k * d2Tdz2;
        const double scale = std::max(std::abs(rho_cp * dTdt), std::abs(k * d2Tdz2));
        if (scale > 1e-6)
            CHECK(std::abs(residual) / scale < 1e-3);
        else
            CHECK(std::abs(residual) < 1e-3);
    }
}

TEST_CASE("steady linear profile") {
    CHECK(steady_linear_profile(2.2, 0.0, 285.0, 1.0, 0.4) == doctest::Approx(285.0));
    CHECK(steady_linear_profile(2.2, 22.0, 285.0, 1.0, 0.0) ==
          doctest::Approx(295.0).epsilon(1e-14));
    // gradient is -q/k everywhere
    const double h = 1e-6;
    for (double z : {0.1, 0.5, 0.9}) {
        const double grad = (steady_linear_profile(2.2, 22.0, 285.0, 1.0, z + h) -
                             steady_linear_profile(2.2, 22.0, 285.0, 1.0, z - h)) /
                            (2.0 * h);
        CHECK(grad == doctest::Approx(-10.0).epsilon(1e-6));
    }
    CHECK_THROWS_AS(steady_linear_profile(0.0, 22.0, 285.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(steady_linear_profile(2.2, 22.0, 285.0, 1.0, 1.5), std::domain_error);
}
