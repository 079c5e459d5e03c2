#ifndef MULCHSIM_DOE_HPP
#define MULCHSIM_DOE_HPP

#include <string>
#include <vector>

#include "mulchsim/fem.hpp"
#include "mulchsim/physics.hpp"
#include "mulchsim/weather.hpp"

namespace mulchsim::doe {

// Screening design over film optical properties. `runs[r][f]` is the index
// into `levels[f]` assigned to factor f in run r. Every (factor, level)
// pair must be exercised by at least one run.
struct FactorDesign {
    std::vector<std::string> factors;         // tau_s, rho_s, tau_l, rho_l
    std::vector<std::vector<double>> levels;  // per factor, ordered
    std::vector<std::vector<int>> runs;       // per run, level index per factor

    double level_of(int run, int factor) const { return levels[factor][runs[run][factor]]; }
    void validate() const;
};

// The built-in 7-run screening design over {0.01, 0.2, 0.7} for all four
// factors, with the reference responses [degC] it was characterized with.
FactorDesign builtin_design();
std::vector<double> builtin_reference_responses();

struct LevelEffect {
    double level;
    double marginal_mean; // mean response over the runs at this level
    int run_count;
};

struct FactorEffects {
    std::string factor;
    std::vector<LevelEffect> levels;
};

enum class ResponseMetric { MaxSurfaceTemp, MeanSurfaceTemp };

// Simulate every run of the design and report the response in degC.
// Film emissivity for each run is derived from the longwave opacity
// (Kirchhoff). Runs are independent; any failure aborts the whole design
// with the run identified.
std::vector<double> run_design(const FactorDesign& design,
                               const physics::SoilProperties& soil,
                               const physics::ConvectionModel& conv,
                               const weather::WeatherSeries& series,
                               const fem::SimulationConfig& config,
                               ResponseMetric metric = ResponseMetric::MaxSurfaceTemp);

// Per factor and level, the arithmetic mean of the responses of exactly
// the runs at that level.
std::vector<FactorEffects> marginal_means(const FactorDesign& design,
                                          const std::vector<double>& responses);

// Larger-the-better signal-to-noise transform, 20 log10(y); monotone, so
// it never changes the selected optima.
std::vector<double> sn_ratio_larger_better(const std::vector<double>& responses);

struct OptimalChoice {
    std::string factor;
    double level;         // best tested level
    double marginal_mean;
    bool exact_tie;       // another level has an identical marginal mean
    bool near_tie;        // runner-up within the near-tie threshold
    int direction;        // +1 best at the highest level, -1 lowest, 0 interior
};

inline constexpr double kNearTieThreshold = 0.1; // [degC]

// Per factor, the level with the highest marginal mean. Exact ties break
// toward the level listed first.
std::vector<OptimalChoice> select_optimal(const std::vector<FactorEffects>& effects,
                                          double near_tie_threshold = kNearTieThreshold);

} // namespace mulchsim::doe

#endif
