#include "mulchsim/doe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mulchsim/errors.hpp"

namespace mulchsim::doe {

void FactorDesign::validate() const {
    if (factors.empty())
        throw ValidationError("FactorDesign: no factors");
    if (levels.size() != factors.size())
        throw ValidationError("FactorDesign: levels/factors size mismatch");
    if (runs.empty())
        throw ValidationError("FactorDesign: no runs");
    for (size_t f = 0; f < factors.size(); ++f)
        if (levels[f].empty())
            throw ValidationError("FactorDesign: factor " + factors[f] + " has no levels");
    for (size_t r = 0; r < runs.size(); ++r) {
        if (runs[r].size() != factors.size())
            throw ValidationError("FactorDesign: run " + std::to_string(r + 1) +
                                  " does not assign every factor");
        for (size_t f = 0; f < factors.size(); ++f) {
            const int li = runs[r][f];
            if (li < 0 || li >= static_cast<int>(levels[f].size()))
                throw ValidationError("FactorDesign: run " + std::to_string(r + 1) +
                                      " has an out-of-range level for " + factors[f]);
        }
    }
    for (size_t f = 0; f < factors.size(); ++f)
        for (size_t li = 0; li < levels[f].size(); ++li) {
            const bool covered = std::any_of(runs.begin(), runs.end(), [&](const auto& run) {
                return run[f] == static_cast<int>(li);
            });
            if (!covered)
                throw ValidationError("FactorDesign: level " + std::to_string(levels[f][li]) +
                                      " of " + factors[f] + " appears in no run");
        }
}

FactorDesign builtin_design() {
    FactorDesign d;
    d.factors = {"tau_s", "rho_s", "tau_l", "rho_l"};
    d.levels = {{0.01, 0.2, 0.7}, {0.01, 0.2, 0.7}, {0.01, 0.2, 0.7}, {0.01, 0.2, 0.7}};
    // Level indices: 0 -> 0.01, 1 -> 0.2, 2 -> 0.7.
    d.runs = {
        {0, 0, 0, 0}, // 1: 0.01 0.01 0.01 0.01
        {0, 1, 1, 1}, // 2: 0.01 0.2  0.2  0.2
        {1, 0, 1, 2}, // 3: 0.2  0.01 0.2  0.7
        {1, 1, 2, 0}, // 4: 0.2  0.2  0.7  0.01
        {1, 2, 0, 1}, // 5: 0.2  0.7  0.01 0.2
        {2, 0, 2, 1}, // 6: 0.7  0.01 0.7  0.2
        {2, 1, 0, 2}, // 7: 0.7  0.2  0.01 0.7
    };
    d.validate();
    return d;
}

std::vector<double> builtin_reference_responses() {
    return {41.785, 41.023, 46.954, 41.276, 40.943, 53.480, 59.881};
}

std::vector<double> run_design(const FactorDesign& design,
                               const physics::SoilProperties& soil,
                               const physics::ConvectionModel& conv,
                               const weather::WeatherSeries& series,
                               const fem::SimulationConfig& config, ResponseMetric metric) {
    design.validate();
    if (design.factors != std::vector<std::string>{"tau_s", "rho_s", "tau_l", "rho_l"})
        throw ValidationError("run_design: factors must be tau_s, rho_s, tau_l, rho_l");

    std::vector<double> responses;
    responses.reserve(design.runs.size());
    for (size_t r = 0; r < design.runs.size(); ++r) {
        const auto optics =
            physics::make_optics(design.level_of(r, 0), design.level_of(r, 1),
                                 design.level_of(r, 2), design.level_of(r, 3));
        try {
            const fem::SimulationResult result =
                fem::simulate(config, soil, optics, conv, series);
            double acc = metric == ResponseMetric::MaxSurfaceTemp
                             ? -std::numeric_limits<double>::infinity()
                             : 0.0;
            for (const auto& s : result.states) {
                const double surf = s.T_nodes.front();
                if (metric == ResponseMetric::MaxSurfaceTemp)
                    acc = std::max(acc, surf);
                else
                    acc += surf;
            }
            if (metric == ResponseMetric::MeanSurfaceTemp)
                acc /= static_cast<double>(result.states.size());
            responses.push_back(physics::to_celsius(acc));
        } catch (const std::exception& e) {
            throw StepError("design run " + std::to_string(r + 1) + " failed: " + e.what(),
                            static_cast<long>(r + 1), 0.0);
        }
    }
    return responses;
}

std::vector<FactorEffects> marginal_means(const FactorDesign& design,
                                          const std::vector<double>& responses) {
    if (responses.size() != design.runs.size())
        throw ValidationError("marginal_means: one response per run required");
    std::vector<FactorEffects> effects;
    effects.reserve(design.factors.size());
    for (size_t f = 0; f < design.factors.size(); ++f) {
        FactorEffects fe;
        fe.factor = design.factors[f];
        for (size_t li = 0; li < design.levels[f].size(); ++li) {
            double sum = 0.0;
            int count = 0;
            for (size_t r = 0; r < design.runs.size(); ++r) {
                if (design.runs[r][f] == static_cast<int>(li)) {
                    sum += responses[r];
                    ++count;
                }
            }
            if (count == 0)
                throw ValidationError("marginal_means: level " +
                                      std::to_string(design.levels[f][li]) + " of " +
                                      fe.factor + " has no runs");
            fe.levels.push_back({design.levels[f][li], sum / count, count});
        }
        effects.push_back(std::move(fe));
    }
    return effects;
}

std::vector<double> sn_ratio_larger_better(const std::vector<double>& responses) {
    std::vector<double> out;
    out.reserve(responses.size());
    for (double y : responses) {
        if (!(y > 0.0))
            throw ValidationError("sn_ratio_larger_better: responses must be positive");
        out.push_back(20.0 * std::log10(y));
    }
    return out;
}

std::vector<OptimalChoice> select_optimal(const std::vector<FactorEffects>& effects,
                                          double near_tie_threshold) {
    std::vector<OptimalChoice> out;
    out.reserve(effects.size());
    for (const auto& fe : effects) {
        if (fe.levels.empty())
            throw ValidationError("select_optimal: factor " + fe.factor + " has no levels");
        size_t best = 0;
        for (size_t li = 1; li < fe.levels.size(); ++li)
            if (fe.levels[li].marginal_mean > fe.levels[best].marginal_mean)
                best = li;

        OptimalChoice choice;
        choice.factor = fe.factor;
        choice.level = fe.levels[best].level;
        choice.marginal_mean = fe.levels[best].marginal_mean;
        choice.exact_tie = false;
        choice.near_tie = false;
        for (size_t li = 0; li < fe.levels.size(); ++li) {
            if (li == best)
                continue;
            const double gap = fe.levels[best].marginal_mean - fe.levels[li].marginal_mean;
            if (gap == 0.0)
                choice.exact_tie = true;
            if (gap < near_tie_threshold)
                choice.near_tie = true;
        }
        if (fe.levels.size() == 1)
            choice.direction = 0;
        else if (best == fe.levels.size() - 1)
            choice.direction = +1;
        else if (best == 0)
            choice.direction = -1;
        else
            choice.direction = 0;
        out.push_back(choice);
    }
    return out;
}

} // namespace mulchsim::doe
