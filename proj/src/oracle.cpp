#include "mulchsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "mulchsim/errors.hpp"

namespace mulchsim::oracle {

void PeriodicHalfspaceProblem::validate() const {
    if (!(omega > 0.0))
        throw ValidationError("PeriodicHalfspaceProblem: omega must be positive");
    if (!(alpha > 0.0))
        throw ValidationError("PeriodicHalfspaceProblem: alpha must be positive");
    if (!(amplitude >= 0.0))
        throw ValidationError("PeriodicHalfspaceProblem: amplitude must be nonnegative");
}

double damping_depth(const PeriodicHalfspaceProblem& problem) {
    problem.validate();
    return std::sqrt(2.0 * problem.alpha / problem.omega);
}

double periodic_temperature(const PeriodicHalfspaceProblem& problem, double z, double t) {
    problem.validate();
    if (z < 0.0)
        throw std::domain_error("periodic_temperature: z must be nonnegative");
    const double d = damping_depth(problem);
    return problem.T_mean +
           problem.amplitude * std::exp(-z / d) * std::sin(problem.omega * t - z / d);
}

double attenuation_depth(const PeriodicHalfspaceProblem& problem, double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw std::domain_error("attenuation_depth: ratio must be in (0, 1]");
    return damping_depth(problem) * std::log(1.0 / ratio);
}

double steady_linear_profile(double k, double q_top, double T_bottom, double depth, double z) {
    if (!(k > 0.0))
        throw std::domain_error("steady_linear_profile: k must be positive");
    if (z < 0.0 || z > depth)
        throw std::domain_error("steady_linear_profile: z outside [0, depth]");
    return T_bottom + q_top / k * (depth - z);
}

} // namespace mulchsim::oracle
