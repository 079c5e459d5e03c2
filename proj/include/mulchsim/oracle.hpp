#ifndef MULCHSIM_ORACLE_HPP
#define MULCHSIM_ORACLE_HPP

namespace mulchsim::oracle {

// Semi-infinite solid with a sinusoidal surface temperature
//   T(0, t) = T_mean + amplitude * sin(omega t).
struct PeriodicHalfspaceProblem {
    double T_mean;    // [K]
    double amplitude; // [K]
    double omega;     // angular frequency [rad/s]
    double alpha;     // thermal diffusivity [m^2/s]

    void validate() const;
};

inline constexpr double kDaySeconds = 86400.0;
inline constexpr double kYearSeconds = 365.0 * kDaySeconds;

// Depth at which the wave amplitude has decayed by a factor e:
// sqrt(2 alpha / omega).
double damping_depth(const PeriodicHalfspaceProblem& problem);

// T_mean + amplitude * exp(-z/d) * sin(omega t - z/d).
double periodic_temperature(const PeriodicHalfspaceProblem& problem, double z, double t);

// Depth at which the amplitude ratio falls below `ratio`: d * ln(1/ratio).
double attenuation_depth(const PeriodicHalfspaceProblem& problem, double ratio);

// Steady conduction with constant downward flux q_top at z = 0 and fixed
// temperature T_bottom at z = depth: T_bottom + (q_top / k) (depth - z).
double steady_linear_profile(double k, double q_top, double T_bottom, double depth, double z);

} // namespace mulchsim::oracle

#endif
