#ifndef MULCHSIM_PHYSICS_HPP
#define MULCHSIM_PHYSICS_HPP

#include <string>

namespace mulchsim::physics {

// Stefan-Boltzmann constant [W/(m^2 K^4)].
inline constexpr double kStefanBoltzmann = 5.67e-8;

inline constexpr double kCelsiusOffset = 273.15;
inline double to_kelvin(double celsius) { return celsius + kCelsiusOffset; }
inline double to_celsius(double kelvin) { return kelvin - kCelsiusOffset; }

// Optical properties of the plastic film, split into the solar shortwave
// band and the thermal longwave band. All fields are dimensionless
// fractions in [0, 1] with tau + rho <= 1 per band.
struct MulchOptics {
    double tau_s; // shortwave transmittance
    double rho_s; // shortwave reflectivity
    double tau_l; // longwave transmittance
    double rho_l; // longwave reflectivity
    double eps_m; // film emissivity

    void validate() const;
};

// Film emissivity from opacity in the longwave band: max(0, 1 - tau_l - rho_l).
double kirchhoff_emissivity(double tau_l, double rho_l);

// Optics with eps_m defaulted by Kirchhoff's law.
MulchOptics make_optics(double tau_s, double rho_s, double tau_l, double rho_l);

struct SoilProperties {
    double k;            // thermal conductivity [W/(m K)]
    double rho_cp;       // volumetric heat capacity [J/(m^3 K)]
    double eps_s = 0.95; // surface emissivity
    double a_s = 0.25;   // shortwave albedo

    double diffusivity() const { return k / rho_cp; } // [m^2/s]
    void validate() const;
};

// Film-side convective couplings. The internal coefficient is a constant;
// the external one is affine in wind speed.
struct ConvectionModel {
    double h_i = 7.2;           // soil surface <-> film [W/(m^2 K)]
    double h_o_intercept = 7.2; // film <-> ambient, still air [W/(m^2 K)]
    double h_o_slope = 3.8;     // wind sensitivity [W s/(m^3 K)]

    void validate() const;
};

// Instantaneous ambient forcing.
struct BoundaryEnvironment {
    double R_s; // incident solar shortwave [W/m^2]
    double T_a; // ambient air temperature [K]
    double v;   // wind speed [m/s]

    void validate() const;
};

// Swinbank clear-sky emissivity, clamped to 1 (the correlation exceeds
// unity above ~330 K).
double sky_emissivity(double T_a);

// h_o = intercept + slope * v.
double h_external(double v, const ConvectionModel& model);

// Shortwave power absorbed by the soil surface after the infinite
// film/soil inter-reflection series: tau_s (1 - a_s) / (1 - rho_s a_s) * R_s.
double shortwave_soil_gain(const MulchOptics& optics, const SoilProperties& soil, double R_s);

// Net longwave flux into the soil surface (positive = soil gains):
//   eps_s sigma / (1 - rho_l + rho_l eps_s)
//     * [tau_l eps_sky T_a^4 + eps_m T_m^4 - (1 - rho_l) T^4]
// The first overload takes eps_sky explicitly; the second derives it
// from T_a via the Swinbank correlation.
double longwave_soil_exchange(const MulchOptics& optics, const SoilProperties& soil,
                              double eps_sky, double T_a, double T_m, double T);
double longwave_soil_exchange(const MulchOptics& optics, const SoilProperties& soil,
                              double T_a, double T_m, double T);

// Net heat flux absorbed at the soil surface (positive into the soil):
// internal convection + shortwave gain + longwave exchange. This is the
// load that drives the surface node of the conduction problem.
double surface_flux(const MulchOptics& optics, const SoilProperties& soil,
                    const ConvectionModel& conv, const BoundaryEnvironment& env,
                    double T_m, double T_surf);

// Steady-state energy balance of the (massless) film, precomputed for a
// fixed material set and instantaneous environment. With
//   D_s = 1 - rho_s a_s,   D_l = 1 - rho_l + rho_l eps_s
// the balance in T (soil surface) and T_m (film) reads
//   h_i (T - T_m) + h_o (T_a - T_m)
//     + [1 - rho_s - tau_s (1 - a_s + tau_s a_s) / D_s] R_s
//     + [1 - rho_l - tau_l (tau_l + eps_s (1 - tau_l)) / D_l] eps_sky sigma T_a^4
//     - [2 - (1 - eps_s)(1 - tau_l - rho_l) / D_l] eps_m sigma T_m^4
//     + [1 - (tau_l + rho_l) / D_l] eps_s sigma T^4 = 0.
// The residual is strictly decreasing in T_m, so the root is unique.
class MulchEnergyBalance {
public:
    MulchEnergyBalance(const MulchOptics& optics, const SoilProperties& soil,
                       const ConvectionModel& conv, const BoundaryEnvironment& env);

    // Radiation-free variant: h_i (T - T_m) + h_o (T_a - T_m) = 0.
    static MulchEnergyBalance convection_only(const ConvectionModel& conv,
                                              const BoundaryEnvironment& env);

    // Left-hand side of the balance; zero when T_m is the film temperature.
    double residual(double T_surf, double T_m) const;

    // Root in T_m by fixed-point iteration with all T_m^4 terms lagged,
    // safeguarded by bisection on [150 K, 450 K] when iterates leave the
    // bracket. Postcondition: |residual| < 1e-3 W/m^2.
    double solve(double T_surf, double T_m_guess, double tol = 1e-6, int max_iter = 100) const;

private:
    MulchEnergyBalance() = default;

    double h_i_ = 0.0;
    double h_o_ = 0.0;
    double sw_absorbed_ = 0.0;   // film shortwave absorption [W/m^2]
    double lw_sky_ = 0.0;        // absorbed sky longwave [W/m^2]
    double emission_coeff_ = 0.0; // multiplies sigma T_m^4
    double soil_coeff_ = 0.0;     // multiplies sigma T^4
    double T_a_ = 0.0;
};

// Convenience wrappers over MulchEnergyBalance.
double mulch_balance_residual(const MulchOptics& optics, const SoilProperties& soil,
                              const ConvectionModel& conv, const BoundaryEnvironment& env,
                              double T_surf, double T_m);
double solve_mulch_temperature(const MulchOptics& optics, const SoilProperties& soil,
                               const ConvectionModel& conv, const BoundaryEnvironment& env,
                               double T_surf, double T_m_guess,
                               double tol = 1e-6, int max_iter = 100);

// Physical bracket for the film temperature root.
inline constexpr double kMulchBracketLo = 150.0;
inline constexpr double kMulchBracketHi = 450.0;
// Residual magnitude accepted as "balanced" [W/m^2].
inline constexpr double kMulchResidualTol = 1e-3;

} // namespace mulchsim::physics

#endif
