#include "mulchsim/physics.hpp"

#include <algorithm>
#include <cmath>

#include "mulchsim/errors.hpp"

namespace mulchsim::physics {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw std::domain_error(std::string(name) + " must be finite");
}

double pow4(double x) { return (x * x) * (x * x); }

} // namespace

void MulchOptics::validate() const {
    for (auto [v, name] : {std::pair{tau_s, "tau_s"}, {rho_s, "rho_s"}, {tau_l, "tau_l"},
                           {rho_l, "rho_l"}, {eps_m, "eps_m"}}) {
        require_finite(v, name);
        if (v < 0.0 || v > 1.0)
            throw ValidationError(std::string(name) + " outside [0, 1]: " + std::to_string(v));
    }
    if (tau_s + rho_s > 1.0)
        throw ValidationError("tau_s + rho_s > 1 (negative shortwave absorptance)");
    if (tau_l + rho_l > 1.0)
        throw ValidationError("tau_l + rho_l > 1 (negative longwave absorptance)");
}

double kirchhoff_emissivity(double tau_l, double rho_l) {
    return std::max(0.0, 1.0 - tau_l - rho_l);
}

MulchOptics make_optics(double tau_s, double rho_s, double tau_l, double rho_l) {
    MulchOptics o{tau_s, rho_s, tau_l, rho_l, kirchhoff_emissivity(tau_l, rho_l)};
    o.validate();
    return o;
}

void SoilProperties::validate() const {
    require_finite(k, "k");
    require_finite(rho_cp, "rho_cp");
    if (k <= 0.0)
        throw ValidationError("soil conductivity k must be positive");
    if (rho_cp <= 0.0)
        throw ValidationError("soil heat capacity rho_cp must be positive");
    if (!(eps_s > 0.0 && eps_s <= 1.0))
        throw ValidationError("soil emissivity eps_s outside (0, 1]");
    if (!(a_s >= 0.0 && a_s < 1.0))
        throw ValidationError("soil albedo a_s outside [0, 1)");
}

void ConvectionModel::validate() const {
    if (!(h_i >= 0.0) || !(h_o_intercept >= 0.0) || !(h_o_slope >= 0.0))
        throw ValidationError("convection coefficients must be nonnegative");
}

void BoundaryEnvironment::validate() const {
    require_finite(R_s, "R_s");
    require_finite(T_a, "T_a");
    require_finite(v, "v");
    if (R_s < 0.0)
        throw ValidationError("R_s must be nonnegative");
    if (T_a <= 0.0)
        throw ValidationError("T_a must be positive");
    if (v < 0.0)
        throw ValidationError("wind speed must be nonnegative");
}

double sky_emissivity(double T_a) {
    require_finite(T_a, "T_a");
    if (T_a <= 0.0)
        throw std::domain_error("sky_emissivity: T_a must be positive");
    return std::min(9.2e-6 * T_a * T_a, 1.0);
}

double h_external(double v, const ConvectionModel& model) {
    require_finite(v, "v");
    if (v < 0.0)
        throw std::domain_error("h_external: wind speed must be nonnegative");
    return model.h_o_intercept + model.h_o_slope * v;
}

double shortwave_soil_gain(const MulchOptics& optics, const SoilProperties& soil, double R_s) {
    require_finite(R_s, "R_s");
    const double denom = 1.0 - optics.rho_s * soil.a_s;
    if (denom < 1e-9)
        throw SingularGeometryError("shortwave inter-reflection series diverges: rho_s * a_s ~ 1");
    return optics.tau_s * (1.0 - soil.a_s) / denom * R_s;
}

double longwave_soil_exchange(const MulchOptics& optics, const SoilProperties& soil,
                              double eps_sky, double T_a, double T_m, double T) {
    for (auto [v, name] : {std::pair{T_a, "T_a"}, {T_m, "T_m"}, {T, "T"}}) {
        require_finite(v, name);
        if (v <= 0.0)
            throw std::domain_error(std::string("longwave_soil_exchange: ") + name +
                                    " must be positive");
    }
    const double denom = 1.0 - optics.rho_l + optics.rho_l * soil.eps_s;
    if (denom <= 0.0)
        throw SingularGeometryError("longwave inter-reflection denominator not positive");
    return soil.eps_s * kStefanBoltzmann / denom *
           (optics.tau_l * eps_sky * pow4(T_a) + optics.eps_m * pow4(T_m) -
            (1.0 - optics.rho_l) * pow4(T));
}

double longwave_soil_exchange(const MulchOptics& optics, const SoilProperties& soil,
                              double T_a, double T_m, double T) {
    return longwave_soil_exchange(optics, soil, sky_emissivity(T_a), T_a, T_m, T);
}

double surface_flux(const MulchOptics& optics, const SoilProperties& soil,
                    const ConvectionModel& conv, const BoundaryEnvironment& env,
                    double T_m, double T_surf) {
    return conv.h_i * (T_m - T_surf) + shortwave_soil_gain(optics, soil, env.R_s) +
           longwave_soil_exchange(optics, soil, env.T_a, T_m, T_surf);
}

MulchEnergyBalance::MulchEnergyBalance(const MulchOptics& optics, const SoilProperties& soil,
                                       const ConvectionModel& conv,
                                       const BoundaryEnvironment& env) {
    const double D_s = 1.0 - optics.rho_s * soil.a_s;
    if (D_s < 1e-9)
        throw SingularGeometryError("mulch balance: rho_s * a_s ~ 1");
    const double D_l = 1.0 - optics.rho_l + optics.rho_l * soil.eps_s;
    if (D_l <= 0.0)
        throw SingularGeometryError("mulch balance: longwave denominator not positive");

    const double eps_sky = sky_emissivity(env.T_a);
    h_i_ = conv.h_i;
    h_o_ = h_external(env.v, conv);
    T_a_ = env.T_a;
    sw_absorbed_ =
        (1.0 - optics.rho_s -
         optics.tau_s * (1.0 - soil.a_s + optics.tau_s * soil.a_s) / D_s) * env.R_s;
    lw_sky_ = (1.0 - optics.rho_l -
               optics.tau_l * (optics.tau_l + soil.eps_s * (1.0 - optics.tau_l)) / D_l) *
              eps_sky * kStefanBoltzmann * pow4(env.T_a);
    const double emission_bracket =
        2.0 - (1.0 - soil.eps_s) * (1.0 - optics.tau_l - optics.rho_l) / D_l;
    if (!(emission_bracket > 0.0))
        throw SingularGeometryError(
            "mulch balance: film emission coefficient not positive (" +
            std::to_string(emission_bracket) + "); balance is not monotone in T_m");
    emission_coeff_ = emission_bracket * optics.eps_m;
    soil_coeff_ = (1.0 - (optics.tau_l + optics.rho_l) / D_l) * soil.eps_s;
}

MulchEnergyBalance MulchEnergyBalance::convection_only(const ConvectionModel& conv,
                                                       const BoundaryEnvironment& env) {
    MulchEnergyBalance b;
    b.h_i_ = conv.h_i;
    b.h_o_ = h_external(env.v, conv);
    b.T_a_ = env.T_a;
    return b;
}

double MulchEnergyBalance::residual(double T_surf, double T_m) const {
    require_finite(T_surf, "T_surf");
    require_finite(T_m, "T_m");
    return h_i_ * (T_surf - T_m) + h_o_ * (T_a_ - T_m) + sw_absorbed_ + lw_sky_ -
           emission_coeff_ * kStefanBoltzmann * pow4(T_m) +
           soil_coeff_ * kStefanBoltzmann * pow4(T_surf);
}

double MulchEnergyBalance::solve(double T_surf, double T_m_guess, double tol,
                                 int max_iter) const {
    require_finite(T_surf, "T_surf");
    require_finite(T_m_guess, "T_m_guess");
    if (tol <= 0.0)
        throw std::domain_error("MulchEnergyBalance::solve: tol must be positive");

    // Everything except the lagged T_m^4 term, divided by (h_i + h_o).
    const double h_sum = h_i_ + h_o_;
    const double fixed_part = h_i_ * T_surf + h_o_ * T_a_ + sw_absorbed_ + lw_sky_ +
                              soil_coeff_ * kStefanBoltzmann * pow4(T_surf);

    if (h_sum > 0.0) {
        double T_m = T_m_guess;
        for (int it = 0; it < max_iter; ++it) {
            const double next =
                (fixed_part - emission_coeff_ * kStefanBoltzmann * pow4(T_m)) / h_sum;
            if (next < kMulchBracketLo || next > kMulchBracketHi)
                break; // leave it to the bisection safeguard
            const double delta = std::abs(next - T_m);
            T_m = next;
            if (delta < tol && std::abs(residual(T_surf, T_m)) < kMulchResidualTol)
                return T_m;
        }
    }

    // Bisection safeguard on the physical bracket; the residual is strictly
    // decreasing in T_m so a sign change brackets the unique root.
    double lo = kMulchBracketLo, hi = kMulchBracketHi;
    double r_lo = residual(T_surf, lo);
    double r_hi = residual(T_surf, hi);
    if (r_lo == 0.0)
        return lo;
    if (r_hi == 0.0)
        return hi;
    if ((r_lo < 0.0) == (r_hi < 0.0))
        throw NoSolutionError("mulch balance has no root in [150 K, 450 K]; residuals " +
                              std::to_string(r_lo) + " / " + std::to_string(r_hi));
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        mid = 0.5 * (lo + hi);
        const double r_mid = residual(T_surf, mid);
        if ((r_mid < 0.0) == (r_lo < 0.0)) {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
    }
    mid = 0.5 * (lo + hi);
    const double r = residual(T_surf, mid);
    if (std::abs(r) >= kMulchResidualTol)
        throw ConvergenceError("mulch balance bisection stalled", mid, r);
    return mid;
}

double mulch_balance_residual(const MulchOptics& optics, const SoilProperties& soil,
                              const ConvectionModel& conv, const BoundaryEnvironment& env,
                              double T_surf, double T_m) {
    return MulchEnergyBalance(optics, soil, conv, env).residual(T_surf, T_m);
}

double solve_mulch_temperature(const MulchOptics& optics, const SoilProperties& soil,
                               const ConvectionModel& conv, const BoundaryEnvironment& env,
                               double T_surf, double T_m_guess, double tol, int max_iter) {
    return MulchEnergyBalance(optics, soil, conv, env).solve(T_surf, T_m_guess, tol, max_iter);
}

} // namespace mulchsim::physics
