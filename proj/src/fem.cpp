#include "mulchsim/fem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mulchsim/errors.hpp"

namespace mulchsim::fem {

Mesh1D Mesh1D::uniform(double depth, int n_elements) {
    if (!(depth > 0.0))
        throw ValidationError("Mesh1D: depth must be positive");
    if (n_elements < 1)
        throw ValidationError("Mesh1D: need at least one element");
    Mesh1D mesh;
    mesh.depth = depth;
    mesh.n_elements = n_elements;
    const int n = 2 * n_elements + 1;
    mesh.node_coords.resize(n);
    const double half = depth / n_elements / 2.0;
    for (int i = 0; i < n; ++i)
        mesh.node_coords[i] = half * i;
    mesh.node_coords.back() = depth; // exact, independent of rounding
    return mesh;
}

void Mesh1D::validate() const {
    if (!(depth > 0.0) || n_elements < 1)
        throw ValidationError("Mesh1D: invalid dimensions");
    if (static_cast<int>(node_coords.size()) != n_nodes())
        throw ValidationError("Mesh1D: node count must be 2 * n_elements + 1");
    if (node_coords.front() != 0.0 || node_coords.back() != depth)
        throw ValidationError("Mesh1D: nodes must span [0, depth]");
    for (size_t i = 1; i < node_coords.size(); ++i)
        if (!(node_coords[i] > node_coords[i - 1]))
            throw ValidationError("Mesh1D: node coordinates must be strictly increasing");
}

ElementMatrices element_matrices(const physics::SoilProperties& soil, double h_e) {
    if (!(h_e > 0.0))
        throw std::domain_error("element_matrices: h_e must be positive");
    static constexpr int c_stencil[3][3] = {{4, 2, -1}, {2, 16, 2}, {-1, 2, 4}};
    static constexpr int k_stencil[3][3] = {{7, -8, 1}, {-8, 16, -8}, {1, -8, 7}};
    const double c_pref = soil.rho_cp * h_e / 30.0;
    const double k_pref = soil.k / (3.0 * h_e);
    ElementMatrices m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            m.C[i][j] = c_pref * c_stencil[i][j];
            m.K[i][j] = k_pref * k_stencil[i][j];
        }
    return m;
}

std::pair<lin::SymmetricBanded, lin::SymmetricBanded>
assemble(const Mesh1D& mesh, const physics::SoilProperties& soil) {
    mesh.validate();
    soil.validate();
    const int n = mesh.n_nodes();
    lin::SymmetricBanded C(n, 2), K(n, 2);
    const ElementMatrices m = element_matrices(soil, mesh.element_length());
    for (int e = 0; e < mesh.n_elements; ++e) {
        const int base = 2 * e;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j) {
                C.add(base + i, base + j, m.C[i][j]);
                K.add(base + i, base + j, m.K[i][j]);
            }
    }
    return {std::move(C), std::move(K)};
}

lin::SymmetricBanded effective_system(const lin::SymmetricBanded& C,
                                      const lin::SymmetricBanded& K, double dt) {
    if (dt < 0.0)
        throw std::domain_error("effective_system: dt must be nonnegative");
    return C.plus_scaled(K, dt);
}

std::vector<double> load_vector(double surface_q, int n_nodes) {
    std::vector<double> F(n_nodes, 0.0);
    F[0] = surface_q;
    return F;
}

std::pair<lin::SymmetricBanded, std::vector<double>>
apply_dirichlet_bottom(const lin::SymmetricBanded& K_hat, const std::vector<double>& F_hat,
                       double T_bottom) {
    const int n = K_hat.size();
    if (static_cast<int>(F_hat.size()) != n)
        throw std::invalid_argument("apply_dirichlet_bottom: size mismatch");
    if (n < 2)
        throw std::invalid_argument("apply_dirichlet_bottom: system too small");
    lin::SymmetricBanded reduced = K_hat.submatrix(0, n - 1);
    std::vector<double> rhs(F_hat.begin(), F_hat.end() - 1);
    for (int i = std::max(0, n - 1 - K_hat.bandwidth()); i < n - 1; ++i)
        rhs[i] -= K_hat.at(i, n - 1) * T_bottom;
    return {std::move(reduced), std::move(rhs)};
}

HeatStepper::HeatStepper(const Mesh1D& mesh, const physics::SoilProperties& soil, double dt,
                         TopBoundary top, BottomBoundary bottom)
    : mesh_(mesh), dt_(dt), top_(top), bottom_(bottom),
      C_(1, 0), K_(1, 0), K_hat_(1, 0),
      lo_(top == TopBoundary::PrescribedTemperature ? 1 : 0),
      hi_(mesh.n_nodes() - (bottom == BottomBoundary::PrescribedTemperature ? 1 : 0)),
      reduced_([&] {
          if (!(dt > 0.0))
              throw ValidationError("HeatStepper: dt must be positive");
          auto [C, K] = assemble(mesh, soil);
          C_ = std::move(C);
          K_ = std::move(K);
          K_hat_ = effective_system(C_, K_, dt);
          return lin::BandedCholesky(K_hat_.submatrix(lo_, hi_));
      }()) {}

std::vector<double> HeatStepper::advance(const std::vector<double>& T_now, double top_value,
                                         double bottom_temperature) const {
    const int n = mesh_.n_nodes();
    if (static_cast<int>(T_now.size()) != n)
        throw std::invalid_argument("HeatStepper::advance: state size mismatch");

    std::vector<double> rhs_full = C_.multiply(T_now);
    if (top_ == TopBoundary::PrescribedFlux)
        rhs_full[0] += dt_ * top_value;

    std::vector<double> rhs(rhs_full.begin() + lo_, rhs_full.begin() + hi_);
    const int bw = K_hat_.bandwidth();
    if (lo_ == 1) { // top temperature prescribed
        for (int i = 1; i <= std::min(bw, hi_ - 1); ++i)
            rhs[i - lo_] -= K_hat_.at(i, 0) * top_value;
    }
    if (hi_ == n - 1) { // bottom temperature prescribed
        for (int i = std::max(lo_, n - 1 - bw); i < n - 1; ++i)
            rhs[i - lo_] -= K_hat_.at(i, n - 1) * bottom_temperature;
    }

    std::vector<double> interior = reduced_.solve(std::move(rhs));
    std::vector<double> T_next(n);
    if (lo_ == 1)
        T_next[0] = top_value;
    std::copy(interior.begin(), interior.end(), T_next.begin() + lo_);
    if (hi_ == n - 1)
        T_next[n - 1] = bottom_temperature;
    return T_next;
}

void SimulationConfig::validate() const {
    mesh.validate();
    if (!(dt > 0.0))
        throw ValidationError("SimulationConfig: dt must be positive");
    if (!(fixed_point_tol > 0.0) || !(mulch_tol > 0.0))
        throw ValidationError("SimulationConfig: tolerances must be positive");
    if (max_fixed_point_iter < 1 || mulch_max_iter < 1)
        throw ValidationError("SimulationConfig: iteration limits must be positive");
    if (!(T_bottom > kSanityMinK && T_bottom < kSanityMaxK))
        throw ValidationError("SimulationConfig: T_bottom outside the sanity envelope");
    if (!initial_profile)
        throw ValidationError("SimulationConfig: initial profile not set");
}

std::function<double(double)> linear_initial_profile(double T_surface, double T_bottom,
                                                     double depth) {
    return [=](double z) { return T_surface + (T_bottom - T_surface) * z / depth; };
}

MulchSimulator::MulchSimulator(SimulationConfig config, physics::SoilProperties soil,
                               physics::MulchOptics optics, physics::ConvectionModel conv)
    : config_(std::move(config)), soil_(soil), optics_(optics), conv_(conv),
      stepper_(config_.mesh, soil_, config_.dt, TopBoundary::PrescribedFlux,
               BottomBoundary::PrescribedTemperature) {
    config_.validate();
    soil_.validate();
    optics_.validate();
    conv_.validate();
}

physics::MulchEnergyBalance
MulchSimulator::make_balance(const physics::BoundaryEnvironment& env) const {
    if (config_.radiation_enabled)
        return physics::MulchEnergyBalance(optics_, soil_, conv_, env);
    return physics::MulchEnergyBalance::convection_only(conv_, env);
}

double MulchSimulator::surface_load(const physics::MulchEnergyBalance&,
                                    const physics::BoundaryEnvironment& env, double T_surf,
                                    double T_m) const {
    if (config_.radiation_enabled)
        return physics::surface_flux(optics_, soil_, conv_, env, T_m, T_surf);
    return conv_.h_i * (T_m - T_surf);
}

namespace {

void check_envelope(const std::vector<double>& T, double T_mulch, long step_index, double t) {
    for (double v : T)
        if (!(v > kSanityMinK && v < kSanityMaxK))
            throw StepError("nodal temperature " + std::to_string(v) +
                                " K outside the (100, 500) K sanity envelope at t = " +
                                std::to_string(t) + " s",
                            step_index, t);
    if (!(T_mulch > kSanityMinK && T_mulch < kSanityMaxK))
        throw StepError("film temperature " + std::to_string(T_mulch) +
                            " K outside the (100, 500) K sanity envelope at t = " +
                            std::to_string(t) + " s",
                        step_index, t);
}

} // namespace

SimulationState MulchSimulator::initial_state(const physics::BoundaryEnvironment& env0) const {
    env0.validate();
    SimulationState s;
    s.t = 0.0;
    const int n = config_.mesh.n_nodes();
    s.T_nodes.resize(n);
    for (int i = 0; i < n; ++i)
        s.T_nodes[i] = config_.initial_profile(config_.mesh.node_coords[i]);
    s.T_nodes.back() = config_.T_bottom;
    s.T_mulch = make_balance(env0).solve(s.T_nodes[0], env0.T_a, config_.mulch_tol,
                                         config_.mulch_max_iter);
    check_envelope(s.T_nodes, s.T_mulch, 0, 0.0);
    return s;
}

std::pair<SimulationState, StepDiagnostics>
MulchSimulator::step(const SimulationState& state, const physics::BoundaryEnvironment& env) const {
    env.validate();
    const physics::MulchEnergyBalance balance = make_balance(env);

    double T_surf = state.T_nodes[0];
    double T_m = state.T_mulch;
    std::vector<double> T_next;
    std::vector<double> history{T_surf};
    double prev_increment = 0.0;
    double increment = 0.0;
    bool converged = false;
    int iters = 0;

    while (iters < config_.max_fixed_point_iter) {
        ++iters;
        T_m = balance.solve(T_surf, T_m, config_.mulch_tol, config_.mulch_max_iter);
        const double q = surface_load(balance, env, T_surf, T_m);
        T_next = stepper_.advance(state.T_nodes, q, config_.T_bottom);

        double delta = T_next[0] - T_surf;
        // Under-relax when successive increments flip sign (T^4 feedback
        // can make plain substitution oscillate).
        if (iters > 1 && delta * prev_increment < 0.0)
            delta *= 0.7;
        increment = delta;
        T_surf += delta;
        history.push_back(T_surf);
        if (converged)
            break; // one extra pass so the accepted state matches the converged load
        if (std::abs(increment) < config_.fixed_point_tol)
            converged = true;
        prev_increment = increment;
    }
    if (!converged)
        throw StepError("surface fixed point did not converge within " +
                            std::to_string(config_.max_fixed_point_iter) + " iterations",
                        -1, state.t + config_.dt, history);

    SimulationState out;
    out.t = state.t + config_.dt;
    out.T_nodes = std::move(T_next);
    out.T_mulch = balance.solve(out.T_nodes[0], T_m, config_.mulch_tol, config_.mulch_max_iter);
    check_envelope(out.T_nodes, out.T_mulch, -1, out.t);

    StepDiagnostics diag;
    diag.fixed_point_iters = iters;
    diag.surface_increment = std::abs(increment);
    diag.mulch_residual = balance.residual(out.T_nodes[0], out.T_mulch);
    return {std::move(out), diag};
}

SimulationResult MulchSimulator::run(const weather::WeatherSeries& series) const {
    series.validate();
    SimulationResult result;
    const double t0 = series.t_begin();
    const double t_end = series.t_end();

    SimulationState current = initial_state(sample_at(series, t0));
    current.t = t0;
    result.states.push_back(current);

    long step_index = 0;
    while (t0 + (step_index + 1) * config_.dt <= t_end + 1e-9) {
        const double t_next = t0 + (step_index + 1) * config_.dt;
        const auto env = sample_at(series, std::min(t_next, t_end));
        try {
            auto [next, diag] = step(current, env);
            next.t = t_next;
            current = std::move(next);
            result.diagnostics.push_back(diag);
        } catch (const StepError& e) {
            throw StepError("step " + std::to_string(step_index + 1) + " (t = " +
                                std::to_string(t_next) + " s): " + e.what(),
                            step_index + 1, t_next, e.iterates);
        }
        result.states.push_back(current);
        ++step_index;
    }
    return result;
}

SimulationResult simulate(const SimulationConfig& config, const physics::SoilProperties& soil,
                          const physics::MulchOptics& optics,
                          const physics::ConvectionModel& conv,
                          const weather::WeatherSeries& series) {
    return MulchSimulator(config, soil, optics, conv).run(series);
}

double mean_relative_error(const std::vector<double>& simulated_K,
                           const std::vector<double>& measured_K, int* excluded) {
    if (simulated_K.size() != measured_K.size())
        throw std::domain_error("mean_relative_error: series lengths differ (" +
                                std::to_string(simulated_K.size()) + " vs " +
                                std::to_string(measured_K.size()) + ")");
    if (simulated_K.empty())
        throw std::domain_error("mean_relative_error: empty series");
    double sum = 0.0;
    long used = 0;
    int skipped = 0;
    for (size_t i = 0; i < measured_K.size(); ++i) {
        const double meas = physics::to_celsius(measured_K[i]);
        const double sim = physics::to_celsius(simulated_K[i]);
        if (meas == 0.0) {
            ++skipped;
            continue;
        }
        sum += std::abs(sim - meas) / std::abs(meas);
        ++used;
    }
    if (excluded)
        *excluded = skipped;
    if (used == 0)
        throw std::domain_error("mean_relative_error: all measured samples are 0 degC");
    return sum / static_cast<double>(used);
}

} // namespace mulchsim::fem
