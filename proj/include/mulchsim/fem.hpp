#ifndef MULCHSIM_FEM_HPP
#define MULCHSIM_FEM_HPP

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mulchsim/banded.hpp"
#include "mulchsim/physics.hpp"
#include "mulchsim/weather.hpp"

namespace mulchsim::fem {

// Uniform 1-D mesh of quadratic Lagrange elements. Node 0 sits at the
// surface (z = 0); with n elements there are 2n + 1 nodes, the element
// midside nodes interleaved with the vertices.
struct Mesh1D {
    double depth = 0.0;
    int n_elements = 0;
    std::vector<double> node_coords;

    static Mesh1D uniform(double depth, int n_elements);
    int n_nodes() const { return 2 * n_elements + 1; }
    double element_length() const { return depth / n_elements; }
    void validate() const;
};

// Per-element 3x3 capacitance and conductance matrices:
//   C_e = rho_cp h_e / 30 * [[4,2,-1],[2,16,2],[-1,2,4]]
//   K_e = k / (3 h_e)     * [[7,-8,1],[-8,16,-8],[1,-8,7]]
struct ElementMatrices {
    std::array<std::array<double, 3>, 3> C;
    std::array<std::array<double, 3>, 3> K;
};

ElementMatrices element_matrices(const physics::SoilProperties& soil, double h_e);

// Global capacitance and conductance, symmetric with bandwidth 2.
std::pair<lin::SymmetricBanded, lin::SymmetricBanded>
assemble(const Mesh1D& mesh, const physics::SoilProperties& soil);

// Backward-difference system matrix C + dt K.
lin::SymmetricBanded effective_system(const lin::SymmetricBanded& C,
                                      const lin::SymmetricBanded& K, double dt);

// Load vector with the surface flux at node 0 and zeros elsewhere. The
// bottom natural-flux entry never carries a value because the bottom node
// is Dirichlet-constrained.
std::vector<double> load_vector(double surface_q, int n_nodes);

// Row/column elimination of the bottom Dirichlet constraint: returns the
// leading principal submatrix and the right-hand side with the known
// value's column contributions moved over.
std::pair<lin::SymmetricBanded, std::vector<double>>
apply_dirichlet_bottom(const lin::SymmetricBanded& K_hat, const std::vector<double>& F_hat,
                       double T_bottom);

enum class TopBoundary { PrescribedFlux, PrescribedTemperature };
enum class BottomBoundary { PrescribedTemperature, ZeroFlux };

// One backward-Euler step of the linear conduction problem
//   (C + dt K) T^{n+1} = C T^n + dt F^{n+1}
// with configurable end conditions. The effective matrix is factored once
// at construction and reused for every step.
class HeatStepper {
public:
    HeatStepper(const Mesh1D& mesh, const physics::SoilProperties& soil, double dt,
                TopBoundary top = TopBoundary::PrescribedFlux,
                BottomBoundary bottom = BottomBoundary::PrescribedTemperature);

    // `top_value` is a flux [W/m^2] or a temperature [K] depending on the
    // top boundary kind; `bottom_temperature` is used only with a
    // prescribed-temperature bottom. Boundary data are taken at t + dt.
    std::vector<double> advance(const std::vector<double>& T_now, double top_value,
                                double bottom_temperature = 0.0) const;

    const Mesh1D& mesh() const { return mesh_; }
    double dt() const { return dt_; }
    const lin::SymmetricBanded& capacitance() const { return C_; }
    const lin::SymmetricBanded& conductance() const { return K_; }
    const lin::SymmetricBanded& effective() const { return K_hat_; }

private:
    Mesh1D mesh_;
    double dt_;
    TopBoundary top_;
    BottomBoundary bottom_;
    lin::SymmetricBanded C_;
    lin::SymmetricBanded K_;
    lin::SymmetricBanded K_hat_;
    int lo_; // first unconstrained dof
    int hi_; // one past the last unconstrained dof
    lin::BandedCholesky reduced_;
};

// Nodal temperatures plus the film temperature at one time level.
struct SimulationState {
    double t = 0.0;               // [s]
    std::vector<double> T_nodes;  // [K], surface first
    double T_mulch = 0.0;         // [K]
};

// Sanity envelope; a temperature outside (100, 500) K aborts the run.
inline constexpr double kSanityMinK = 100.0;
inline constexpr double kSanityMaxK = 500.0;

struct StepDiagnostics {
    int fixed_point_iters = 0;
    double surface_increment = 0.0; // last surface iterate change [K]
    double mulch_residual = 0.0;    // film balance residual [W/m^2]
};

struct SimulationResult {
    std::vector<SimulationState> states;
    std::vector<StepDiagnostics> diagnostics; // one per step (excludes initial state)
};

struct SimulationConfig {
    Mesh1D mesh;
    double dt = 300.0;       // [s]
    double T_bottom = 288.15; // [K]
    // Initial temperature as a function of depth [m] -> [K].
    std::function<double(double)> initial_profile;
    double fixed_point_tol = 1e-6; // [K] on successive surface iterates
    int max_fixed_point_iter = 50;
    double mulch_tol = 1e-6; // [K]
    int mulch_max_iter = 100;
    // Radiative exchange switch; with radiation off the surface sees only
    // film convection and the film balances convectively against the air.
    bool radiation_enabled = true;

    void validate() const;
};

// Linear initial profile from T_surface at z = 0 to T_bottom at z = depth.
std::function<double(double)> linear_initial_profile(double T_surface, double T_bottom,
                                                     double depth);

// Transient solver for the coupled soil/film problem. Per step, the
// nonlinear surface load is resolved by fixed-point iteration on the
// surface temperature with the film balance solved at every iterate;
// oscillating iterates are under-relaxed by 0.7.
class MulchSimulator {
public:
    MulchSimulator(SimulationConfig config, physics::SoilProperties soil,
                   physics::MulchOptics optics, physics::ConvectionModel conv);

    SimulationState initial_state(const physics::BoundaryEnvironment& env0) const;

    std::pair<SimulationState, StepDiagnostics>
    step(const SimulationState& state, const physics::BoundaryEnvironment& env_next) const;

    SimulationResult run(const weather::WeatherSeries& series) const;

    const SimulationConfig& config() const { return config_; }

private:
    SimulationConfig config_;
    physics::SoilProperties soil_;
    physics::MulchOptics optics_;
    physics::ConvectionModel conv_;
    HeatStepper stepper_;

    double surface_load(const physics::MulchEnergyBalance& balance,
                        const physics::BoundaryEnvironment& env, double T_surf,
                        double T_m) const;
    physics::MulchEnergyBalance make_balance(const physics::BoundaryEnvironment& env) const;
};

SimulationResult simulate(const SimulationConfig& config, const physics::SoilProperties& soil,
                          const physics::MulchOptics& optics,
                          const physics::ConvectionModel& conv,
                          const weather::WeatherSeries& series);

// Mean over samples of |sim - meas| / |meas| with both series converted to
// degrees Celsius. Samples measuring exactly 0 degC are excluded (division
// singularity); the exclusion count is reported through `excluded`.
double mean_relative_error(const std::vector<double>& simulated_K,
                           const std::vector<double>& measured_K, int* excluded = nullptr);

} // namespace mulchsim::fem

#endif
