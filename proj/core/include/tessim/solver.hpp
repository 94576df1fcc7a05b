#pragma once

#include <span>
#include <vector>

#include "tessim/environment.hpp"
#include "tessim/network.hpp"

namespace tessim {

struct SolverOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-6;             // K, absolute tolerance on temperatures
  double initial_step = 1.0;         // s
  double max_step = 0.0;             // s, 0 means no cap beyond the frame length
  int max_consecutive_rejects = 50;  // then fall back to the implicit stepper
};

/// Extra first-order state integrated together with the node temperatures
/// (reaction progress, reservoir mass, released heat, ...). `rates` must be a
/// pure function of (time, state, temperatures): it adds the source's heat
/// input per node into `node_heat_W` and writes d(state)/dt.
class CoupledSource {
public:
  virtual ~CoupledSource() = default;
  virtual std::size_t state_size() const = 0;
  virtual void initial_state(std::span<double> state) const = 0;
  virtual void rates(double time_s, std::span<const double> state,
                     std::span<const double> node_temperatures_K,
                     std::span<double> state_derivative,
                     std::span<double> node_heat_W) const = 0;
};

/// Integration state carried across frames.
///
/// The heat tallies are integrated with the exact same Runge-Kutta stages as
/// the temperatures, so the lumped energy balance
///   sum_i C_i (T_i - T_i(start))  =  source_heat - boundary_heat
/// holds to rounding error at every instant: internal link flows cancel
/// pairwise in the sum and only injected heat and boundary exchange remain.
struct NetworkState {
  double time = 0.0;                 // s
  std::vector<double> temperatures;  // K, one per node; boundary kept in sync
  std::vector<double> link_heat;     // J per link, positive from node_a to node_b
  double source_heat = 0.0;          // J, dissipation + injected + coupled sources
  double boundary_heat = 0.0;        // J, net heat passed into the boundary node
  double step_hint = 1.0;            // s, adaptive step carried between frames
};

/// Adaptive explicit Runge-Kutta integrator (Dormand-Prince 5(4) embedded
/// pair, first-same-as-last) with proportional step control. After
/// max_consecutive_rejects failed attempts it switches to a step-halving
/// implicit Euler step with a Newton solve, then resumes the explicit pair.
/// NaN or non-positive temperatures raise SolverError with diagnostics.
class TransientSolver {
public:
  explicit TransientSolver(const Network& network, SolverOptions options = {});

  const Network& network() const { return *network_; }
  const SolverOptions& options() const { return options_; }

  /// State at t = 0 with node temperatures from the network definition and
  /// the boundary at the environment's t = 0 value.
  NetworkState initial_state(const EnvironmentProfile& environment) const;

  /// Advances `state` by dt (one frame). `injected_heat_W` holds per-node
  /// heat sources constant across the frame (empty means none); `source`
  /// carries additional coupled state in `coupled_state`, which is read and
  /// written in place.
  void advance(NetworkState& state, double dt, const EnvironmentProfile& environment,
               std::span<const double> injected_heat_W = {}, CoupledSource* source = nullptr,
               std::span<double> coupled_state = {}) const;

private:
  struct Workspace;
  void derivative(double t, std::span<const double> y, std::span<double> dy,
                  const EnvironmentProfile& environment, std::span<const double> injected_heat_W,
                  CoupledSource* source, Workspace& ws) const;
  void implicit_euler_step(double t, double dt, std::span<double> y,
                           const EnvironmentProfile& environment,
                           std::span<const double> injected_heat_W, CoupledSource* source,
                           Workspace& ws) const;
  void check_physical(double t, std::span<const double> y) const;

  const Network* network_;
  SolverOptions options_;
  std::vector<std::size_t> dynamic_;  // node indices integrated as unknowns
};

struct SteadyOptions {
  double residual_tol = 1e-9;  // W, infinity norm of the nodal balance
  int max_iterations = 200;
};

/// Steady temperatures of the network with the boundary held at
/// `boundary_temperature_K` and optional extra per-node heat input. Solved by
/// damped Newton iteration on the nodal heat balance with the analytic
/// Jacobian; independent of heat capacities. Throws NumericError when the
/// residual cannot be brought under tolerance.
std::vector<double> steady_state(const Network& network, double boundary_temperature_K,
                                 std::span<const double> extra_heat_W = {},
                                 const SteadyOptions& options = {});

/// Power that must be injected into `node_id` to hold it at `hold_K` once the
/// rest of the network has settled, W. Positive means heating is required.
double steady_hold_power(const Network& network, double boundary_temperature_K,
                         std::string_view node_id, double hold_K,
                         const SteadyOptions& options = {});

}  // namespace tessim
