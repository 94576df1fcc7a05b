#include "tessim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "tessim/errors.hpp"

namespace tessim {

namespace {

// Dormand-Prince 5(4) tableau. The fifth-order weights equal the last stage
// row, so the final stage evaluation doubles as the first stage of the next
// step (first-same-as-last).
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA2[1] = {1.0 / 5};
constexpr double kA3[2] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[4] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
constexpr double kA6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                           -5103.0 / 18656};
constexpr double kB[7] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                          -2187.0 / 6784, 11.0 / 84,  0.0};
// b - b_hat: weights of the embedded fourth-order error estimate.
constexpr double kE[7] = {71.0 / 57600,       0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200,  22.0 / 525,  -1.0 / 40};

// Dense LU solve with partial pivoting; a and b are overwritten.
void solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n,
                 double residual_for_error) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (std::abs(a[pivot * n + col]) < 1e-300)
      throw NumericError("singular thermal Jacobian", residual_for_error);
    if (pivot != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      std::swap(b[pivot], b[col]);
    }
    double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
    b[r] = s / a[r * n + r];
  }
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

struct TransientSolver::Workspace {
  std::vector<double> temps;      // full node vector
  std::vector<double> node_heat;  // W per node
  std::vector<double> net_flow;   // W per node, link contributions
};

TransientSolver::TransientSolver(const Network& network, SolverOptions options)
    : network_(&network), options_(options) {
  if (!(options_.rel_tol > 0) || !(options_.abs_tol > 0))
    throw InvalidInput("solver: tolerances must be positive");
  if (!(options_.initial_step > 0)) throw InvalidInput("solver: initial step must be positive");
  if (options_.max_consecutive_rejects < 1)
    throw InvalidInput("solver: max_consecutive_rejects must be at least 1");
  for (std::size_t i = 0; i < network.node_count(); ++i)
    if (!network.nodes()[i].is_boundary) dynamic_.push_back(i);
}

NetworkState TransientSolver::initial_state(const EnvironmentProfile& environment) const {
  NetworkState s;
  s.time = 0.0;
  s.temperatures.resize(network_->node_count());
  for (std::size_t i = 0; i < network_->node_count(); ++i)
    s.temperatures[i] = network_->nodes()[i].initial_temperature;
  s.temperatures[network_->boundary_index()] = environment.ambient_at(0.0);
  s.link_heat.assign(network_->links().size(), 0.0);
  s.step_hint = options_.initial_step;
  return s;
}

void TransientSolver::derivative(double t, std::span<const double> y, std::span<double> dy,
                                 const EnvironmentProfile& environment,
                                 std::span<const double> injected_heat_W, CoupledSource* source,
                                 Workspace& ws) const {
  const std::size_t nd = dynamic_.size();
  const std::size_t m = source ? source->state_size() : 0;
  const std::size_t n_links = network_->links().size();
  const std::size_t boundary = network_->boundary_index();

  for (std::size_t i = 0; i < nd; ++i) ws.temps[dynamic_[i]] = y[i];
  ws.temps[boundary] = environment.ambient_at(t);

  std::fill(ws.node_heat.begin(), ws.node_heat.end(), 0.0);
  for (std::size_t i : dynamic_) {
    ws.node_heat[i] = network_->nodes()[i].dissipation;
    if (!injected_heat_W.empty()) ws.node_heat[i] += injected_heat_W[i];
  }
  if (source)
    source->rates(t, y.subspan(nd, m), ws.temps, dy.subspan(nd, m),
                  std::span<double>(ws.node_heat));

  std::fill(ws.net_flow.begin(), ws.net_flow.end(), 0.0);
  double boundary_flow = 0.0;
  for (std::size_t j = 0; j < n_links; ++j) {
    auto [a, b] = network_->link_indices()[j];
    double flow = link_heat_flow(network_->links()[j], ws.temps[a], ws.temps[b]);
    dy[nd + m + 2 + j] = flow;
    ws.net_flow[a] -= flow;
    ws.net_flow[b] += flow;
    if (a == boundary) boundary_flow -= flow;
    if (b == boundary) boundary_flow += flow;
  }

  double source_rate = 0.0;
  for (std::size_t i = 0; i < nd; ++i) {
    std::size_t node = dynamic_[i];
    source_rate += ws.node_heat[node];
    dy[i] = (ws.net_flow[node] + ws.node_heat[node]) / network_->nodes()[node].heat_capacity;
  }
  dy[nd + m] = source_rate;
  dy[nd + m + 1] = boundary_flow;
}

void TransientSolver::check_physical(double t, std::span<const double> y) const {
  for (std::size_t i = 0; i < dynamic_.size(); ++i) {
    double T = y[i];
    if (!std::isfinite(T) || T <= 0.0)
      throw SolverError("solver diverged: node '" + network_->nodes()[dynamic_[i]].id +
                        "' reached " + std::to_string(T) + " K at t = " + std::to_string(t) +
                        " s");
  }
}

void TransientSolver::implicit_euler_step(double t, double dt, std::span<double> y,
                                          const EnvironmentProfile& environment,
                                          std::span<const double> injected_heat_W,
                                          CoupledSource* source, Workspace& ws) const {
  const std::size_t nd = dynamic_.size();
  const std::size_t m = source ? source->state_size() : 0;
  const std::size_t nu = nd + m;       // unknowns of the implicit solve
  const std::size_t ny = y.size();

  std::vector<double> y_work(y.begin(), y.end());
  std::vector<double> f(ny), f_pert(ny);
  std::vector<double> jac(nu * nu), rhs(nu);

  // Evaluates the first nu derivative components at (t, u), reusing the
  // integral slots of y_work as scratch (they do not feed back into rates).
  auto eval = [&](double at, const std::vector<double>& u, std::vector<double>& out) {
    std::copy(u.begin(), u.begin() + nu, y_work.begin());
    derivative(at, y_work, out, environment, injected_heat_W, source, ws);
  };

  double remaining = dt;
  double sub = dt;
  double t_local = t;
  std::vector<double> u0(nu), u(nu), u_try(nu);
  std::copy(y.begin(), y.begin() + nu, u0.begin());

  while (remaining > 1e-14 * dt) {
    sub = std::min(sub, remaining);
    if (sub < 1e-12 * std::max(1.0, dt))
      throw SolverError("implicit fallback stalled at t = " + std::to_string(t_local) + " s");

    double t_next = t_local + sub;
    u = u0;
    bool converged = false;
    for (int it = 0; it < 30 && !converged; ++it) {
      eval(t_next, u, f);
      if (!all_finite(std::span<const double>(f.data(), nu))) break;
      // F(u) = u - u0 - sub * f(t_next, u); Jacobian by forward differences.
      for (std::size_t i = 0; i < nu; ++i) rhs[i] = -(u[i] - u0[i] - sub * f[i]);
      double fnorm = 0.0;
      for (std::size_t i = 0; i < nu; ++i) fnorm = std::max(fnorm, std::abs(rhs[i]));

      for (std::size_t j = 0; j < nu; ++j) {
        double eps = 1e-7 * std::max(1.0, std::abs(u[j]));
        u_try = u;
        u_try[j] += eps;
        eval(t_next, u_try, f_pert);
        for (std::size_t i = 0; i < nu; ++i) {
          double dfij = (f_pert[i] - f[i]) / eps;
          jac[i * nu + j] = (i == j ? 1.0 : 0.0) - sub * dfij;
        }
      }
      try {
        solve_dense(jac, rhs, nu, fnorm);
      } catch (const NumericError&) {
        break;
      }
      double step_norm = 0.0, u_norm = 0.0;
      for (std::size_t i = 0; i < nu; ++i) {
        u[i] += rhs[i];
        step_norm = std::max(step_norm, std::abs(rhs[i]));
        u_norm = std::max(u_norm, std::abs(u[i]));
      }
      bool physical = true;
      for (std::size_t i = 0; i < nd; ++i)
        if (!std::isfinite(u[i]) || u[i] <= 0.0) physical = false;
      if (!physical) break;
      if (step_norm < 1e-11 * std::max(1.0, u_norm)) converged = true;
    }

    if (!converged) {
      sub *= 0.5;
      continue;
    }

    // Commit the substep; integrals advance with the same backward-Euler
    // quadrature (rates at the accepted endpoint), keeping the energy audit
    // consistent with the temperature update.
    eval(t_next, u, f);
    std::copy(u.begin(), u.end(), y.begin());
    for (std::size_t i = nu; i < ny; ++i) y[i] += sub * f[i];
    std::copy(u.begin(), u.end(), u0.begin());
    t_local = t_next;
    remaining -= sub;
    sub = std::min(sub * 2.0, remaining > 0 ? remaining : sub);
    if (remaining <= 0) break;
  }
}

void TransientSolver::advance(NetworkState& state, double dt,
                              const EnvironmentProfile& environment,
                              std::span<const double> injected_heat_W, CoupledSource* source,
                              std::span<double> coupled_state) const {
  if (dt < 0) throw InvalidInput("solver: frame length must be non-negative");
  if (!injected_heat_W.empty() && injected_heat_W.size() != network_->node_count())
    throw InvalidInput("solver: injected heat vector size mismatch");
  const std::size_t m = source ? source->state_size() : 0;
  if (coupled_state.size() != m) throw InvalidInput("solver: coupled state size mismatch");
  if (state.temperatures.size() != network_->node_count() ||
      state.link_heat.size() != network_->links().size())
    throw InvalidInput("solver: state does not match the network");

  const double t_end = state.time + dt;
  if (dt == 0) {
    state.temperatures[network_->boundary_index()] = environment.ambient_at(t_end);
    return;
  }

  const std::size_t nd = dynamic_.size();
  const std::size_t n_links = network_->links().size();
  const std::size_t ny = nd + m + 2 + n_links;

  Workspace ws;
  ws.temps.resize(network_->node_count());
  ws.node_heat.resize(network_->node_count());
  ws.net_flow.resize(network_->node_count());

  std::vector<double> y(ny);
  for (std::size_t i = 0; i < nd; ++i) y[i] = state.temperatures[dynamic_[i]];
  for (std::size_t i = 0; i < m; ++i) y[nd + i] = coupled_state[i];
  y[nd + m] = state.source_heat;
  y[nd + m + 1] = state.boundary_heat;
  for (std::size_t j = 0; j < n_links; ++j) y[nd + m + 2 + j] = state.link_heat[j];

  std::vector<double> k[7];
  for (auto& stage : k) stage.resize(ny);
  std::vector<double> y_stage(ny), y_next(ny);

  double h = std::min(state.step_hint, dt);
  if (options_.max_step > 0) h = std::min(h, options_.max_step);
  if (!(h > 0)) h = std::min(options_.initial_step, dt);

  double t = state.time;
  int rejects = 0;
  bool fsal_valid = false;

  while (t < t_end) {
    bool clamped = h >= t_end - t;
    double h_try = clamped ? t_end - t : h;
    if (h_try < 1e-12 * std::max(1.0, std::abs(t)))
      throw SolverError("step size collapsed at t = " + std::to_string(t) + " s");

    if (!fsal_valid) {
      derivative(t, y, k[0], environment, injected_heat_W, source, ws);
      fsal_valid = true;
    }

    auto combine = [&](std::span<const double> weights, int n_stages) {
      for (std::size_t i = 0; i < ny; ++i) {
        double acc = 0.0;
        for (int s = 0; s < n_stages; ++s) acc += weights[s] * k[s][i];
        y_stage[i] = y[i] + h_try * acc;
      }
    };

    combine(kA2, 1);
    derivative(t + kC[1] * h_try, y_stage, k[1], environment, injected_heat_W, source, ws);
    combine(kA3, 2);
    derivative(t + kC[2] * h_try, y_stage, k[2], environment, injected_heat_W, source, ws);
    combine(kA4, 3);
    derivative(t + kC[3] * h_try, y_stage, k[3], environment, injected_heat_W, source, ws);
    combine(kA5, 4);
    derivative(t + kC[4] * h_try, y_stage, k[4], environment, injected_heat_W, source, ws);
    combine(kA6, 5);
    derivative(t + kC[5] * h_try, y_stage, k[5], environment, injected_heat_W, source, ws);
    combine(kB, 6);  // fifth-order solution (b7 = 0)
    y_next = y_stage;
    derivative(t + h_try, y_next, k[6], environment, injected_heat_W, source, ws);

    // Embedded error over temperatures and coupled state only; the heat
    // tallies are passive integrals.
    double err = 0.0;
    if (all_finite(y_next)) {
      for (std::size_t i = 0; i < nd + m; ++i) {
        double delta = 0.0;
        for (int s = 0; s < 7; ++s) delta += kE[s] * k[s][i];
        delta *= h_try;
        double atol = i < nd ? options_.abs_tol : 1e-9;
        double sc = atol + options_.rel_tol * std::max(std::abs(y[i]), std::abs(y_next[i]));
        err += (delta / sc) * (delta / sc);
      }
      err = std::sqrt(err / static_cast<double>(nd + m));
    } else {
      err = 1e10;
    }

    if (err <= 1.0) {
      check_physical(t + h_try, y_next);
      y.swap(y_next);
      k[0].swap(k[6]);  // first-same-as-last
      t = clamped ? t_end : t + h_try;
      rejects = 0;
      double factor = std::clamp(err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0, 0.2, 5.0);
      // Grow from the full proposal, not the frame-end remainder, so the
      // carried hint is not destroyed by landing on a frame boundary.
      h = clamped ? std::max(h, h_try * factor) : h_try * factor;
      if (options_.max_step > 0) h = std::min(h, options_.max_step);
    } else {
      ++rejects;
      if (rejects > options_.max_consecutive_rejects) {
        implicit_euler_step(t, h_try, y, environment, injected_heat_W, source, ws);
        check_physical(t + h_try, y);
        t = clamped ? t_end : t + h_try;
        rejects = 0;
        fsal_valid = false;
        continue;
      }
      h = h_try * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }

  for (std::size_t i = 0; i < nd; ++i) state.temperatures[dynamic_[i]] = y[i];
  state.temperatures[network_->boundary_index()] = environment.ambient_at(t_end);
  for (std::size_t i = 0; i < m; ++i) coupled_state[i] = y[nd + i];
  state.source_heat = y[nd + m];
  state.boundary_heat = y[nd + m + 1];
  for (std::size_t j = 0; j < n_links; ++j) state.link_heat[j] = y[nd + m + 2 + j];
  state.time = t_end;
  state.step_hint = h;
}

namespace {

// Newton iteration on the nodal heat balance with selected nodes held fixed.
std::vector<double> solve_steady(const Network& network,
                                 const std::vector<std::pair<std::size_t, double>>& fixed,
                                 std::span<const double> extra_heat_W,
                                 const SteadyOptions& options) {
  const auto& nodes = network.nodes();
  const std::size_t n = nodes.size();
  if (!extra_heat_W.empty() && extra_heat_W.size() != n)
    throw InvalidInput("steady_state: extra heat vector size mismatch");

  std::vector<bool> is_fixed(n, false);
  std::vector<double> temps(n, 0.0);
  for (auto [idx, T] : fixed) {
    is_fixed[idx] = true;
    temps[idx] = T;
  }
  std::vector<std::size_t> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_fixed[i]) unknowns.push_back(i);
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (std::size_t u = 0; u < unknowns.size(); ++u) slot[unknowns[u]] = u;

  double guess = fixed.empty() ? 280.0 : fixed.front().second;
  for (std::size_t i : unknowns) temps[i] = guess + 1.0;

  const std::size_t nu = unknowns.size();
  auto residual = [&](const std::vector<double>& T, std::vector<double>& F) {
    for (std::size_t u = 0; u < nu; ++u) {
      std::size_t i = unknowns[u];
      F[u] = network.net_flow_into(i, T);
      if (!extra_heat_W.empty()) F[u] += extra_heat_W[i];
    }
  };
  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  std::vector<double> F(nu), F_try(nu), step(nu), jac(nu * nu), temps_try(n);
  residual(temps, F);
  double fnorm = inf_norm(F);

  for (int it = 0; it < options.max_iterations; ++it) {
    if (fnorm < options.residual_tol) return temps;

    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t j = 0; j < network.links().size(); ++j) {
      auto [a, b] = network.link_indices()[j];
      const ThermalLink& link = network.links()[j];
      double ga, gb;  // d(flow)/dTa and -d(flow)/dTb, both non-negative
      if (link.kind == LinkKind::Conduction) {
        ga = gb = 1.0 / link.resistance;
      } else {
        ga = 4.0 * link.coefficient * temps[a] * temps[a] * temps[a];
        gb = 4.0 * link.coefficient * temps[b] * temps[b] * temps[b];
      }
      std::size_t ua = slot[a], ub = slot[b];
      if (ua != static_cast<std::size_t>(-1)) {
        jac[ua * nu + ua] -= ga;
        if (ub != static_cast<std::size_t>(-1)) jac[ua * nu + ub] += gb;
      }
      if (ub != static_cast<std::size_t>(-1)) {
        jac[ub * nu + ub] -= gb;
        if (ua != static_cast<std::size_t>(-1)) jac[ub * nu + ua] += ga;
      }
    }

    step = F;
    for (double& v : step) v = -v;
    solve_dense(jac, step, nu, fnorm);

    // Backtracking damping: insist on residual decrease and physical temps.
    double tau = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      temps_try = temps;
      bool physical = true;
      for (std::size_t u = 0; u < nu; ++u) {
        temps_try[unknowns[u]] += tau * step[u];
        if (!(temps_try[unknowns[u]] > 1.0) || !std::isfinite(temps_try[unknowns[u]]))
          physical = false;
      }
      if (physical) {
        residual(temps_try, F_try);
        double fnorm_try = inf_norm(F_try);
        if (fnorm_try < fnorm * (1.0 - 1e-4 * tau) || fnorm_try < options.residual_tol) {
          temps.swap(temps_try);
          F.swap(F_try);
          fnorm = fnorm_try;
          accepted = true;
          break;
        }
      }
      tau *= 0.5;
    }
    if (!accepted)
      throw NumericError("steady-state Newton stalled (residual " + std::to_string(fnorm) + " W)",
                         fnorm);
  }
  if (fnorm < options.residual_tol) return temps;
  throw NumericError("steady-state iteration did not converge (residual " +
                         std::to_string(fnorm) + " W)",
                     fnorm);
}

}  // namespace

std::vector<double> steady_state(const Network& network, double boundary_temperature_K,
                                 std::span<const double> extra_heat_W,
                                 const SteadyOptions& options) {
  if (!(boundary_temperature_K > 0))
    throw InvalidInput("steady_state: boundary temperature must be positive");
  return solve_steady(network, {{network.boundary_index(), boundary_temperature_K}}, extra_heat_W,
                      options);
}

double steady_hold_power(const Network& network, double boundary_temperature_K,
                         std::string_view node_id, double hold_K, const SteadyOptions& options) {
  if (!(boundary_temperature_K > 0) || !(hold_K > 0))
    throw InvalidInput("steady_hold_power: temperatures must be positive");
  std::size_t held = network.index_of(node_id);
  if (held == network.boundary_index())
    throw InvalidInput("steady_hold_power: cannot hold the boundary node");
  auto temps = solve_steady(
      network, {{network.boundary_index(), boundary_temperature_K}, {held, hold_K}}, {}, options);
  return -network.net_flow_into(held, temps);
}

}  // namespace tessim
