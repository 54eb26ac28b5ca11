#include "tsu/solver_direct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsu/spectral.hpp"

namespace tsu {

namespace {

void axpy(Field& y, double a, const Field& x) {
    for (int i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

PhysState rk4_advance(const PhysState& y, const ModelParams& params, double ds,
                      SpectralKit& kit, double filter_alpha) {
    const PhysRates k1 = rhs_physical(y, params);

    PhysState y2{y.u, y.psi};
    axpy(y2.u, 0.5 * ds, k1.du);
    axpy(y2.psi, 0.5 * ds, k1.dpsi);
    const PhysRates k2 = rhs_physical(y2, params);

    PhysState y3{y.u, y.psi};
    axpy(y3.u, 0.5 * ds, k2.du);
    axpy(y3.psi, 0.5 * ds, k2.dpsi);
    const PhysRates k3 = rhs_physical(y3, params);

    PhysState y4{y.u, y.psi};
    axpy(y4.u, ds, k3.du);
    axpy(y4.psi, ds, k3.dpsi);
    const PhysRates k4 = rhs_physical(y4, params);

    PhysState out{y.u, y.psi};
    const double w = ds / 6.0;
    for (int i = 0; i < out.u.size(); ++i) {
        out.u[i] += w * (k1.du[i] + 2.0 * k2.du[i] + 2.0 * k3.du[i] + k4.du[i]);
        out.psi[i] += w * (k1.dpsi[i] + 2.0 * k2.dpsi[i] + 2.0 * k3.dpsi[i] + k4.dpsi[i]);
    }
    out.u = kit.exp_filter(out.u, filter_alpha);
    out.psi = kit.exp_filter(out.psi, filter_alpha);
    return out;
}

double max_wave_speed(const PhysState& y, const ModelParams& params) {
    double s = 0.0;
    for (int i = 0; i < y.u.size(); ++i) {
        const double h = std::max(y.psi[i] + params.theta[i], 0.0);
        s = std::max(s, std::abs(y.u[i]) + std::sqrt(params.g * h));
    }
    return s;
}

StepRecord make_record(const PhysState& y, const ModelParams& params, double t, double s,
                       SpectralKit& kit) {
    StepRecord r;
    r.t = t;
    r.s = s;
    const Field ux = kit.derivative(y.u);
    const Field psix = kit.derivative(y.psi);
    r.linf_ux = linf_norm(ux);
    r.linf_psix = linf_norm(psix);
    int arg = 0;
    double mn = ux[0];
    for (int i = 1; i < ux.size(); ++i) {
        if (ux[i] < mn) {
            mn = ux[i];
            arg = i;
        }
    }
    r.min_ux = mn;
    r.argmin_x = y.u.grid->point(arg);
    const Conserved c = conserved_quantities(y, params);
    r.mass = c.mass;
    r.momentum = c.momentum;
    return r;
}

}  // namespace

PhysState rk4_step(const PhysState& state, const ModelParams& params, double ds,
                   const StepperConfig& config) {
    require_finite(state.u, "rk4_step(u)");
    require_finite(state.psi, "rk4_step(psi)");
    if (!(ds > 0.0)) throw std::invalid_argument("rk4_step: ds must be positive");
    auto& kit = kit_for(state.u.grid);
    return rk4_advance(state, params, ds, kit, config.filter_alpha);
}

Trajectory simulate(const PhysState& initial, const ModelParams& params,
                    const StepperConfig& config) {
    require_finite(initial.u, "simulate(u0)");
    require_finite(initial.psi, "simulate(psi0)");
    require_same_grid(initial.u, params.theta, "simulate");
    if (!(config.ds > 0.0)) throw std::invalid_argument("simulate: ds must be positive");
    if (!(config.cfl > 0.0 && config.cfl <= 1.0)) {
        throw std::invalid_argument("simulate: cfl must lie in (0,1]");
    }
    if (!(config.t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be positive");

    auto& kit = kit_for(initial.u.grid);
    const double dx = initial.u.grid->dx();

    Trajectory traj;
    traj.beta = params.beta;
    traj.gradient_cap = config.gradient_cap;
    traj.resolved = kit.spectrum_tail_fraction(initial.u) < 1e-10 &&
                    kit.spectrum_tail_fraction(initial.psi) < 1e-10;

    const double s_end = time_forward_map(config.t_end, params.beta);
    std::vector<double> targets;
    for (double t : config.snapshot_times) {
        if (t > 0.0 && t <= config.t_end) targets.push_back(time_forward_map(t, params.beta));
    }
    targets.push_back(s_end);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    PhysState y{initial.u, initial.psi};
    double s = 0.0;
    size_t next_target = 0;
    long step_count = 0;

    auto push_snapshot = [&](double t_now, double s_now) {
        traj.snapshots.push_back(Snapshot{t_now, s_now, y});
    };

    StepRecord rec = make_record(y, params, 0.0, 0.0, kit);
    traj.series.push_back(rec);
    push_snapshot(0.0, 0.0);
    if (rec.linf_ux > config.gradient_cap) {
        traj.truncated = true;
        return traj;
    }

    while (s < s_end - 1e-15 * std::max(1.0, s_end)) {
        double ds = std::min(config.ds, config.cfl * dx / std::max(max_wave_speed(y, params), 1e-12));
        bool hit_target = false;
        if (next_target < targets.size() && s + ds >= targets[next_target] - 1e-14) {
            ds = targets[next_target] - s;
            hit_target = true;
        }
        if (!(ds > 0.0)) {
            // target already reached by roundoff; advance the target pointer
            ++next_target;
            continue;
        }

        y = rk4_advance(y, params, ds, kit, config.filter_alpha);
        s += ds;
        ++step_count;
        const double t = time_inverse_map(s, params.beta);

        const bool finite = all_finite(y.u) && all_finite(y.psi);
        rec = finite ? make_record(y, params, t, s, kit) : StepRecord{t, s, 0, 0, 0, 0, 0, 0};
        if (finite) traj.series.push_back(rec);

        if (!finite || rec.linf_ux > config.gradient_cap) {
            traj.truncated = true;
            if (finite) push_snapshot(t, s);
            return traj;
        }

        if (hit_target) {
            push_snapshot(t, s);
            ++next_target;
        } else if (config.snapshot_stride > 0 && step_count % config.snapshot_stride == 0) {
            push_snapshot(t, s);
        }
    }
    // final state is always a snapshot (the s_end target covers the normal
    // exit; guard against a stride push at the same instant)
    if (traj.snapshots.empty() || traj.snapshots.back().s < s - 1e-15) {
        push_snapshot(time_inverse_map(s, params.beta), s);
    }
    return traj;
}

int find_snapshot(const Trajectory& traj, double s) {
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        if (std::abs(traj.snapshots[i].s - s) <= 1e-9 * std::max(1.0, std::abs(s))) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace tsu
