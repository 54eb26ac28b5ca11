#pragma once

#include <vector>

#include "tsu/model.hpp"

namespace tsu {

struct StepperConfig {
    double ds = 1e-3;             // base step in rescaled time s
    double cfl = 0.4;             // Courant number for the adaptive step
    double t_end = 1.0;           // physical end time
    int snapshot_stride = 100;    // steps between stored snapshots
    double filter_alpha = 36.0;   // exponential filter strength (order 16)
    double gradient_cap = 1e4;    // blow-up flag threshold on |du/dx|_inf
    std::vector<double> snapshot_times;  // physical times that must be hit exactly
};

struct StepRecord {
    double t = 0.0;
    double s = 0.0;
    double linf_ux = 0.0;
    double linf_psix = 0.0;
    double min_ux = 0.0;
    double argmin_x = 0.0;
    double mass = 0.0;
    double momentum = 0.0;
};

struct Snapshot {
    double t = 0.0;
    double s = 0.0;
    PhysState state;
};

struct Trajectory {
    FracOrder beta{1.0};
    double gradient_cap = 1e4;
    bool truncated = false;   // blow-up flag tripped before t_end
    bool resolved = true;     // initial spectrum tail below 1e-10 of its peak
    std::vector<StepRecord> series;
    std::vector<Snapshot> snapshots;
};

/// One classical RK4 update of ds in rescaled time, exponential filter
/// applied once at the end.
PhysState rk4_step(const PhysState& state, const ModelParams& params, double ds,
                   const StepperConfig& config);

/// Method-of-lines integration in s = t^beta/beta from s = 0 until t_end or
/// the blow-up flag.  Snapshots land exactly on the requested physical times.
/// A truncated run returns the partial trajectory; it is not an error.
Trajectory simulate(const PhysState& initial, const ModelParams& params,
                    const StepperConfig& config);

/// Index of the snapshot whose rescaled time matches s (1e-9 tolerance);
/// -1 when absent.
int find_snapshot(const Trajectory& traj, double s);

}  // namespace tsu
