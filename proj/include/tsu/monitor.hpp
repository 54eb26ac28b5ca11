#pragma once

#include <vector>

#include "tsu/conformable.hpp"
#include "tsu/solver_direct.hpp"

namespace tsu {

struct BlowupReport {
    bool detected = false;
    double t_star = 0.0;         // extrapolated physical blow-up time
    double t_star_spread = 0.0;  // max - min across resolutions
    double x_star = 0.0;         // minimizer of du/dx at the last snapshot
    double seed_x = 0.0;         // minimizer of du/dx at t = 0 (diagnostic)
    std::vector<double> per_resolution_t_star;
    TimeSeries criterion;        // I(t) for the finest run
    // theory bounds, filled by reconcile_bounds
    double t_paper = 0.0;
    double t_sharp = 0.0;
    double lifespan_gate = 0.0;
    double u0x_at_center = 0.0;
};

/// Cumulative trapezoid of max(|u_x|_inf, |psi_x|_inf) over physical time.
TimeSeries criterion_integral(const Trajectory& traj);

/// Fits min_x u_x(t) ~ a/(t_c - t) over the last decade of gradient growth
/// of each truncated run and cross-validates t_c across resolutions (5%
/// agreement).  Runs that reached t_end smoothly yield detected = false.
/// For symmetric data the minimizer ties at +-x; ties resolve to the
/// nonnegative side.
BlowupReport detect_blowup(const std::vector<Trajectory>& trajectories);

struct BoundVerdicts {
    bool paper_bound_ok = false;  // t_star <= T_paper (beyond-uncertainty violation is the alarm)
    int sharp_side = 0;           // sign of t_star - T_sharp (0 = within uncertainty)
    bool gate_ok = false;         // t_star >= lifespan gate
};

/// Fills the bound fields of the report and compares the detected time
/// against them.  u0x_at_x0 is the initial slope at the symmetry point.
BoundVerdicts reconcile_bounds(BlowupReport& report, double u0x_at_x0, FracOrder beta,
                               double norm_u0_besov, double norm_theta_besov, double c0);

}  // namespace tsu
