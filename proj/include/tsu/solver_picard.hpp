#pragma once

#include <utility>
#include <vector>

#include "tsu/solver_direct.hpp"

namespace tsu {

struct PicardConfig {
    int n_max = 12;
    double tol_l2 = 1e-6;   // Cauchy stopping tolerance, sup-in-time L2
    double T = 0.1;         // horizon in rescaled time s
    StepperConfig inner;    // inner linear-solver stepping
    double c0 = 1.0;        // constant in the lifespan gate / uniform bound
};

struct SymSnapshot {
    double s = 0.0;
    SymState state;
};

using SymTrajectory = std::vector<SymSnapshot>;

struct IterationReport {
    // entry n describes iterate U^(n+1)
    std::vector<double> besov_sup;         // sup_t |U^(n+1)|_B(3/2,1)
    std::vector<double> cauchy_increment;  // V_(n+1) = sup_t ||U^(n+1) - U^n||_L2
    std::vector<double> init_tail;         // ||Delta_n U0||_L2
    bool converged = false;
    int n_iterations = 0;
    bool beyond_lifespan_gate = false;  // T exceeded the §4-style gate (warning only)
    double residual_sup_l2 = 0.0;       // nonlinear residual of the last iterate
    double residual_bound = 0.0;        // what that residual should stay under
};

/// Solves the frozen-coefficient linear symmetric system
///   dW/ds + A(Uhat(s)) dW/dx = (forcing_u, forcing_v),  W(0) = init,
/// with the coefficient trajectory interpolated linearly in s.  Fixed step
/// T/n_steps; snapshots every inner.snapshot_stride steps on a step grid
/// shared by every call with the same (T, inner).
SymTrajectory linear_transport_solve(const SymTrajectory& coeffs, const Field& forcing_u,
                                     const Field& forcing_v, const SymState& init,
                                     const ModelParams& params, const StepperConfig& inner,
                                     double T);

/// The constructive iteration: U^0 = 0 and U^(n+1) solves the linear system
/// with coefficients A(U^n), initial data S_(n+1) U0 and forcing (theta_x, 0).
/// Stops when V_(n+1) < tol_l2 or at n_max ("not converged" verdict, not an
/// error).  Requires min(v^2/4) >= 1e-3 (symmetric-form admissibility).
std::pair<SymTrajectory, IterationReport> picard_solve(const SymState& initial,
                                                       const ModelParams& params,
                                                       const PicardConfig& config);

struct BoundCheck {
    bool ok = false;
    double margin = 0.0;  // cap minus the worst sup norm (negative = violated)
};

/// Checks every iterate against 2(|U0|_B + C0 |theta|_B).
BoundCheck uniform_bound_check(const IterationReport& report, double norm_u0_besov,
                               double norm_theta_besov, double c0);

}  // namespace tsu
