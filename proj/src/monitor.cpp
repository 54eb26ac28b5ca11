#include "tsu/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsu/spectral.hpp"

namespace tsu {

TimeSeries criterion_integral(const Trajectory& traj) {
    if (traj.series.empty()) {
        throw std::invalid_argument("criterion_integral: empty trajectory");
    }
    TimeSeries out;
    out.times.reserve(traj.series.size());
    out.values.reserve(traj.series.size());
    double acc = 0.0;
    double prev_t = traj.series.front().t;
    double prev_g = std::max(traj.series.front().linf_ux, traj.series.front().linf_psix);
    out.times.push_back(prev_t);
    out.values.push_back(0.0);
    for (size_t i = 1; i < traj.series.size(); ++i) {
        const double t = traj.series[i].t;
        const double g = std::max(traj.series[i].linf_ux, traj.series[i].linf_psix);
        acc += 0.5 * (g + prev_g) * (t - prev_t);
        out.times.push_back(t);
        out.values.push_back(acc);
        prev_t = t;
        prev_g = g;
    }
    return out;
}

namespace {

// Least-squares fit of 1/min_ux against t over the last decade of gradient
// growth; the Riccati profile makes the reciprocal linear with root t_c.
// The window floor also excludes the plateau near the initial gradient level,
// so "growth" starts once the gradient has tripled.
bool fit_pole_time(const Trajectory& traj, double* t_c) {
    std::vector<double> ts, ys;
    const double g_end = -traj.series.back().min_ux;
    if (!(g_end > 0.0)) return false;
    const double g0 = std::max(-traj.series.front().min_ux, 0.0);
    const double floor = std::max(g_end / 10.0, 3.0 * g0);
    for (const auto& r : traj.series) {
        if (r.min_ux < 0.0 && -r.min_ux >= floor) {
            ts.push_back(r.t);
            ys.push_back(1.0 / r.min_ux);
        }
    }
    if (ts.size() < 3) return false;
    const double n = static_cast<double>(ts.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double denom = n * stt - st * st;
    if (denom <= 0.0) return false;
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;
    if (!(slope > 0.0)) return false;  // reciprocal must rise toward 0
    *t_c = -intercept / slope;
    return std::isfinite(*t_c) && *t_c > 0.0;
}

// Minimizer of du/dx in a snapshot; symmetric ties resolve to the largest x.
double argmin_gradient(const Snapshot& snap) {
    const Field ux = kit_for(snap.state.u.grid).derivative(snap.state.u);
    double mn = ux[0];
    for (int i = 1; i < ux.size(); ++i) mn = std::min(mn, ux[i]);
    const double tol = 1e-9 * std::max(1.0, std::abs(mn));
    double best_x = ux.grid->point(0);
    bool found = false;
    for (int i = 0; i < ux.size(); ++i) {
        if (ux[i] <= mn + tol) {
            const double x = ux.grid->point(i);
            if (!found || x > best_x) best_x = x;
            found = true;
        }
    }
    return best_x;
}

}  // namespace

BlowupReport detect_blowup(const std::vector<Trajectory>& trajectories) {
    if (trajectories.empty()) {
        throw std::invalid_argument("detect_blowup: no trajectories");
    }
    for (const auto& t : trajectories) {
        if (t.series.empty() || t.snapshots.empty()) {
            throw std::invalid_argument("detect_blowup: empty trajectory");
        }
    }

    BlowupReport report;
    size_t finest = 0;
    for (size_t i = 1; i < trajectories.size(); ++i) {
        if (trajectories[i].snapshots.front().state.u.size() >
            trajectories[finest].snapshots.front().state.u.size()) {
            finest = i;
        }
    }
    report.criterion = criterion_integral(trajectories[finest]);
    report.seed_x = argmin_gradient(trajectories[finest].snapshots.front());
    report.x_star = argmin_gradient(trajectories[finest].snapshots.back());

    bool all_truncated = true;
    bool all_fit = true;
    for (const auto& traj : trajectories) {
        all_truncated = all_truncated && traj.truncated;
        double t_c = 0.0;
        if (traj.truncated && fit_pole_time(traj, &t_c)) {
            report.per_resolution_t_star.push_back(t_c);
        } else {
            all_fit = false;
        }
    }

    if (!report.per_resolution_t_star.empty()) {
        double lo = report.per_resolution_t_star.front();
        double hi = lo, sum = 0.0;
        for (double t : report.per_resolution_t_star) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
            sum += t;
        }
        report.t_star = sum / static_cast<double>(report.per_resolution_t_star.size());
        report.t_star_spread = hi - lo;
        report.detected = all_truncated && all_fit &&
                          report.t_star_spread <= 0.05 * report.t_star;
    }
    return report;
}

BoundVerdicts reconcile_bounds(BlowupReport& report, double u0x_at_x0, FracOrder beta,
                               double norm_u0_besov, double norm_theta_besov, double c0) {
    if (!report.detected) {
        throw std::invalid_argument("reconcile_bounds: report has no detection");
    }
    report.u0x_at_center = u0x_at_x0;
    const RiccatiBounds rb = riccati_blowup_bounds(u0x_at_x0, beta);
    report.t_paper = rb.t_paper;
    report.t_sharp = rb.t_sharp;
    report.lifespan_gate = lifespan_estimate(norm_u0_besov, norm_theta_besov, beta, c0);

    const double tol = std::max(report.t_star_spread, 0.02 * report.t_star);
    BoundVerdicts v;
    v.paper_bound_ok = report.t_star <= report.t_paper + tol;
    if (report.t_star > report.t_sharp + tol) {
        v.sharp_side = 1;
    } else if (report.t_star < report.t_sharp - tol) {
        v.sharp_side = -1;
    } else {
        v.sharp_side = 0;
    }
    v.gate_ok = report.t_star >= report.lifespan_gate - tol;
    return v;
}

}  // namespace tsu
