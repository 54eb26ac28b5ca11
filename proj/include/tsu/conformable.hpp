#pragma once

#include <vector>

namespace tsu {

/// Fractional order beta in (0, 1].
struct FracOrder {
    double beta;
    explicit FracOrder(double b);
};

struct TimeSeries {
    std::vector<double> times;   // nonnegative, strictly increasing
    std::vector<double> values;
};

void validate_time_series(const TimeSeries& s, const char* what);

/// Conformable derivative of sampled data: t^(1-beta) f'(t) with centered
/// differences (one-sided at the ends).  A t = 0 sample gets the limit value;
/// an apparently divergent limit is rejected.
TimeSeries conformable_derivative(const TimeSeries& s, FracOrder beta);

/// Running integral of x^(beta-1) f(x) from 0, exact for piecewise-linear f
/// (each cell uses the closed-form moments of the singular weight).
TimeSeries fractional_integral(const TimeSeries& s, FracOrder beta);

/// s = t^beta / beta and its inverse t = (beta s)^(1/beta).  The order-beta
/// conformable evolution equals classical evolution in s.
double time_forward_map(double t, FracOrder beta);
double time_inverse_map(double s, FracOrder beta);

struct RiccatiBounds {
    double t_paper;  // (-1/u0x0)^(1/beta), the printed bound
    double t_sharp;  // (-beta/u0x0)^(1/beta), from integrating the inequality exactly
};

/// Blow-up time bounds from the pointwise Riccati argument at the symmetry
/// point.  Requires u0x0 < 0.
RiccatiBounds riccati_blowup_bounds(double u0x0, FracOrder beta);

/// min{ beta^(1/beta), [beta ln2 / (2 C0 (|U0| + C0 |theta|))]^(1/beta) }.
double lifespan_estimate(double norm_u0, double norm_theta, FracOrder beta, double c0);

}  // namespace tsu
