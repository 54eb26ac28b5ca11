#include "tsu/conformable.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tsu {

FracOrder::FracOrder(double b) : beta(b) {
    if (!(b > 0.0) || !(b <= 1.0)) {
        throw std::invalid_argument("beta must lie in (0,1]");
    }
}

void validate_time_series(const TimeSeries& s, const char* what) {
    if (s.times.size() != s.values.size()) {
        throw std::invalid_argument(std::string(what) + ": times/values length mismatch");
    }
    if (s.times.size() < 2) {
        throw std::invalid_argument(std::string(what) + ": need at least two samples");
    }
    if (s.times.front() < 0.0) {
        throw std::invalid_argument(std::string(what) + ": times must be nonnegative");
    }
    for (size_t i = 1; i < s.times.size(); ++i) {
        if (!(s.times[i] > s.times[i - 1])) {
            std::ostringstream msg;
            msg << what << ": times not strictly increasing at index " << i;
            throw std::invalid_argument(msg.str());
        }
    }
}

namespace {

// Three-point derivative on a possibly nonuniform mesh.
double deriv_at(const TimeSeries& s, size_t i) {
    const auto& t = s.times;
    const auto& f = s.values;
    const size_t n = t.size();
    if (i == 0) {
        const double h1 = t[1] - t[0], h2 = t[2] - t[1];
        return (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) * f[0] +
               ((h1 + h2) / (h1 * h2)) * f[1] - (h1 / (h2 * (h1 + h2))) * f[2];
    }
    if (i == n - 1) {
        const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
        return (h2 / (h1 * (h1 + h2))) * f[n - 3] - ((h1 + h2) / (h1 * h2)) * f[n - 2] +
               ((h1 + 2.0 * h2) / (h2 * (h1 + h2))) * f[n - 1];
    }
    const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
    return (-h2 / (h1 * (h1 + h2))) * f[i - 1] + ((h2 - h1) / (h1 * h2)) * f[i] +
           (h1 / (h2 * (h1 + h2))) * f[i + 1];
}

}  // namespace

TimeSeries conformable_derivative(const TimeSeries& s, FracOrder beta) {
    validate_time_series(s, "conformable_derivative");
    if (s.times.size() < 3) {
        throw std::invalid_argument("conformable_derivative: need at least three samples");
    }
    const double b = beta.beta;
    TimeSeries out;
    out.times = s.times;
    out.values.resize(s.values.size());
    const size_t first = (s.times[0] == 0.0) ? 1 : 0;
    for (size_t i = first; i < s.times.size(); ++i) {
        out.values[i] = std::pow(s.times[i], 1.0 - b) * deriv_at(s, i);
    }
    if (first == 1) {
        // D_t^beta f(0) is the t->0 limit of the interior values.  Compare the
        // first two to spot a divergent limit.
        const double v1 = out.values[1];
        const double v2 = out.values[2];
        const double scale = std::max({std::abs(v1), std::abs(v2), 1e-300});
        if (std::abs(v1) > 1.1 * std::abs(v2) + 1e-12 * scale &&
            std::abs(v1) > 10.0 * std::abs(s.values[0]) + 1e-6) {
            throw std::invalid_argument(
                "conformable_derivative: limit at t = 0 appears divergent");
        }
        // linear extrapolation of the limit
        const double t1 = s.times[1], t2 = s.times[2];
        out.values[0] = v1 - t1 * (v2 - v1) / (t2 - t1);
        if (b == 1.0) out.values[0] = deriv_at(s, 0);
    }
    return out;
}

TimeSeries fractional_integral(const TimeSeries& s, FracOrder beta) {
    validate_time_series(s, "fractional_integral");
    if (s.times.front() != 0.0) {
        throw std::invalid_argument("fractional_integral: times must start at 0");
    }
    if (!std::isfinite(s.values.front())) {
        throw std::invalid_argument("fractional_integral: value at t = 0 must be finite");
    }
    const double b = beta.beta;
    TimeSeries out;
    out.times = s.times;
    out.values.resize(s.values.size());
    out.values[0] = 0.0;
    double acc = 0.0;
    for (size_t i = 1; i < s.times.size(); ++i) {
        const double a = s.times[i - 1], t = s.times[i];
        const double fa = s.values[i - 1], ft = s.values[i];
        // f linear on [a,t]: f(x) = c0 + c1 x; exact moments of x^(beta-1)
        const double c1 = (ft - fa) / (t - a);
        const double c0 = fa - c1 * a;
        const double m0 = (std::pow(t, b) - std::pow(a, b)) / b;
        const double m1 = (std::pow(t, b + 1.0) - std::pow(a, b + 1.0)) / (b + 1.0);
        acc += c0 * m0 + c1 * m1;
        out.values[i] = acc;
    }
    return out;
}

double time_forward_map(double t, FracOrder beta) {
    if (t < 0.0) throw std::invalid_argument("time_forward_map: t must be >= 0");
    return std::pow(t, beta.beta) / beta.beta;
}

double time_inverse_map(double s, FracOrder beta) {
    if (s < 0.0) throw std::invalid_argument("time_inverse_map: s must be >= 0");
    return std::pow(beta.beta * s, 1.0 / beta.beta);
}

RiccatiBounds riccati_blowup_bounds(double u0x0, FracOrder beta) {
    if (!(u0x0 < 0.0)) {
        throw std::invalid_argument(
            "riccati_blowup_bounds: requires u0x(0) < 0 (no blow-up asserted otherwise)");
    }
    RiccatiBounds b;
    b.t_paper = std::pow(-1.0 / u0x0, 1.0 / beta.beta);
    b.t_sharp = std::pow(-beta.beta / u0x0, 1.0 / beta.beta);
    return b;
}

double lifespan_estimate(double norm_u0, double norm_theta, FracOrder beta, double c0) {
    if (norm_u0 < 0.0 || norm_theta < 0.0) {
        throw std::invalid_argument("lifespan_estimate: norms must be nonnegative");
    }
    if (!(c0 > 0.0)) throw std::invalid_argument("lifespan_estimate: C0 must be positive");
    const double b = beta.beta;
    const double cap = std::pow(b, 1.0 / b);
    const double denom = 2.0 * c0 * (norm_u0 + c0 * norm_theta);
    if (denom == 0.0) return cap;
    const double gate = std::pow(b * std::log(2.0) / denom, 1.0 / b);
    return std::min(cap, gate);
}

}  // namespace tsu
