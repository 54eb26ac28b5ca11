#include "tsu/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tsu {

PeriodicGrid::PeriodicGrid(double half_width, int n_points)
    : half_width_(half_width), n_(n_points) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("PeriodicGrid: half width must be positive");
    }
    if (n_points < 8 || n_points % 2 != 0) {
        throw std::invalid_argument("PeriodicGrid: N must be even and >= 8");
    }
}

double PeriodicGrid::mode_wavenumber(int m) const {
    return std::numbers::pi * m / half_width_;
}

std::vector<double> PeriodicGrid::full_wavenumbers() const {
    std::vector<double> k(static_cast<size_t>(n_));
    for (int m = -n_ / 2; m < n_ / 2; ++m) {
        k[static_cast<size_t>(m + n_ / 2)] = mode_wavenumber(m);
    }
    return k;
}

GridPtr make_grid(double half_width, int n_points) {
    return std::make_shared<const PeriodicGrid>(half_width, n_points);
}

Field make_field(const GridPtr& grid, double fill) {
    return Field{grid, std::vector<double>(static_cast<size_t>(grid->size()), fill)};
}

Field sample(const GridPtr& grid, const std::function<double(double)>& f) {
    Field out = make_field(grid);
    for (int i = 0; i < grid->size(); ++i) out[i] = f(grid->point(i));
    return out;
}

bool all_finite(const Field& f) {
    return std::all_of(f.v.begin(), f.v.end(), [](double x) { return std::isfinite(x); });
}

void require_finite(const Field& f, const char* what) {
    for (int i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) {
            std::ostringstream msg;
            msg << what << ": non-finite sample " << f[i] << " at index " << i << " (x = "
                << f.grid->point(i) << ")";
            throw std::invalid_argument(msg.str());
        }
    }
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (a.grid == b.grid) return;
    if (a.grid && b.grid && a.grid->size() == b.grid->size() &&
        a.grid->half_width() == b.grid->half_width()) {
        return;
    }
    throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double l2_norm(const Field& f) {
    double ss = 0.0;
    for (double x : f.v) ss += x * x;
    return std::sqrt(ss * f.grid->dx());
}

double integral(const Field& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s * f.grid->dx();
}

double rel_l2_error(const Field& a, const Field& b) {
    require_same_grid(a, b, "rel_l2_error");
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        diff += d * d;
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double denom = std::sqrt(std::max(na, nb));
    if (denom == 0.0) return std::sqrt(diff);
    return std::sqrt(diff) / denom;
}

}  // namespace tsu
