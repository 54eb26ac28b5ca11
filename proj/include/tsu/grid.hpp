#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace tsu {

/// Uniform periodic sample grid on [-L, L).  Sample i sits at x_i = -L + i*dx
/// with dx = 2L/N; the Fourier modes are k_m = pi*m/L for m = -N/2 .. N/2-1.
class PeriodicGrid {
public:
    PeriodicGrid(double half_width, int n_points);

    double half_width() const { return half_width_; }
    int size() const { return n_; }
    double dx() const { return 2.0 * half_width_ / n_; }
    double point(int i) const { return -half_width_ + i * dx(); }

    /// k_m for m = 0 .. N/2 (the layout of a real-to-complex transform).
    double mode_wavenumber(int m) const;
    int n_modes() const { return n_ / 2 + 1; }
    double nyquist() const { return mode_wavenumber(n_ / 2); }

    /// Full table k_m, m = -N/2 .. N/2-1, in increasing order.
    std::vector<double> full_wavenumbers() const;

private:
    double half_width_;
    int n_;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

GridPtr make_grid(double half_width, int n_points);

/// A real-valued scalar field sampled on a PeriodicGrid.
struct Field {
    GridPtr grid;
    std::vector<double> v;

    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

Field make_field(const GridPtr& grid, double fill = 0.0);
Field sample(const GridPtr& grid, const std::function<double(double)>& f);

bool all_finite(const Field& f);
/// Throws std::invalid_argument naming the first offending sample.
void require_finite(const Field& f, const char* what);
void require_same_grid(const Field& a, const Field& b, const char* what);

double linf_norm(const Field& f);
double l2_norm(const Field& f);          // sqrt(sum v_i^2 * dx)
double integral(const Field& f);         // box quadrature

/// Relative L2 distance, guarded against zero denominators.
double rel_l2_error(const Field& a, const Field& b);

}  // namespace tsu
