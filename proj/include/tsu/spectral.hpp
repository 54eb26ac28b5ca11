#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tsu/grid.hpp"

namespace tsu {

/// FFT engine bound to one grid.  Owns its FFTW plans and aligned buffers,
/// so a single instance is not safe for concurrent use; distinct instances
/// are independent.  Plan creation is serialized internally (FFTW rule).
class SpectralKit {
public:
    explicit SpectralKit(GridPtr grid);
    ~SpectralKit();

    SpectralKit(const SpectralKit&) = delete;
    SpectralKit& operator=(const SpectralKit&) = delete;

    const GridPtr& grid() const { return grid_; }

    std::vector<std::complex<double>> forward(const Field& f);
    Field inverse(const std::vector<std::complex<double>>& spec);

    /// d/dx by ik multiplication; the unpaired mode -N/2 is zeroed.
    Field derivative(const Field& f);

    /// Pointwise spectral multiplier; table[m] applies to |k_m|, m = 0..N/2.
    Field apply_multiplier(const Field& f, std::span<const double> table);

    /// 2/3-rule truncation (zero modes with m > N/3).
    Field dealias(const Field& f);
    /// dealias + d/dx in a single transform pair.
    Field dealias_derivative(const Field& f);

    /// exp(-alpha (m/(N/2))^16) smoothing of the top modes.
    Field exp_filter(const Field& f, double alpha);

    /// max |F_m| over the top 10% of modes divided by max |F_m| overall.
    double spectrum_tail_fraction(const Field& f);

private:
    struct Impl;
    GridPtr grid_;
    Impl* impl_;
};

/// Thread-local kit cache keyed by (N, L); cheap repeated access for the
/// pure free functions below.
SpectralKit& kit_for(const GridPtr& grid);

Field spectral_derivative(const Field& f);

}  // namespace tsu
