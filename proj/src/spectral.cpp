#include "tsu/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tsu {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct SpectralKit::Impl {
    int n = 0;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<double> k;            // k_m, m = 0..N/2
    std::vector<double> dealias_mask; // 1 for m <= N/3, else 0
    double filter_alpha_cached = -1.0;
    std::vector<double> filter_table;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }
};

SpectralKit::SpectralKit(GridPtr grid) : grid_(std::move(grid)), impl_(new Impl) {
    const int n = grid_->size();
    impl_->n = n;
    impl_->real_buf = static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<size_t>(n)));
    impl_->cplx_buf = static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n / 2 + 1)));
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->real_buf, impl_->cplx_buf, FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft_c2r_1d(n, impl_->cplx_buf, impl_->real_buf, FFTW_ESTIMATE);
    }
    impl_->k.resize(static_cast<size_t>(n / 2 + 1));
    impl_->dealias_mask.resize(static_cast<size_t>(n / 2 + 1));
    for (int m = 0; m <= n / 2; ++m) {
        impl_->k[static_cast<size_t>(m)] = grid_->mode_wavenumber(m);
        impl_->dealias_mask[static_cast<size_t>(m)] = (3 * m <= n) ? 1.0 : 0.0;
    }
}

SpectralKit::~SpectralKit() { delete impl_; }

std::vector<std::complex<double>> SpectralKit::forward(const Field& f) {
    const int n = impl_->n;
    std::memcpy(impl_->real_buf, f.v.data(), sizeof(double) * static_cast<size_t>(n));
    fftw_execute(impl_->fwd);
    std::vector<std::complex<double>> out(static_cast<size_t>(n / 2 + 1));
    for (int m = 0; m <= n / 2; ++m) {
        out[static_cast<size_t>(m)] =
            std::complex<double>(impl_->cplx_buf[m][0], impl_->cplx_buf[m][1]);
    }
    return out;
}

Field SpectralKit::inverse(const std::vector<std::complex<double>>& spec) {
    const int n = impl_->n;
    if (static_cast<int>(spec.size()) != n / 2 + 1) {
        throw std::invalid_argument("SpectralKit::inverse: wrong spectrum size");
    }
    for (int m = 0; m <= n / 2; ++m) {
        impl_->cplx_buf[m][0] = spec[static_cast<size_t>(m)].real();
        impl_->cplx_buf[m][1] = spec[static_cast<size_t>(m)].imag();
    }
    fftw_execute(impl_->bwd);
    Field out = make_field(grid_);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = impl_->real_buf[i] * inv_n;
    return out;
}

Field SpectralKit::derivative(const Field& f) {
    const int n = impl_->n;
    std::memcpy(impl_->real_buf, f.v.data(), sizeof(double) * static_cast<size_t>(n));
    fftw_execute(impl_->fwd);
    for (int m = 0; m < n / 2; ++m) {
        const double re = impl_->cplx_buf[m][0];
        const double im = impl_->cplx_buf[m][1];
        const double km = impl_->k[static_cast<size_t>(m)];
        impl_->cplx_buf[m][0] = -km * im;
        impl_->cplx_buf[m][1] = km * re;
    }
    // unpaired mode -N/2: derivative zeroed (standard pseudospectral convention)
    impl_->cplx_buf[n / 2][0] = 0.0;
    impl_->cplx_buf[n / 2][1] = 0.0;
    fftw_execute(impl_->bwd);
    Field out = make_field(grid_);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = impl_->real_buf[i] * inv_n;
    return out;
}

Field SpectralKit::apply_multiplier(const Field& f, std::span<const double> table) {
    const int n = impl_->n;
    if (static_cast<int>(table.size()) != n / 2 + 1) {
        throw std::invalid_argument("SpectralKit::apply_multiplier: wrong table size");
    }
    std::memcpy(impl_->real_buf, f.v.data(), sizeof(double) * static_cast<size_t>(n));
    fftw_execute(impl_->fwd);
    for (int m = 0; m <= n / 2; ++m) {
        impl_->cplx_buf[m][0] *= table[static_cast<size_t>(m)];
        impl_->cplx_buf[m][1] *= table[static_cast<size_t>(m)];
    }
    fftw_execute(impl_->bwd);
    Field out = make_field(grid_);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = impl_->real_buf[i] * inv_n;
    return out;
}

Field SpectralKit::dealias(const Field& f) {
    return apply_multiplier(f, impl_->dealias_mask);
}

Field SpectralKit::dealias_derivative(const Field& f) {
    const int n = impl_->n;
    std::memcpy(impl_->real_buf, f.v.data(), sizeof(double) * static_cast<size_t>(n));
    fftw_execute(impl_->fwd);
    for (int m = 0; m < n / 2; ++m) {
        const double w = impl_->dealias_mask[static_cast<size_t>(m)] *
                         impl_->k[static_cast<size_t>(m)];
        const double re = impl_->cplx_buf[m][0];
        const double im = impl_->cplx_buf[m][1];
        impl_->cplx_buf[m][0] = -w * im;
        impl_->cplx_buf[m][1] = w * re;
    }
    impl_->cplx_buf[n / 2][0] = 0.0;
    impl_->cplx_buf[n / 2][1] = 0.0;
    fftw_execute(impl_->bwd);
    Field out = make_field(grid_);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) out[i] = impl_->real_buf[i] * inv_n;
    return out;
}

Field SpectralKit::exp_filter(const Field& f, double alpha) {
    const int n = impl_->n;
    if (impl_->filter_alpha_cached != alpha) {
        impl_->filter_table.resize(static_cast<size_t>(n / 2 + 1));
        for (int m = 0; m <= n / 2; ++m) {
            const double r = static_cast<double>(m) / (n / 2);
            impl_->filter_table[static_cast<size_t>(m)] = std::exp(-alpha * std::pow(r, 16.0));
        }
        impl_->filter_alpha_cached = alpha;
    }
    return apply_multiplier(f, impl_->filter_table);
}

double SpectralKit::spectrum_tail_fraction(const Field& f) {
    auto spec = forward(f);
    const int n_modes = static_cast<int>(spec.size());
    double peak = 0.0, tail = 0.0;
    const int tail_start = n_modes - std::max(1, n_modes / 10);
    for (int m = 0; m < n_modes; ++m) {
        const double a = std::abs(spec[static_cast<size_t>(m)]);
        peak = std::max(peak, a);
        if (m >= tail_start) tail = std::max(tail, a);
    }
    if (peak == 0.0) return 0.0;
    return tail / peak;
}

SpectralKit& kit_for(const GridPtr& grid) {
    thread_local std::map<std::pair<int, double>, std::unique_ptr<SpectralKit>> cache;
    const auto key = std::make_pair(grid->size(), grid->half_width());
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<SpectralKit>(grid)).first;
    }
    return *it->second;
}

Field spectral_derivative(const Field& f) {
    require_finite(f, "spectral_derivative");
    return kit_for(f.grid).derivative(f);
}

}  // namespace tsu
