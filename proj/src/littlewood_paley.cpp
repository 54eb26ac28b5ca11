#include "tsu/littlewood_paley.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "tsu/spectral.hpp"

namespace tsu {

namespace {

// exp(-1/t) smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity monotone.
double smooth_step01(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

constexpr double kChiOne = 0.75;       // chi == 1 inside this radius
constexpr double kChiZero = 4.0 / 3.0; // chi == 0 outside this radius

}  // namespace

double lp_chi(double xi) {
    const double r = std::abs(xi);
    if (r <= kChiOne) return 1.0;
    if (r >= kChiZero) return 0.0;
    return smooth_step01((kChiZero - r) / (kChiZero - kChiOne));
}

double lp_phi(double xi) { return lp_chi(xi / 2.0) - lp_chi(xi); }

DyadicPartition build_dyadic_partition(const GridPtr& grid) {
    const double k_max = grid->nyquist();
    int j_max = 0;
    while (k_max > kChiOne * std::ldexp(1.0, j_max + 1)) ++j_max;
    if (j_max < 1) {
        throw std::invalid_argument(
            "build_dyadic_partition: grid too coarse to host j_max >= 1");
    }
    DyadicPartition p;
    p.grid = grid;
    p.j_max = j_max;
    const int n_modes = grid->n_modes();
    p.chi.resize(static_cast<size_t>(n_modes));
    for (int m = 0; m < n_modes; ++m) {
        p.chi[static_cast<size_t>(m)] = lp_chi(grid->mode_wavenumber(m));
    }
    p.phi.resize(static_cast<size_t>(j_max + 1));
    for (int j = 0; j <= j_max; ++j) {
        auto& row = p.phi[static_cast<size_t>(j)];
        row.resize(static_cast<size_t>(n_modes));
        const double scale = std::ldexp(1.0, -j);
        for (int m = 0; m < n_modes; ++m) {
            row[static_cast<size_t>(m)] = lp_phi(scale * grid->mode_wavenumber(m));
        }
    }
    return p;
}

const DyadicPartition& partition_for(const GridPtr& grid) {
    thread_local std::map<std::pair<int, double>, std::unique_ptr<DyadicPartition>> cache;
    const auto key = std::make_pair(grid->size(), grid->half_width());
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<DyadicPartition>(build_dyadic_partition(grid)))
                 .first;
    }
    return *it->second;
}

LPDecomposition lp_decompose(const Field& f) {
    require_finite(f, "lp_decompose");
    const DyadicPartition& p = partition_for(f.grid);
    auto& kit = kit_for(f.grid);
    LPDecomposition d;
    d.partition = std::make_shared<const DyadicPartition>(p);
    d.blocks.reserve(static_cast<size_t>(p.j_max + 2));
    d.blocks.push_back(kit.apply_multiplier(f, p.chi));
    for (int j = 0; j <= p.j_max; ++j) {
        d.blocks.push_back(kit.apply_multiplier(f, p.phi[static_cast<size_t>(j)]));
    }
    return d;
}

Field low_freq_truncate(const Field& f, int j) {
    if (j < 0) throw std::invalid_argument("low_freq_truncate: j must be >= 0");
    require_finite(f, "low_freq_truncate");
    auto& kit = kit_for(f.grid);
    const int n_modes = f.grid->n_modes();
    std::vector<double> table(static_cast<size_t>(n_modes));
    const double scale = std::ldexp(1.0, -j);
    for (int m = 0; m < n_modes; ++m) {
        table[static_cast<size_t>(m)] = lp_chi(scale * f.grid->mode_wavenumber(m));
    }
    return kit.apply_multiplier(f, table);
}

Field lp_block(const Field& f, int j) {
    const DyadicPartition& p = partition_for(f.grid);
    if (j < -1 || j > p.j_max) return make_field(f.grid);
    auto& kit = kit_for(f.grid);
    if (j == -1) return kit.apply_multiplier(f, p.chi);
    return kit.apply_multiplier(f, p.phi[static_cast<size_t>(j)]);
}

namespace {

double besov_from_block_norms(const std::vector<double>& block_l2, double s, BesovSum r) {
    double acc = 0.0;
    for (size_t idx = 0; idx < block_l2.size(); ++idx) {
        const int j = static_cast<int>(idx) - 1;
        const double w = block_l2[idx] * std::pow(2.0, s * j);
        if (r == BesovSum::l1) {
            acc += w;
        } else {
            acc = std::max(acc, w);
        }
    }
    return acc;
}

}  // namespace

double besov_norm(const Field& f, double s, BesovSum r) {
    LPDecomposition d = lp_decompose(f);
    std::vector<double> norms;
    norms.reserve(d.blocks.size());
    for (const Field& b : d.blocks) norms.push_back(l2_norm(b));
    return besov_from_block_norms(norms, s, r);
}

double besov_norm_pair(const Field& u, const Field& v, double s, BesovSum r) {
    require_same_grid(u, v, "besov_norm_pair");
    LPDecomposition du = lp_decompose(u);
    LPDecomposition dv = lp_decompose(v);
    std::vector<double> norms;
    norms.reserve(du.blocks.size());
    for (size_t idx = 0; idx < du.blocks.size(); ++idx) {
        norms.push_back(l2_norm(du.blocks[idx]) + l2_norm(dv.blocks[idx]));
    }
    return besov_from_block_norms(norms, s, r);
}

}  // namespace tsu
