#pragma once

#include <memory>
#include <vector>

#include "tsu/grid.hpp"

namespace tsu {

/// The scalar cutoffs behind the dyadic partition:
///   chi = 1 on |xi| <= 3/4, 0 on |xi| >= 4/3, monotone C-infinity in between
///   (transition built from the exp(-1/t) smooth step);
///   phi(xi) = chi(xi/2) - chi(xi), supported on 3/4 <= |xi| <= 8/3.
/// Any pair with these supports works; this one is frozen here.
double lp_chi(double xi);
double lp_phi(double xi);

struct DyadicPartition {
    GridPtr grid;
    int j_max = 0;
    std::vector<double> chi;               // chi(k_m), m = 0..N/2
    std::vector<std::vector<double>> phi;  // phi[j][m] = phi(2^-j k_m), j = 0..j_max
};

/// Tabulates chi, phi at the grid wavenumbers.  j_max is the smallest j with
/// nyquist <= (3/4) 2^(j+1), so the partition sums to one at every resolved
/// mode.  Throws if the grid cannot host j_max >= 1.
DyadicPartition build_dyadic_partition(const GridPtr& grid);

/// Thread-local cache of partitions keyed by (N, L).
const DyadicPartition& partition_for(const GridPtr& grid);

struct LPDecomposition {
    std::shared_ptr<const DyadicPartition> partition;
    std::vector<Field> blocks;  // blocks[0] = Delta_{-1}, blocks[j+1] = Delta_j

    int j_min() const { return -1; }
    int j_max() const { return partition->j_max; }
    const Field& block(int j) const { return blocks[static_cast<size_t>(j + 1)]; }
};

LPDecomposition lp_decompose(const Field& f);

/// S_j f = chi(2^-j D) f.  Requires j >= 0.
Field low_freq_truncate(const Field& f, int j);

/// Delta_j f for a single j in [-1, j_max]; zero field outside that range.
Field lp_block(const Field& f, int j);

enum class BesovSum { l1, linf };

/// sum_j 2^(js) ||Delta_j f||_L2 (r = l1) or sup_j (r = linf), j from -1.
double besov_norm(const Field& f, double s, BesovSum r);

/// Vector version for a pair (u, v): per-block norms are added before the
/// 2^(js) weighting, as in the two-component state norm.
double besov_norm_pair(const Field& u, const Field& v, double s, BesovSum r);

}  // namespace tsu
