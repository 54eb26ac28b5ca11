#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tsu/monitor.hpp"
#include "tsu/solver_picard.hpp"

namespace tsu {

/// One experiment as read from a flat key=value config file.
struct RunConfig {
    double beta = 1.0;
    double g = 1.0;
    double half_width = 10.0;  // key "L"
    int n_points = 2048;       // key "N"
    double cfl = 0.4;
    double t_end = 1.0;
    double ds = 1e-3;
    int snapshot_stride = 100;
    double filter_alpha = 36.0;
    double gradient_cap = 1e4;
    std::string initial = "example1";
    std::string theta = "zero";
    std::string solver = "direct";  // direct | picard | both
    std::string out_dir = "out";
    std::vector<int> resolutions;   // empty = just N
    std::vector<double> snapshot_times;
    // picard settings
    double picard_T = 0.1;
    double picard_tol = 1e-6;
    int picard_nmax = 12;
    double picard_ds = 1e-3;
    double c0 = 1.0;
};

/// Parses and validates a config file; diagnostics carry line numbers.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_stream(std::istream& in, const std::string& name);

/// Built-in initial-data catalog.  Selectors:
///   example1                      u0 = -x e^(-x^2), psi0 = 0.02(cos(x/2+pi)+1)
///   example2                      compactly supported u0 (exact zero branch), same psi0
///   gaussian:uamp:pamp:width      u0 = -uamp x e^(-(x/w)^2), psi0 = pamp e^(-(x/w)^2)
///   sine:uamp:pconst              u0 = uamp sin(pi x/L), psi0 = pconst
///   zero
///   file:path                     CSV x,u,psi matching the grid
PhysState initial_data(const std::string& selector, const GridPtr& grid);

/// Bathymetry catalog: zero | gaussian:amp:width | file:path (CSV x,theta).
Field theta_field(const std::string& selector, const GridPtr& grid);

struct ExperimentResult {
    std::vector<Trajectory> trajectories;  // one per resolution, coarse to fine
    std::vector<int> resolutions;
    BlowupReport report;
    BoundVerdicts verdicts;
    bool has_picard = false;
    IterationReport picard;
};

/// Runs the configured experiment and writes series.csv, snapshots/ and
/// report.csv under out_dir (per-resolution subdirectories N<N>/...).
/// Deterministic: identical config gives bit-identical files.
ExperimentResult run_experiment(const RunConfig& config);

/// 17-significant-digit, locale-independent numeric formatting.
std::string g17(double x);

}  // namespace tsu
