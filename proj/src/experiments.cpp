#include "tsu/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tsu/littlewood_paley.hpp"
#include "tsu/spectral.hpp"

namespace tsu {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

[[noreturn]] void config_error(const std::string& name, int line, const std::string& msg) {
    std::ostringstream out;
    out << name << ":" << line << ": " << msg;
    throw std::invalid_argument(out.str());
}

double parse_double(const std::string& name, int line, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        config_error(name, line, "malformed number '" + v + "'");
    }
}

int parse_int(const std::string& name, int line, const std::string& v) {
    try {
        size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        config_error(name, line, "malformed integer '" + v + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

void validate_config(const RunConfig& c, const std::string& name) {
    if (!(c.beta > 0.0 && c.beta <= 1.0)) config_error(name, 0, "beta must lie in (0,1]");
    if (!(c.g > 0.0)) config_error(name, 0, "g must be positive");
    if (!(c.half_width > 0.0)) config_error(name, 0, "L must be positive");
    if (c.n_points < 8 || c.n_points % 2 != 0) config_error(name, 0, "N must be even and >= 8");
    if (!(c.cfl > 0.0 && c.cfl <= 1.0)) config_error(name, 0, "cfl must lie in (0,1]");
    if (!(c.t_end > 0.0)) config_error(name, 0, "t_end must be positive");
    if (!(c.ds > 0.0)) config_error(name, 0, "ds must be positive");
    if (!(c.gradient_cap > 0.0)) config_error(name, 0, "gradient_cap must be positive");
    if (c.solver != "direct" && c.solver != "picard" && c.solver != "both") {
        config_error(name, 0, "solver must be one of direct|picard|both");
    }
    for (int r : c.resolutions) {
        if (r < 8 || r % 2 != 0) config_error(name, 0, "resolutions must be even and >= 8");
    }
    if (!(c.picard_T > 0.0) || !(c.picard_tol > 0.0) || c.picard_nmax < 1 ||
        !(c.picard_ds > 0.0) || !(c.c0 > 0.0)) {
        config_error(name, 0, "picard settings must be positive (n_max >= 1)");
    }
}

}  // namespace

RunConfig parse_config_stream(std::istream& in, const std::string& name) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const size_t eq = s.find('=');
        if (eq == std::string::npos) config_error(name, lineno, "expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) config_error(name, lineno, "empty key");

        if (key == "beta") {
            cfg.beta = parse_double(name, lineno, val);
            if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) {
                config_error(name, lineno, "beta must lie in (0,1]");
            }
        } else if (key == "g") {
            cfg.g = parse_double(name, lineno, val);
        } else if (key == "L") {
            cfg.half_width = parse_double(name, lineno, val);
        } else if (key == "N") {
            cfg.n_points = parse_int(name, lineno, val);
        } else if (key == "cfl") {
            cfg.cfl = parse_double(name, lineno, val);
        } else if (key == "t_end") {
            cfg.t_end = parse_double(name, lineno, val);
        } else if (key == "ds") {
            cfg.ds = parse_double(name, lineno, val);
        } else if (key == "snapshot_stride") {
            cfg.snapshot_stride = parse_int(name, lineno, val);
        } else if (key == "filter_alpha") {
            cfg.filter_alpha = parse_double(name, lineno, val);
        } else if (key == "gradient_cap") {
            cfg.gradient_cap = parse_double(name, lineno, val);
        } else if (key == "initial") {
            cfg.initial = val;
        } else if (key == "theta") {
            cfg.theta = val;
        } else if (key == "solver") {
            cfg.solver = val;
        } else if (key == "out") {
            cfg.out_dir = val;
        } else if (key == "resolutions") {
            cfg.resolutions.clear();
            for (const std::string& tok : split(val, ',')) {
                cfg.resolutions.push_back(parse_int(name, lineno, trim(tok)));
            }
        } else if (key == "snapshot_times") {
            cfg.snapshot_times.clear();
            for (const std::string& tok : split(val, ',')) {
                cfg.snapshot_times.push_back(parse_double(name, lineno, trim(tok)));
            }
        } else if (key == "picard_T") {
            cfg.picard_T = parse_double(name, lineno, val);
        } else if (key == "picard_tol") {
            cfg.picard_tol = parse_double(name, lineno, val);
        } else if (key == "picard_nmax") {
            cfg.picard_nmax = parse_int(name, lineno, val);
        } else if (key == "picard_ds") {
            cfg.picard_ds = parse_double(name, lineno, val);
        } else if (key == "C0") {
            cfg.c0 = parse_double(name, lineno, val);
        } else {
            config_error(name, lineno, "unknown key '" + key + "'");
        }
    }
    validate_config(cfg, name);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("parse_config: cannot open '" + path + "'");
    return parse_config_stream(in, path);
}

namespace {

double example_psi0(double x) {
    // 0.02 (cos(x/2 + pi) + 1); evaluated via the identity cos(a+pi) = -cos a,
    // which keeps the samples exactly even on a reflection-symmetric grid.
    return 0.02 * (1.0 - std::cos(0.5 * x));
}

double example2_u0(double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double w = 1.0 - x * x;
    return -2.0 * x / (w * w) * std::exp(-1.0 / w);
}

Field read_csv_column(const std::string& path, const GridPtr& grid, int column, int n_columns,
                      const char* what) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(std::string(what) + ": cannot open '" + path + "'");
    std::string line;
    std::getline(in, line);  // header
    Field out = make_field(grid);
    int row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto toks = split(line, ',');
        if (static_cast<int>(toks.size()) < n_columns) {
            throw std::invalid_argument(std::string(what) + ": bad row in '" + path + "'");
        }
        if (row >= grid->size()) ++row;  // counted below as a length error
        else out[row++] = std::stod(toks[static_cast<size_t>(column)]);
    }
    if (row != grid->size()) {
        std::ostringstream msg;
        msg << what << ": '" << path << "' has " << row << " rows, grid needs "
            << grid->size();
        throw std::invalid_argument(msg.str());
    }
    return out;
}

}  // namespace

PhysState initial_data(const std::string& selector, const GridPtr& grid) {
    const auto parts = split(selector, ':');
    const std::string& kind = parts[0];
    if (kind == "example1") {
        Field u = sample(grid, [](double x) { return -x * std::exp(-x * x); });
        Field psi = sample(grid, example_psi0);
        return PhysState{std::move(u), std::move(psi)};
    }
    if (kind == "example2") {
        Field u = sample(grid, example2_u0);
        Field psi = sample(grid, example_psi0);
        return PhysState{std::move(u), std::move(psi)};
    }
    if (kind == "gaussian") {
        if (parts.size() != 4) {
            throw std::invalid_argument("initial_data: gaussian needs uamp:pamp:width");
        }
        const double uamp = std::stod(parts[1]);
        const double pamp = std::stod(parts[2]);
        const double width = std::stod(parts[3]);
        Field u = sample(grid, [=](double x) {
            return -uamp * x * std::exp(-(x / width) * (x / width));
        });
        Field psi = sample(grid, [=](double x) {
            return pamp * std::exp(-(x / width) * (x / width));
        });
        return PhysState{std::move(u), std::move(psi)};
    }
    if (kind == "sine") {
        if (parts.size() != 3) {
            throw std::invalid_argument("initial_data: sine needs uamp:pconst");
        }
        const double uamp = std::stod(parts[1]);
        const double pconst = std::stod(parts[2]);
        const double L = grid->half_width();
        Field u = sample(grid, [=](double x) {
            return uamp * std::sin(std::numbers::pi * x / L);
        });
        Field psi = make_field(grid, pconst);
        return PhysState{std::move(u), std::move(psi)};
    }
    if (kind == "zero") {
        return PhysState{make_field(grid), make_field(grid)};
    }
    if (kind == "file") {
        if (parts.size() != 2) throw std::invalid_argument("initial_data: file needs a path");
        Field u = read_csv_column(parts[1], grid, 1, 3, "initial_data");
        Field psi = read_csv_column(parts[1], grid, 2, 3, "initial_data");
        return PhysState{std::move(u), std::move(psi)};
    }
    throw std::invalid_argument("initial_data: unknown selector '" + kind + "'");
}

Field theta_field(const std::string& selector, const GridPtr& grid) {
    const auto parts = split(selector, ':');
    const std::string& kind = parts[0];
    if (kind == "zero") return make_field(grid);
    if (kind == "gaussian") {
        if (parts.size() != 3) {
            throw std::invalid_argument("theta_field: gaussian needs amp:width");
        }
        const double amp = std::stod(parts[1]);
        const double width = std::stod(parts[2]);
        return sample(grid, [=](double x) { return amp * std::exp(-(x / width) * (x / width)); });
    }
    if (kind == "file") {
        if (parts.size() != 2) throw std::invalid_argument("theta_field: file needs a path");
        return read_csv_column(parts[1], grid, 1, 2, "theta_field");
    }
    throw std::invalid_argument("theta_field: unknown selector '" + kind + "'");
}

namespace {

namespace fs = std::filesystem;

void write_series_csv(const fs::path& path, const Trajectory& traj) {
    const TimeSeries crit = criterion_integral(traj);
    std::ofstream out(path);
    out << "t,s,min_ux,argmin_x,linf_ux,linf_psix,mass,momentum,criterion_integral\n";
    for (size_t i = 0; i < traj.series.size(); ++i) {
        const auto& r = traj.series[i];
        out << g17(r.t) << ',' << g17(r.s) << ',' << g17(r.min_ux) << ',' << g17(r.argmin_x)
            << ',' << g17(r.linf_ux) << ',' << g17(r.linf_psix) << ',' << g17(r.mass) << ','
            << g17(r.momentum) << ',' << g17(crit.values[i]) << '\n';
    }
}

void write_snapshots(const fs::path& dir, const Trajectory& traj) {
    fs::create_directories(dir);
    std::ofstream index(dir / "index.csv");
    index << "snapshot,t,s\n";
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "%04zu.csv", i);
        index << name << ',' << g17(traj.snapshots[i].t) << ',' << g17(traj.snapshots[i].s)
              << '\n';
        std::ofstream snap(dir / name);
        snap << "x,u,psi\n";
        const auto& st = traj.snapshots[i].state;
        for (int j = 0; j < st.u.size(); ++j) {
            snap << g17(st.u.grid->point(j)) << ',' << g17(st.u[j]) << ',' << g17(st.psi[j])
                 << '\n';
        }
    }
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void write_report_csv(const fs::path& path, const ExperimentResult& result,
                      const RunConfig& cfg) {
    std::ofstream out(path);
    out << "key,value\n";
    out << "beta," << g17(cfg.beta) << '\n';
    out << "g," << g17(cfg.g) << '\n';
    {
        std::string rs;
        for (size_t i = 0; i < result.resolutions.size(); ++i) {
            if (i) rs += ';';
            rs += std::to_string(result.resolutions[i]);
        }
        out << "resolutions," << rs << '\n';
    }
    const BlowupReport& br = result.report;
    out << "detected," << bool_str(br.detected) << '\n';
    out << "t_star_estimate," << g17(br.t_star) << '\n';
    out << "t_star_uncertainty," << g17(br.t_star_spread) << '\n';
    out << "x_star," << g17(br.x_star) << '\n';
    out << "seed_x," << g17(br.seed_x) << '\n';
    out << "T_paper," << g17(br.t_paper) << '\n';
    out << "T_sharp," << g17(br.t_sharp) << '\n';
    out << "lifespan_gate," << g17(br.lifespan_gate) << '\n';
    out << "u0x_at_0," << g17(br.u0x_at_center) << '\n';
    for (size_t i = 0; i < br.per_resolution_t_star.size(); ++i) {
        out << "t_star.N" << result.resolutions[i] << ',' << g17(br.per_resolution_t_star[i])
            << '\n';
    }
    for (size_t i = 0; i < result.trajectories.size(); ++i) {
        out << "truncated.N" << result.resolutions[i] << ','
            << bool_str(result.trajectories[i].truncated) << '\n';
    }
    if (br.detected) {
        out << "paper_bound_ok," << bool_str(result.verdicts.paper_bound_ok) << '\n';
        out << "sharp_side," << result.verdicts.sharp_side << '\n';
        out << "gate_ok," << bool_str(result.verdicts.gate_ok) << '\n';
    }
    if (result.has_picard) {
        const IterationReport& pr = result.picard;
        out << "picard.converged," << bool_str(pr.converged) << '\n';
        out << "picard.n_iterations," << pr.n_iterations << '\n';
        out << "picard.residual," << g17(pr.residual_sup_l2) << '\n';
        out << "picard.residual_bound," << g17(pr.residual_bound) << '\n';
        out << "picard.beyond_lifespan_gate," << bool_str(pr.beyond_lifespan_gate) << '\n';
        for (size_t n = 0; n < pr.cauchy_increment.size(); ++n) {
            out << "picard.iter." << (n + 1) << ".V," << g17(pr.cauchy_increment[n]) << '\n';
            out << "picard.iter." << (n + 1) << ".besov_sup," << g17(pr.besov_sup[n]) << '\n';
            out << "picard.iter." << (n + 1) << ".init_tail," << g17(pr.init_tail[n]) << '\n';
        }
    }
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& cfg) {
    validate_config(cfg, "run_experiment");
    ExperimentResult result;
    result.resolutions = cfg.resolutions.empty() ? std::vector<int>{cfg.n_points}
                                                 : cfg.resolutions;
    std::sort(result.resolutions.begin(), result.resolutions.end());

    const fs::path out_root(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out_root, ec);
    if (ec) {
        throw std::runtime_error("run_experiment: cannot create output directory '" +
                                 cfg.out_dir + "': " + ec.message());
    }

    StepperConfig stepper;
    stepper.ds = cfg.ds;
    stepper.cfl = cfg.cfl;
    stepper.t_end = cfg.t_end;
    stepper.snapshot_stride = cfg.snapshot_stride;
    stepper.filter_alpha = cfg.filter_alpha;
    stepper.gradient_cap = cfg.gradient_cap;
    stepper.snapshot_times = cfg.snapshot_times;

    const bool run_direct = cfg.solver == "direct" || cfg.solver == "both";
    const bool run_picard = cfg.solver == "picard" || cfg.solver == "both";

    if (run_direct) {
        for (int n : result.resolutions) {
            const GridPtr grid = make_grid(cfg.half_width, n);
            ModelParams params{cfg.g, theta_field(cfg.theta, grid), FracOrder(cfg.beta)};
            const PhysState init = initial_data(cfg.initial, grid);
            Trajectory traj = simulate(init, params, stepper);

            const fs::path dir = out_root / ("N" + std::to_string(n));
            fs::create_directories(dir);
            write_series_csv(dir / "series.csv", traj);
            write_snapshots(dir / "snapshots", traj);
            result.trajectories.push_back(std::move(traj));
        }

        result.report = detect_blowup(result.trajectories);
        if (result.report.detected) {
            const GridPtr grid = make_grid(cfg.half_width, result.resolutions.back());
            const PhysState init = initial_data(cfg.initial, grid);
            const Field theta = theta_field(cfg.theta, grid);
            const Field ux0 = spectral_derivative(init.u);
            const double u0x0 = ux0[grid->size() / 2];  // x = 0 sample
            double norm_u0 = 0.0, norm_theta = 0.0;
            try {
                ModelParams params{cfg.g, theta, FracOrder(cfg.beta)};
                const SymState sym = symmetrize(init, params);
                norm_u0 = besov_norm_pair(sym.u, sym.v, 1.5, BesovSum::l1);
                norm_theta = besov_norm(theta, 1.5, BesovSum::l1);
            } catch (const std::exception&) {
                // not symmetrizable; the gate is reported as zero
            }
            if (u0x0 < 0.0) {
                result.verdicts = reconcile_bounds(result.report, u0x0, FracOrder(cfg.beta),
                                                   norm_u0, norm_theta, cfg.c0);
            }
        }
    }

    if (run_picard) {
        const GridPtr grid = make_grid(cfg.half_width, cfg.n_points);
        ModelParams params{cfg.g, theta_field(cfg.theta, grid), FracOrder(cfg.beta)};
        const PhysState init = initial_data(cfg.initial, grid);
        const SymState sym = symmetrize(init, params);
        PicardConfig pc;
        pc.n_max = cfg.picard_nmax;
        pc.tol_l2 = cfg.picard_tol;
        pc.T = cfg.picard_T;
        pc.inner = stepper;
        pc.inner.ds = cfg.picard_ds;
        pc.inner.snapshot_stride = 1;
        pc.c0 = cfg.c0;
        auto [traj, rep] = picard_solve(sym, params, pc);
        (void)traj;
        result.has_picard = true;
        result.picard = rep;
    }

    write_report_csv(out_root / "report.csv", result, cfg);
    return result;
}

}  // namespace tsu
