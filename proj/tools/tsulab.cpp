// Command-line front end: run configured experiments, compute norms of a
// stored field, evaluate the blow-up bounds.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsu/experiments.hpp"
#include "tsu/littlewood_paley.hpp"

namespace {

int cmd_norms(const std::string& csv_path, double s, const std::string& r_str) {
    std::ifstream in(csv_path);
    if (!in) {
        std::cerr << "norms: cannot open '" << csv_path << "'\n";
        return 1;
    }
    std::string header;
    if (!std::getline(in, header)) {
        std::cerr << "norms: empty file\n";
        return 1;
    }
    std::vector<std::string> names;
    {
        std::stringstream ss(header);
        std::string tok;
        while (std::getline(ss, tok, ',')) names.push_back(tok);
    }
    if (names.size() < 2 || names[0] != "x") {
        std::cerr << "norms: expected header 'x,<field>[,<field>...]'\n";
        return 1;
    }
    std::vector<double> xs;
    std::vector<std::vector<double>> cols(names.size() - 1);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        size_t c = 0;
        while (std::getline(ss, tok, ',')) {
            const double v = std::stod(tok);
            if (c == 0) {
                xs.push_back(v);
            } else if (c - 1 < cols.size()) {
                cols[c - 1].push_back(v);
            }
            ++c;
        }
    }
    const int n = static_cast<int>(xs.size());
    if (n < 8 || n % 2 != 0) {
        std::cerr << "norms: need an even number of rows >= 8, got " << n << "\n";
        return 1;
    }
    const double dx = xs[1] - xs[0];
    for (int i = 1; i < n; ++i) {
        if (std::abs((xs[i] - xs[i - 1]) - dx) > 1e-9 * std::max(1.0, std::abs(dx))) {
            std::cerr << "norms: x samples are not uniformly spaced\n";
            return 1;
        }
    }
    const double half_width = 0.5 * dx * n;
    if (std::abs(xs[0] + half_width) > 1e-9 * std::max(1.0, half_width)) {
        std::cerr << "norms: x must start at -L with L = N dx / 2\n";
        return 1;
    }
    const tsu::BesovSum r = (r_str == "inf") ? tsu::BesovSum::linf : tsu::BesovSum::l1;
    const auto grid = tsu::make_grid(half_width, n);
    std::cout << "field,l2,linf,besov\n";
    for (size_t c = 0; c < cols.size(); ++c) {
        tsu::Field f{grid, cols[c]};
        std::cout << names[c + 1] << ',' << tsu::g17(tsu::l2_norm(f)) << ','
                  << tsu::g17(tsu::linf_norm(f)) << ','
                  << tsu::g17(tsu::besov_norm(f, s, r)) << "\n";
    }
    return 0;
}

int cmd_bounds(double u0x, double beta, double norm_u0, double norm_theta, double c0) {
    const tsu::FracOrder order(beta);
    std::cout << "key,value\n";
    const auto b = tsu::riccati_blowup_bounds(u0x, order);
    std::cout << "T_paper," << tsu::g17(b.t_paper) << "\n";
    std::cout << "T_sharp," << tsu::g17(b.t_sharp) << "\n";
    if (norm_u0 >= 0.0) {
        std::cout << "lifespan_gate,"
                  << tsu::g17(tsu::lifespan_estimate(norm_u0, std::max(norm_theta, 0.0), order,
                                                     c0))
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the conformable time-fractional "
                 "tsunami shallow-water system"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string resolutions_override;
    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("config", config_path, "key=value config file")->required();
    run->add_option("--out", out_override, "override the output directory");
    run->add_option("--resolutions", resolutions_override,
                    "override the resolutions list, e.g. 1024,2048,4096");

    std::string csv_path;
    double s_index = 1.5;
    std::string r_str = "1";
    auto* norms = app.add_subcommand("norms", "Norms of fields stored in a CSV (x,field,...)");
    norms->add_option("csv", csv_path, "field CSV file")->required();
    norms->add_option("--s", s_index, "Besov regularity index");
    norms->add_option("--r", r_str, "Besov summation: 1 or inf")
        ->check(CLI::IsMember({"1", "inf"}));

    double u0x = 0.0, beta = 0.5, norm_u0 = -1.0, norm_theta = 0.0, c0 = 1.0;
    auto* bounds = app.add_subcommand("bounds", "Riccati blow-up bounds and lifespan gate");
    bounds->add_option("--u0x", u0x, "initial slope at the symmetry point (< 0)")->required();
    bounds->add_option("--beta", beta, "fractional order in (0,1]")->required();
    bounds->add_option("--norm-u0", norm_u0, "Besov norm of U0 (enables the gate)");
    bounds->add_option("--norm-theta", norm_theta, "Besov norm of theta");
    bounds->add_option("--C0", c0, "gate constant C0");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            tsu::RunConfig cfg = tsu::parse_config(config_path);
            if (!out_override.empty()) cfg.out_dir = out_override;
            if (!resolutions_override.empty()) {
                cfg.resolutions.clear();
                std::stringstream ss(resolutions_override);
                std::string tok;
                while (std::getline(ss, tok, ',')) cfg.resolutions.push_back(std::stoi(tok));
            }
            const tsu::ExperimentResult result = tsu::run_experiment(cfg);
            std::cout << "detected," << (result.report.detected ? "true" : "false") << "\n";
            if (result.report.detected) {
                std::cout << "t_star," << tsu::g17(result.report.t_star) << "\n";
                std::cout << "x_star," << tsu::g17(result.report.x_star) << "\n";
            }
            return 0;
        }
        if (norms->parsed()) return cmd_norms(csv_path, s_index, r_str);
        if (bounds->parsed()) return cmd_bounds(u0x, beta, norm_u0, norm_theta, c0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
