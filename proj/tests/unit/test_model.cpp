#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tsu/experiments.hpp"
#include "tsu/model.hpp"
#include "tsu/spectral.hpp"

using namespace tsu;

namespace {
constexpr double kPi = std::numbers::pi;

ModelParams zero_theta_params(const GridPtr& g, double gravity = 1.0) {
    return ModelParams{gravity, make_field(g), FracOrder(1.0)};
}
}  // namespace

TEST_CASE("symmetrize: flat depth of one gives v = 2") {
    const auto g = make_grid(10.0, 64);
    PhysState st{make_field(g), make_field(g, 1.0)};
    const SymState sym = symmetrize(st, zero_theta_params(g));
    for (int i = 0; i < sym.v.size(); ++i) CHECK(sym.v[i] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("symmetrize: vacuum stays at v = 0") {
    const auto g = make_grid(10.0, 64);
    PhysState st{make_field(g), make_field(g)};
    const SymState sym = symmetrize(st, zero_theta_params(g));
    CHECK(linf_norm(sym.v) == 0.0);
}

TEST_CASE("symmetrize: second-example psi at x = pi") {
    // L = 4pi puts x = pi exactly on the grid (i = 5N/8)
    const auto g = make_grid(4.0 * kPi, 64);
    const PhysState st = initial_data("example2", g);
    const SymState sym = symmetrize(st, zero_theta_params(g));
    const int idx = 5 * 64 / 8;
    REQUIRE(g->point(idx) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(sym.v[idx] == doctest::Approx(2.0 * std::sqrt(0.02)).epsilon(1e-12));
    CHECK(sym.v[idx] == doctest::Approx(0.28284271247461906).epsilon(1e-12));
}

TEST_CASE("symmetrize rejects negative depth and names the location") {
    const auto g = make_grid(10.0, 64);
    Field psi = make_field(g, 0.5);
    psi[10] = -0.2;
    PhysState st{make_field(g), psi};
    CHECK_THROWS_WITH_AS(symmetrize(st, zero_theta_params(g)), doctest::Contains("x ="),
                         std::invalid_argument);
}

TEST_CASE("desymmetrize closed forms and round trip") {
    const auto g = make_grid(10.0, 64);
    SUBCASE("v = 2, theta = 0 gives psi = 1") {
        SymState sym{make_field(g), make_field(g, 2.0)};
        const PhysState st = desymmetrize(sym, zero_theta_params(g));
        for (int i = 0; i < st.psi.size(); ++i) CHECK(st.psi[i] == doctest::Approx(1.0));
    }
    SUBCASE("v = 0, theta = 0 gives psi = 0") {
        SymState sym{make_field(g), make_field(g)};
        const PhysState st = desymmetrize(sym, zero_theta_params(g));
        CHECK(linf_norm(st.psi) == 0.0);
    }
    SUBCASE("negative v is rejected") {
        SymState sym{make_field(g), make_field(g, -0.1)};
        CHECK_THROWS_AS(desymmetrize(sym, zero_theta_params(g)), std::invalid_argument);
    }
    SUBCASE("random admissible states round-trip") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> amp(0.0, 1.0);
        ModelParams params = zero_theta_params(g);
        params.theta = sample(g, [&](double x) { return 0.1 * std::cos(kPi * x / 10.0); });
        for (int trial = 0; trial < 10; ++trial) {
            const double a = amp(rng);
            PhysState st{
                sample(g, [&](double x) { return a * std::sin(kPi * x / 10.0); }),
                sample(g, [&](double x) { return 0.2 + a * 0.1 * std::cos(kPi * x / 10.0); })};
            const PhysState back = desymmetrize(symmetrize(st, params), params);
            Field d = back.psi;
            for (int i = 0; i < d.size(); ++i) d[i] -= st.psi[i];
            CHECK(linf_norm(d) < 1e-12);
        }
    }
}

TEST_CASE("rhs_physical: constant states are steady") {
    const auto g = make_grid(10.0, 128);
    ModelParams params{1.0, make_field(g, 0.3), FracOrder(1.0)};
    PhysState st{make_field(g), make_field(g, 0.7)};
    const PhysRates r = rhs_physical(st, params);
    CHECK(linf_norm(r.du) < 1e-13);
    CHECK(linf_norm(r.dpsi) < 1e-13);
}

TEST_CASE("rhs_physical: pure Burgers single mode") {
    const double L = 10.0;
    const auto g = make_grid(L, 256);
    ModelParams params = zero_theta_params(g);
    PhysState st{sample(g, [&](double x) { return std::sin(kPi * x / L); }), make_field(g)};
    const PhysRates r = rhs_physical(st, params);
    const Field expect = sample(g, [&](double x) {
        return -std::sin(kPi * x / L) * (kPi / L) * std::cos(kPi * x / L);
    });
    CHECK(rel_l2_error(r.du, expect) < 1e-12);
    CHECK(linf_norm(r.dpsi) < 1e-14);
}

TEST_CASE("rhs_physical matches a 4th-order FD oracle on the first example") {
    // box of two psi0 periods so the example datum is exactly periodic
    const auto g = make_grid(4.0 * kPi, 1024);
    ModelParams params = zero_theta_params(g);
    const PhysState st = initial_data("example1", g);
    const PhysRates r = rhs_physical(st, params);

    const Field ux = oracle::fd4_derivative(st.u);
    const Field psix = oracle::fd4_derivative(st.psi);
    Field du_fd = make_field(g);
    Field flux = make_field(g);
    for (int i = 0; i < g->size(); ++i) {
        du_fd[i] = -(st.u[i] * ux[i] + params.g * psix[i]);
        flux[i] = (params.theta[i] + st.psi[i]) * st.u[i];
    }
    const Field flux_x = oracle::fd4_derivative(flux);
    Field dpsi_fd = make_field(g);
    for (int i = 0; i < g->size(); ++i) dpsi_fd[i] = -flux_x[i];

    CHECK(rel_l2_error(r.du, du_fd) < 1e-6);
    CHECK(rel_l2_error(r.dpsi, dpsi_fd) < 1e-6);
}

TEST_CASE("rhs_symmetric: constant states are steady") {
    const auto g = make_grid(10.0, 128);
    ModelParams params{1.0, make_field(g, 0.2), FracOrder(1.0)};
    SymState st{make_field(g), make_field(g, 1.1)};
    const SymRates r = rhs_symmetric(st, params);
    CHECK(linf_norm(r.du) < 1e-13);
    CHECK(linf_norm(r.dv) < 1e-13);
}

TEST_CASE("rhs_symmetric is chain-rule consistent with rhs_physical") {
    const auto g = make_grid(4.0 * kPi, 512);
    ModelParams params{1.0, sample(g, [](double x) { return 0.05 * std::exp(-x * x); }),
                       FracOrder(1.0)};
    // depth bounded well away from vacuum
    PhysState st{sample(g, [](double x) { return -x * std::exp(-x * x); }),
                 sample(g, [](double x) { return 0.25 + 0.02 * (1.0 - std::cos(0.5 * x)); })};
    const SymState sym = symmetrize(st, params);
    const PhysRates pr = rhs_physical(st, params);
    const SymRates sr = rhs_symmetric(sym, params);

    // dv from the physical flow: psi_t / sqrt(psi + theta)
    Field dv_phys = make_field(g);
    for (int i = 0; i < g->size(); ++i) {
        dv_phys[i] = pr.dpsi[i] / std::sqrt(st.psi[i] + params.theta[i]);
    }
    CHECK(rel_l2_error(sr.dv, dv_phys) < 1e-8);
    CHECK(rel_l2_error(sr.du, pr.du) < 1e-8);  // g = 1: du forms coincide
}

TEST_CASE("rhs parity closure: odd u, even psi and theta map to odd du, even dpsi") {
    const auto g = make_grid(4.0 * kPi, 512);
    ModelParams params{1.0, sample(g, [](double x) { return 0.1 * std::exp(-x * x); }),
                       FracOrder(1.0)};
    const PhysState st = initial_data("example1", g);
    REQUIRE(parity_check(st.u, Parity::odd) < 1e-14);
    REQUIRE(parity_check(st.psi, Parity::even) < 1e-14);
    const PhysRates r = rhs_physical(st, params);
    CHECK(parity_check(r.du, Parity::odd) < 1e-10);
    CHECK(parity_check(r.dpsi, Parity::even) < 1e-10);
}

TEST_CASE("coefficient matrix entries and eigenvalues") {
    const auto g = make_grid(10.0, 64);
    SUBCASE("zero state gives the zero matrix") {
        SymState st{make_field(g), make_field(g)};
        const CoefficientMatrices a = coefficient_matrix(st);
        CHECK(linf_norm(a.a11) == 0.0);
        CHECK(linf_norm(a.a12) == 0.0);
    }
    SUBCASE("u = 1, v = 2 gives the all-ones matrix") {
        SymState st{make_field(g, 1.0), make_field(g, 2.0)};
        const CoefficientMatrices a = coefficient_matrix(st);
        for (int i = 0; i < g->size(); ++i) {
            CHECK(a.a11[i] == 1.0);
            CHECK(a.a12[i] == 1.0);
        }
    }
    SUBCASE("eigenvalues are u +- v/2 against a generic symmetric solver") {
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> amp(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double u = amp(rng);
            const double v = std::abs(amp(rng));
            const auto [lo, hi] = oracle::eig2_sym(u, 0.5 * v, u);
            CHECK(lo == doctest::Approx(u - 0.5 * v).epsilon(1e-12));
            CHECK(hi == doctest::Approx(u + 0.5 * v).epsilon(1e-12));
        }
    }
}

TEST_CASE("conserved quantities") {
    const auto g = make_grid(10.0, 256);
    SUBCASE("zero state") {
        const Conserved c = conserved_quantities({make_field(g), make_field(g)},
                                                 zero_theta_params(g));
        CHECK(c.mass == 0.0);
        CHECK(c.momentum == 0.0);
    }
    SUBCASE("flat psi = 1 on L = 10 has mass 20") {
        const Conserved c = conserved_quantities({make_field(g), make_field(g, 1.0)},
                                                 zero_theta_params(g));
        CHECK(c.mass == doctest::Approx(20.0).epsilon(1e-14));
    }
}

TEST_CASE("parity check") {
    const double L = 10.0;
    const auto g = make_grid(L, 256);
    const Field odd = sample(g, [&](double x) { return std::sin(kPi * x / L); });
    CHECK(parity_check(odd, Parity::odd) < 1e-14);
    const Field even = sample(g, [&](double x) { return std::cos(kPi * x / L); });
    CHECK(parity_check(even, Parity::even) < 1e-14);
    const Field u0 = sample(g, [](double x) { return -x * std::exp(-x * x); });
    CHECK(parity_check(u0, Parity::odd) < 1e-14);
    // and the defect is genuinely nonzero for a non-symmetric field
    const Field skew = sample(g, [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); });
    CHECK(parity_check(skew, Parity::even) > 0.1);
}
