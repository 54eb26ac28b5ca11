#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tsu/conformable.hpp"

using namespace tsu;

namespace {

TimeSeries sample_uniform(double t0, double t1, int n, const std::function<double(double)>& f) {
    TimeSeries s;
    for (int i = 0; i <= n; ++i) {
        const double t = t0 + (t1 - t0) * i / n;
        s.times.push_back(t);
        s.values.push_back(f(t));
    }
    return s;
}

// Mesh graded toward t = 0 (t_i = T (i/n)^3); refining it keeps the
// singular-weight quadrature second order all the way to the origin.
TimeSeries sample_graded(double T, int n, const std::function<double(double)>& f) {
    TimeSeries s;
    for (int i = 0; i <= n; ++i) {
        const double r = static_cast<double>(i) / n;
        const double t = T * r * r * r;
        s.times.push_back(t);
        s.values.push_back(f(t));
    }
    return s;
}

}  // namespace

TEST_CASE("FracOrder validates (0,1]") {
    CHECK_THROWS_WITH_AS(FracOrder(0.0), doctest::Contains("(0,1]"), std::invalid_argument);
    CHECK_THROWS_AS(FracOrder(1.5), std::invalid_argument);
    CHECK(FracOrder(1.0).beta == 1.0);
}

TEST_CASE("time series validation") {
    TimeSeries bad{{0.0, 1.0, 1.0}, {0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(validate_time_series(bad, "test"), std::invalid_argument);
    TimeSeries neg{{-1.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(validate_time_series(neg, "test"), std::invalid_argument);
}

TEST_CASE("conformable derivative of a constant vanishes") {
    const auto s = sample_uniform(0.0, 2.0, 100, [](double) { return 7.5; });
    const auto d = conformable_derivative(s, FracOrder(0.5));
    for (double v : d.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("conformable derivative of t^beta/beta is one") {
    const double beta = 0.7;
    const auto s = sample_uniform(0.5, 1.5, 1000,
                                  [&](double t) { return std::pow(t, beta) / beta; });
    const auto d = conformable_derivative(s, FracOrder(beta));
    for (double v : d.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("conformable derivative of t^2 at t = 4 with beta = 1/2") {
    const auto s = sample_uniform(3.0, 5.0, 200, [](double t) { return t * t; });
    const auto d = conformable_derivative(s, FracOrder(0.5));
    // centered differences are exact on quadratics
    const size_t idx = 100;  // t = 4
    REQUIRE(d.times[idx] == doctest::Approx(4.0));
    CHECK(d.values[idx] == doctest::Approx(16.0).epsilon(1e-12));
    // independent limit-quotient oracle
    const double lim = oracle::limit_quotient([](double t) { return t * t; }, 4.0, 0.5);
    CHECK(d.values[idx] == doctest::Approx(lim).epsilon(1e-6));
}

TEST_CASE("derivative at a t = 0 sample takes the limit value") {
    const double beta = 0.5;
    const auto s = sample_uniform(0.0, 1.0, 500, [](double t) { return std::cos(2.0 * t); });
    const auto d = conformable_derivative(s, FracOrder(beta));
    CHECK(std::abs(d.values[0]) < 1e-2);  // true limit is 0 for beta < 1
    const auto p = sample_uniform(0.0, 1.0, 500, [](double t) { return 1.0 + t; });
    const auto dp = conformable_derivative(p, FracOrder(beta));
    CHECK(std::abs(dp.values[0]) < 0.05);  // extrapolation residue ~ sqrt(t_1)
}

TEST_CASE("divergent limit at t = 0 is flagged") {
    const auto s = sample_uniform(0.0, 1.0, 2000, [](double t) { return std::pow(t, 0.1); });
    CHECK_THROWS_WITH_AS(conformable_derivative(s, FracOrder(0.5)),
                         doctest::Contains("divergent"), std::invalid_argument);
}

TEST_CASE("fractional integral: closed forms") {
    const double beta = 0.6;
    SUBCASE("f = 1 integrates to t^beta/beta") {
        const auto s = sample_uniform(0.0, 2.0, 400, [](double) { return 1.0; });
        const auto I = fractional_integral(s, FracOrder(beta));
        for (size_t i = 0; i < I.times.size(); ++i) {
            const double expect = std::pow(I.times[i], beta) / beta;
            CHECK(I.values[i] == doctest::Approx(expect).epsilon(1e-13));
        }
    }
    SUBCASE("f = 0 integrates to 0") {
        const auto s = sample_uniform(0.0, 2.0, 50, [](double) { return 0.0; });
        const auto I = fractional_integral(s, FracOrder(beta));
        for (double v : I.values) CHECK(v == 0.0);
    }
    SUBCASE("f = t with beta = 1/2 gives 2/3 at t = 1") {
        const auto s = sample_uniform(0.0, 1.0, 100, [](double t) { return t; });
        const auto I = fractional_integral(s, FracOrder(0.5));
        CHECK(I.values.back() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        const double q = oracle::singular_integral([](double x) { return x; }, 0.5, 1.0);
        CHECK(I.values.back() == doctest::Approx(q).epsilon(1e-8));
    }
}

TEST_CASE("fractional integral agrees with the quadrature oracle on a curved integrand") {
    const double beta = 0.35;
    const auto s = sample_uniform(0.0, 1.5, 3000, [](double t) { return std::cos(3.0 * t); });
    const auto I = fractional_integral(s, FracOrder(beta));
    const double q =
        oracle::singular_integral([](double x) { return std::cos(3.0 * x); }, beta, 1.5);
    CHECK(I.values.back() == doctest::Approx(q).epsilon(1e-5));
}

TEST_CASE("fractional integral requires times starting at zero") {
    TimeSeries s{{0.5, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(fractional_integral(s, FracOrder(0.5)), std::invalid_argument);
}

TEST_CASE("time maps: identities and round trips") {
    CHECK(time_forward_map(3.7, FracOrder(1.0)) == 3.7);
    CHECK(time_inverse_map(3.7, FracOrder(1.0)) == 3.7);
    CHECK(time_forward_map(4.0, FracOrder(0.5)) == doctest::Approx(4.0).epsilon(1e-15));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> tdist(0.0, 100.0);
    std::uniform_real_distribution<double> bdist(0.05, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const FracOrder b(bdist(rng));
        const double t = tdist(rng);
        const double back = time_inverse_map(time_forward_map(t, b), b);
        CHECK(std::abs(back - t) <= 1e-14 * std::max(1.0, t) + 1e-14);
    }
}

TEST_CASE("forward map is strictly increasing with ds/dt = t^(beta-1)") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> tdist(0.1, 10.0);
    std::uniform_real_distribution<double> bdist(0.1, 1.0);
    for (int i = 0; i < 200; ++i) {
        const FracOrder b(bdist(rng));
        const double t = tdist(rng);
        const double h = 1e-6 * t;
        const double slope =
            (time_forward_map(t + h, b) - time_forward_map(t - h, b)) / (2.0 * h);
        CHECK(slope == doctest::Approx(std::pow(t, b.beta - 1.0)).epsilon(1e-6));
        CHECK(time_forward_map(t + h, b) > time_forward_map(t, b));
    }
}

TEST_CASE("Riccati bounds: printed values and the ODE oracle") {
    SUBCASE("first example slope, beta = 1/2") {
        const RiccatiBounds b = riccati_blowup_bounds(-1.0, FracOrder(0.5));
        CHECK(b.t_paper == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(b.t_sharp == doctest::Approx(0.25).epsilon(1e-14));
        // integrate w' = -t^(beta-1) w^2, w(0) = -1, to divergence
        double w = -1.0, t = 0.0;
        const double dt = 1e-6;
        while (w > -1e9 && t < 2.0) {
            const double tm = t + 0.5 * dt;
            const double k1 = -std::pow(std::max(t, 1e-12), -0.5) * w * w;
            const double w2 = w + 0.5 * dt * k1;
            const double k2 = -std::pow(tm, -0.5) * w2 * w2;
            w += dt * k2;
            t += dt;
        }
        CHECK(t == doctest::Approx(0.25).epsilon(1e-2));
    }
    SUBCASE("classical case beta = 1") {
        const RiccatiBounds b = riccati_blowup_bounds(-2.0, FracOrder(1.0));
        CHECK(b.t_paper == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(b.t_sharp == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("second example slope via an FD oracle") {
        auto u0 = [](double x) {
            if (std::abs(x) >= 1.0) return 0.0;
            const double w = 1.0 - x * x;
            return -2.0 * x / (w * w) * std::exp(-1.0 / w);
        };
        const double h = 1e-5;
        const double slope = (u0(h) - u0(-h)) / (2.0 * h);
        CHECK(slope == doctest::Approx(-2.0 * std::exp(-1.0)).epsilon(1e-8));
        const RiccatiBounds b = riccati_blowup_bounds(slope, FracOrder(0.5));
        const double e_half_sq = std::pow(std::numbers::e / 2.0, 2.0);
        CHECK(b.t_paper == doctest::Approx(e_half_sq).epsilon(1e-6));
    }
    SUBCASE("nonnegative slope is rejected") {
        CHECK_THROWS_AS(riccati_blowup_bounds(0.0, FracOrder(0.5)), std::invalid_argument);
        CHECK_THROWS_AS(riccati_blowup_bounds(0.3, FracOrder(0.5)), std::invalid_argument);
    }
    SUBCASE("ordering T_sharp <= T_paper, equality only at beta = 1") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-5.0, -0.05);
        std::uniform_real_distribution<double> bd(0.05, 1.0);
        for (int i = 0; i < 200; ++i) {
            const double u0x = u(rng);
            const FracOrder b(bd(rng));
            const RiccatiBounds r = riccati_blowup_bounds(u0x, b);
            CHECK(r.t_sharp <= r.t_paper * (1.0 + 1e-14));
            if (b.beta < 0.999) CHECK(r.t_sharp < r.t_paper + 1e-15);
        }
    }
}

TEST_CASE("lifespan gate") {
    CHECK(lifespan_estimate(1.0, 0.0, FracOrder(1.0), 1.0) ==
          doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-15));
    CHECK(lifespan_estimate(0.0, 0.0, FracOrder(0.5), 1.0) ==
          doctest::Approx(std::pow(0.5, 2.0)).epsilon(1e-15));
    const double expect = std::pow(std::log(2.0) / 4.0, 2.0);
    CHECK(lifespan_estimate(1.0, 0.0, FracOrder(0.5), 1.0) ==
          doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(lifespan_estimate(-1.0, 0.0, FracOrder(0.5), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lifespan_estimate(1.0, 0.0, FracOrder(0.5), 0.0), std::invalid_argument);
}

TEST_CASE("inversion identity: integral of the derivative reproduces f - f(0)") {
    // graded mesh keeps the composition second order; halving the mesh width
    // must show slope 2.0 +- 0.1
    auto f = [](double t) { return std::sin(2.0 * t) + 2.0 + 0.5 * t; };
    for (double beta : {0.3, 0.6, 0.9}) {
        double errs[2];
        for (int pass = 0; pass < 2; ++pass) {
            const int n = (pass == 0) ? 400 : 800;
            const auto s = sample_graded(1.0, n, f);
            const auto d = conformable_derivative(s, FracOrder(beta));
            const auto I = fractional_integral(d, FracOrder(beta));
            double e = 0.0;
            for (size_t i = 0; i < I.times.size(); ++i) {
                e = std::max(e, std::abs(I.values[i] - (f(I.times[i]) - f(0.0))));
            }
            errs[pass] = e;
        }
        const double slope = std::log2(errs[0] / errs[1]);
        CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("Leibniz rule on sampled products") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const double dt = 1e-3;
    for (int trial = 0; trial < 20; ++trial) {
        const double a1 = amp(rng), a2 = amp(rng), b1 = amp(rng), b2 = amp(rng);
        auto f = [&](double t) { return 1.5 + a1 * std::sin(3.0 * t) + a2 * std::cos(t); };
        auto g = [&](double t) { return 0.5 + b1 * std::cos(2.0 * t) + b2 * std::sin(t); };
        auto fg = [&](double t) { return f(t) * g(t); };
        const int n = static_cast<int>(1.0 / dt);
        const auto sf = sample_uniform(0.3, 1.3, n, f);
        const auto sg = sample_uniform(0.3, 1.3, n, g);
        const auto sfg = sample_uniform(0.3, 1.3, n, fg);
        const FracOrder beta(0.45);
        const auto df = conformable_derivative(sf, beta);
        const auto dg = conformable_derivative(sg, beta);
        const auto dfg = conformable_derivative(sfg, beta);
        double worst = 0.0;
        for (size_t i = 0; i < df.times.size(); ++i) {
            const double lhs = dfg.values[i];
            const double rhs = sf.values[i] * dg.values[i] + sg.values[i] * df.values[i];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        CHECK(worst < 100.0 * dt * dt);
    }
}
