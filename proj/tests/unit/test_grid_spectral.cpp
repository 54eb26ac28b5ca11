#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tsu/grid.hpp"
#include "tsu/spectral.hpp"

using namespace tsu;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid construction enforces the invariants") {
    CHECK_THROWS(PeriodicGrid(10.0, 7));
    CHECK_THROWS(PeriodicGrid(10.0, 6));
    CHECK_THROWS(PeriodicGrid(-1.0, 16));
    const auto g = make_grid(10.0, 16);
    CHECK(g->dx() == 2.0 * 10.0 / 16);
    CHECK(g->point(8) == 0.0);
    CHECK(g->nyquist() == doctest::Approx(kPi * 8 / 10.0));
}

TEST_CASE("wavenumber table is increasing and symmetric about 0") {
    const auto g = make_grid(7.0, 32);
    const auto k = g->full_wavenumbers();
    REQUIRE(k.size() == 32);
    for (size_t i = 1; i < k.size(); ++i) CHECK(k[i] > k[i - 1]);
    // pairs +-m match exactly; index 0 is the unpaired -N/2 mode
    for (size_t i = 1; i < k.size(); ++i) {
        CHECK(k[i] == -k[k.size() - i]);
    }
    CHECK(k[16] == 0.0);
}

TEST_CASE("spectral derivative of a constant is zero") {
    const auto g = make_grid(10.0, 64);
    const Field f = make_field(g, 3.25);
    const Field d = spectral_derivative(f);
    CHECK(linf_norm(d) < 1e-13);
}

TEST_CASE("spectral derivative is exact on a resolved mode") {
    const double L = 10.0;
    const auto g = make_grid(L, 128);
    const Field f = sample(g, [&](double x) { return std::sin(kPi * x / L); });
    const Field expect = sample(g, [&](double x) { return kPi / L * std::cos(kPi * x / L); });
    CHECK(rel_l2_error(spectral_derivative(f), expect) < 1e-12);
}

TEST_CASE("spectral derivative matches a 4th-order FD oracle") {
    const auto g = make_grid(10.0, 1024);
    const Field f = sample(g, [](double x) { return x * std::exp(-x * x); });
    const Field d_spec = spectral_derivative(f);
    const Field d_fd = oracle::fd4_derivative(f);
    CHECK(rel_l2_error(d_spec, d_fd) < 1e-6);
}

TEST_CASE("spectral derivative rejects non-finite input") {
    const auto g = make_grid(10.0, 16);
    Field f = make_field(g);
    f[3] = std::nan("");
    CHECK_THROWS_WITH_AS(spectral_derivative(f),
                         doctest::Contains("non-finite"), std::invalid_argument);
}

TEST_CASE("unpaired Nyquist mode is zeroed under differentiation") {
    const auto g = make_grid(10.0, 32);
    // alternating +-1 is exactly the -N/2 mode
    Field f = make_field(g);
    for (int i = 0; i < f.size(); ++i) f[i] = (i % 2 == 0) ? 1.0 : -1.0;
    CHECK(linf_norm(spectral_derivative(f)) < 1e-12);
}

TEST_CASE("linf and l2 norms: trivial values") {
    const auto g = make_grid(10.0, 64);
    const Field zero = make_field(g);
    CHECK(linf_norm(zero) == 0.0);
    CHECK(l2_norm(zero) == 0.0);
    const Field c = make_field(g, -2.5);
    CHECK(linf_norm(c) == 2.5);
    CHECK(l2_norm(c) == doctest::Approx(2.5 * std::sqrt(20.0)).epsilon(1e-14));
}

TEST_CASE("norms of sin(pi x/L) on L = pi") {
    const auto g = make_grid(kPi, 16);
    const Field f = sample(g, [](double x) { return std::sin(x); });
    CHECK(linf_norm(f) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("dealias keeps low modes intact and kills the top third") {
    const double L = 10.0;
    const auto g = make_grid(L, 96);
    auto& kit = kit_for(g);
    const Field low = sample(g, [&](double x) { return std::cos(3.0 * kPi * x / L); });
    CHECK(rel_l2_error(kit.dealias(low), low) < 1e-14);
    const Field high = sample(g, [&](double x) { return std::cos(40.0 * kPi * x / L); });
    CHECK(linf_norm(kit.dealias(high)) < 1e-13);
}

TEST_CASE("exponential filter preserves constants and damps the Nyquist mode") {
    const auto g = make_grid(10.0, 64);
    auto& kit = kit_for(g);
    const Field c = make_field(g, 1.5);
    CHECK(rel_l2_error(kit.exp_filter(c, 36.0), c) < 1e-15);
    Field nyq = make_field(g);
    for (int i = 0; i < nyq.size(); ++i) nyq[i] = (i % 2 == 0) ? 1.0 : -1.0;
    CHECK(linf_norm(kit.exp_filter(nyq, 36.0)) < 1e-12);
}

TEST_CASE("forward/inverse round trip") {
    const auto g = make_grid(4.0, 128);
    auto& kit = kit_for(g);
    const Field f = sample(g, [](double x) { return std::exp(-x * x) + 0.3 * std::sin(x); });
    CHECK(rel_l2_error(kit.inverse(kit.forward(f)), f) < 1e-14);
}
