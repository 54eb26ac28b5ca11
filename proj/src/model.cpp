#include "tsu/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tsu/spectral.hpp"

namespace tsu {

SymState symmetrize(const PhysState& state, const ModelParams& params) {
    require_same_grid(state.u, state.psi, "symmetrize");
    require_same_grid(state.psi, params.theta, "symmetrize");
    require_finite(state.u, "symmetrize(u)");
    require_finite(state.psi, "symmetrize(psi)");
    const int n = state.psi.size();
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(state.psi[i]) + std::abs(params.theta[i]));
    }
    const double clamp = -1e-13 * scale;
    Field v = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) {
        const double h = state.psi[i] + params.theta[i];
        if (h < clamp) {
            std::ostringstream msg;
            msg << "symmetrize: psi + theta = " << h << " < 0 at x = "
                << state.psi.grid->point(i) << " (index " << i << ")";
            throw std::invalid_argument(msg.str());
        }
        v[i] = 2.0 * std::sqrt(std::max(h, 0.0));
    }
    return SymState{state.u, std::move(v)};
}

PhysState desymmetrize(const SymState& state, const ModelParams& params) {
    require_same_grid(state.u, state.v, "desymmetrize");
    require_same_grid(state.v, params.theta, "desymmetrize");
    Field psi = make_field(state.u.grid);
    for (int i = 0; i < psi.size(); ++i) {
        if (state.v[i] < 0.0) {
            throw std::invalid_argument("desymmetrize: v must be nonnegative");
        }
        psi[i] = 0.25 * state.v[i] * state.v[i] - params.theta[i];
    }
    return PhysState{state.u, std::move(psi)};
}

PhysRates rhs_physical(const PhysState& state, const ModelParams& params) {
    require_same_grid(state.u, state.psi, "rhs_physical");
    require_same_grid(state.psi, params.theta, "rhs_physical");
    auto& kit = kit_for(state.u.grid);
    const int n = state.u.size();

    Field ux = kit.derivative(state.u);
    Field psix = kit.derivative(state.psi);

    Field adv = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) adv[i] = state.u[i] * ux[i];
    adv = kit.dealias(adv);

    Field du = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) du[i] = -adv[i] - params.g * psix[i];

    Field flux = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) flux[i] = (params.theta[i] + state.psi[i]) * state.u[i];
    Field flux_x = kit.dealias_derivative(flux);

    Field dpsi = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) dpsi[i] = -flux_x[i];

    return PhysRates{std::move(du), std::move(dpsi)};
}

SymRates rhs_symmetric(const SymState& state, const ModelParams& params) {
    require_same_grid(state.u, state.v, "rhs_symmetric");
    require_same_grid(state.v, params.theta, "rhs_symmetric");
    auto& kit = kit_for(state.u.grid);
    const int n = state.u.size();

    Field ux = kit.derivative(state.u);
    Field vx = kit.derivative(state.v);
    Field thetax = kit.derivative(params.theta);

    Field uux = make_field(state.u.grid);
    Field vvx = make_field(state.u.grid);
    Field vux = make_field(state.u.grid);
    Field uvx = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) {
        uux[i] = state.u[i] * ux[i];
        vvx[i] = state.v[i] * vx[i];
        vux[i] = state.v[i] * ux[i];
        uvx[i] = state.u[i] * vx[i];
    }
    uux = kit.dealias(uux);
    vvx = kit.dealias(vvx);
    vux = kit.dealias(vux);
    uvx = kit.dealias(uvx);

    Field du = make_field(state.u.grid);
    Field dv = make_field(state.u.grid);
    for (int i = 0; i < n; ++i) {
        du[i] = thetax[i] - uux[i] - 0.5 * vvx[i];
        dv[i] = -0.5 * vux[i] - uvx[i];
    }
    return SymRates{std::move(du), std::move(dv)};
}

CoefficientMatrices coefficient_matrix(const SymState& state) {
    require_same_grid(state.u, state.v, "coefficient_matrix");
    Field a12 = make_field(state.u.grid);
    for (int i = 0; i < a12.size(); ++i) a12[i] = 0.5 * state.v[i];
    return CoefficientMatrices{state.u, std::move(a12)};
}

Conserved conserved_quantities(const PhysState& state, const ModelParams& params) {
    (void)params;
    require_same_grid(state.u, state.psi, "conserved_quantities");
    return Conserved{integral(state.psi), integral(state.u)};
}

double parity_check(const Field& f, Parity kind) {
    const int n = f.size();
    double defect = 0.0;
    for (int i = 0; i < n; ++i) {
        const double mirror = f[(n - i) % n];
        const double d = (kind == Parity::odd) ? f[i] + mirror : f[i] - mirror;
        defect = std::max(defect, std::abs(d));
    }
    return defect;
}

}  // namespace tsu
