#pragma once

#include "tsu/conformable.hpp"
#include "tsu/grid.hpp"

namespace tsu {

/// Physical variables: velocity u and wave magnification psi.
struct PhysState {
    Field u;
    Field psi;
};

/// Symmetrized variables: u and v = 2 sqrt(psi + theta).
struct SymState {
    Field u;
    Field v;
};

struct ModelParams {
    double g = 1.0;       // gravity; the analysis takes g = 1 but it stays a parameter
    Field theta;          // bathymetry theta(x)
    FracOrder beta{1.0};
};

/// v = 2 sqrt(psi + theta).  Rejects states with psi + theta < 0 (reporting
/// the location); negative roundoff within 1e-13 of the field scale is
/// clamped to zero.
SymState symmetrize(const PhysState& state, const ModelParams& params);

/// psi = v^2/4 - theta.
PhysState desymmetrize(const SymState& state, const ModelParams& params);

struct PhysRates {
    Field du;
    Field dpsi;
};

/// Right-hand side of the classical-time system
///   du = -(u u_x + g psi_x),  dpsi = -d/dx[(theta + psi) u],
/// with 2/3-rule dealiasing on the quadratic products.
PhysRates rhs_physical(const PhysState& state, const ModelParams& params);

struct SymRates {
    Field du;
    Field dv;
};

/// du = theta_x - u u_x - (1/2) v v_x,  dv = -(1/2) v u_x - u v_x.
SymRates rhs_symmetric(const SymState& state, const ModelParams& params);

/// Per-point entries of A(U) = [[u, v/2], [v/2, u]] (symmetric; a21 = a12,
/// a22 = a11).  Eigenvalues are u +- v/2.
struct CoefficientMatrices {
    Field a11;
    Field a12;
};

CoefficientMatrices coefficient_matrix(const SymState& state);

struct Conserved {
    double mass;      // integral of psi
    double momentum;  // integral of u
};

Conserved conserved_quantities(const PhysState& state, const ModelParams& params);

enum class Parity { odd, even };

/// sup_i |f(x_i) -+ f(-x_i)| using the grid's reflection symmetry
/// (x -> -x maps sample i to sample (N - i) mod N).
double parity_check(const Field& f, Parity kind);

}  // namespace tsu
