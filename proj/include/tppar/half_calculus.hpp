#pragma once

#include <span>
#include <vector>

#include "tppar/field.hpp"
#include "tppar/symbol.hpp"

namespace tppar {

/// Derivative calculus on the half domain x_n >= 0. Fields restricted to the
/// half box are smooth up to the boundary but their zero-extensions are not;
/// differentiating across x_n = 0 spectrally therefore diverges under
/// refinement. These routines keep time/tangential directions spectral and
/// take normal derivatives by order-6 finite differences on the half
/// segment's own nodes.

/// d_t^{time_order} d_x^alpha u as a full-box field (zero on x_n < 0); the
/// last component of alpha is the normal derivative order.
TPField half_derivative(const TPField& u, const MultiIndex& alpha, int time_order);

/// Anisotropic Sobolev norm of the restriction to x_n >= 0.
double half_sobolev_norm(const TPField& u, double p, int m);

/// Pointwise PDE residual d_t u + A(D) u - f on the half box, returned as a
/// full-box field supported on x_n >= 0.
TPField half_pde_residual(const TPField& u, const TPField& f, const DifferentialSymbol& op);

}  // namespace tppar
