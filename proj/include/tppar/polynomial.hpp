#pragma once

#include <span>
#include <vector>

#include "tppar/types.hpp"

namespace tppar {

// Polynomials are coefficient vectors in ascending powers: p[j] multiplies z^j.
// Factor coefficients c (half_symbol_coeffs) follow the descending convention
// used by the factorization formulas: prod (z - rho_j) = sum_a c[a] z^{m-a},
// c[0] = 1.

cplx poly_eval(std::span<const cplx> ascending, cplx z);

std::vector<cplx> poly_derivative(std::span<const cplx> ascending);

std::vector<cplx> poly_mul(std::span<const cplx> a, std::span<const cplx> b);

/// Monic polynomial with the given roots, ascending coefficients (Vieta).
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

/// Monic factor coefficients c[0..m] with prod(z - rho_j) = sum c[a] z^{m-a}.
std::vector<cplx> half_symbol_coeffs(std::span<const cplx> roots);

std::vector<cplx> descending_to_ascending(std::span<const cplx> c);

/// Remainder of p modulo a monic q (synthetic division). Returns deg(q)
/// coefficients r[0..m-1] with p = Q*q + sum r[l] z^l; quotient optional.
std::vector<cplx> poly_mod(std::span<const cplx> p, std::span<const cplx> q_monic,
                           std::vector<cplx>* quotient = nullptr);

}  // namespace tppar
