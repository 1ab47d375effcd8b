#pragma once

#include <functional>

#include "tppar/field.hpp"

namespace tppar {

/// Spectral symbol m(k, xi); xi has grid->dim() components (n-1 on boundary
/// grids). Frequencies are the physical values, not indices.
using SymbolFn = std::function<cplx(double k, std::span<const double> xi)>;

/// op[m]: pointwise spectral multiplication. Nyquist planes are always
/// zeroed; with osc_only the k = 0 plane is zeroed as well and the input must
/// be purely oscillatory (MeanNotZero otherwise). Output state matches input.
TPField apply_multiplier(const TPField& u, const SymbolFn& m, bool osc_only = false);

/// P: time mean. In physical state this is the literal node average, so
/// P + P_perp = id holds bitwise; in spectral state the k != 0 planes vanish.
TPField project_mean(const TPField& u);
/// P_perp = id - P.
TPField project_osc(const TPField& u);

/// ||P u||_2 / ||u||_2 (0 for u = 0).
double mean_fraction(const TPField& u);

/// Relative defect of hat(u)(k, xi) = conj(hat(u)(-k, -xi)) over paired
/// (non-Nyquist) modes; ~0 for fields declared real-valued.
double conjugate_symmetry_defect(const TPField& u);

/// Multiplication by the indicator Y_+ of x_n >= 0 (physical state only).
TPField restrict_half(const TPField& u);
/// Multiplication by 1 - Y_+.
TPField complement_half(const TPField& u);
/// Zero-extension of a half-box field given on the full box: keeps x_n >= 0,
/// zeroes x_n < 0. Numerically the same mask as restrict_half; both names
/// exist to keep call sites readable.
TPField extend_zero(const TPField& u);

}  // namespace tppar
