#pragma once

#include <span>
#include <vector>

#include "tppar/field.hpp"
#include "tppar/symbol.hpp"

namespace tppar {

/// Finite-difference weights for the order-th derivative at x0 from the given
/// nodes (Fornberg recursion; nodes need not be uniform).
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order);

/// FD accuracy order for boundary extraction; stencil size = order + 6.
constexpr int kBoundaryFdOrder = 6;

/// Symbol traces tr_m^D u = (u, D_n u, ..., D_n^{m-1} u) at x_n = 0, computed
/// from one-sided finite differences into the half domain. Physical fields on
/// the boundary grid.
std::vector<TPField> trace_symbol(const TPField& u, int m);

/// B_j u at x_n = 0 for every boundary operator of the tuple (tangential and
/// time factors applied spectrally, D_n by one-sided FD).
std::vector<TPField> boundary_values(const TPField& u, const OperatorTuple& tuple);

}  // namespace tppar
