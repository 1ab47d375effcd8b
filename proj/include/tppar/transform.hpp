#pragma once

#include <span>

#include "tppar/field.hpp"

namespace tppar {

/// Discrete F_G with the normalized Haar measure in time: the forward time
/// direction carries 1/N_t, each forward space direction carries the cell
/// volume 2L_i/N_i. inverse(forward(u)) = u up to roundoff.
TPField forward(const TPField& u);
TPField inverse(const TPField& w);
void forward_in_place(TPField& u);
void inverse_in_place(TPField& w);

/// Per-axis transforms on raw buffers; axis 0 is time, axis i >= 1 is the
/// spatial axis i-1. Used by the half-space pipeline for mixed
/// (tangential-spectral, normal-physical) representations.
void transform_axis(std::vector<cplx>& data, const GroupGrid& grid, int axis, bool to_spectral);

}  // namespace tppar
