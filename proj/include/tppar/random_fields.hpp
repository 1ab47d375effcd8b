#pragma once

#include <cstdint>

#include "tppar/field.hpp"

namespace tppar {

/// Purely oscillatory random band-limited field: independent complex Gaussian
/// coefficients on modes with 1 <= |k index| <= k_band and |xi index| <= q_band
/// (never the k = 0 plane, never Nyquist). Returned in physical state.
/// Deterministic in (grid shape, seed, bands); the same seed and bands on a
/// refined grid reproduce the same continuum field.
TPField random_band_limited(GridPtr grid, std::uint64_t seed, int k_band, int q_band);

/// Boundary-grid variant (same convention, n-1 spatial axes).
TPField random_band_limited_boundary(GridPtr boundary_grid, std::uint64_t seed, int k_band,
                                     int q_band);

}  // namespace tppar
