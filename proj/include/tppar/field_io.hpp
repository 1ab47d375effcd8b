#pragma once

#include <string>

#include "tppar/field.hpp"

namespace tppar {

// TPFIELD1 binary layout, little-endian:
//   8 bytes magic "TPFIELD1"
//   u32 version = 1, u32 n, u32 N_t
//   per axis i = 1..n: u32 N_i, f64 L_i
//   f64 T, u8 state (0 physical, 1 spectral)
//   N_t * prod(N_i) complex values as (f64 re, f64 im), time-major row-major.

void write_field(const std::string& path, const TPField& u);

/// Exact round trip; BadMagic / SizeMismatch on malformed files. The grid is
/// reconstructed from the header (no half axis; callers re-attach one).
TPField read_field(const std::string& path);

}  // namespace tppar
