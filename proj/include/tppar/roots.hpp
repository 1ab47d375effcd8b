#pragma once

#include <span>
#include <vector>

#include "tppar/types.hpp"

namespace tppar {

/// All complex roots of the polynomial with ascending coefficients, computed
/// as eigenvalues of the balanced companion matrix. Leading coefficient must
/// be nonzero relative to the coefficient scale; degree 0 yields no roots.
std::vector<cplx> poly_roots(std::span<const cplx> ascending);

}  // namespace tppar
