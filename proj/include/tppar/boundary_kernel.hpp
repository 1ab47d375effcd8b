#pragma once

#include <vector>

#include "tppar/factor_table.hpp"

namespace tppar {

/// Roots closer than kClusterTol*(1 + max|rho|) trigger the contour fallback.
constexpr double kClusterTol = 1e-6;
constexpr int kContourNodes = 256;
constexpr double kTraceCondLimit = 1e10;

/// Corrected boundary kernel of one mode. Column alpha holds L_alpha on the
/// half-axis nodes x_n = j h, j = 0..N_n/2-1; the trace matrix satisfies
/// D_n^beta L_alpha(0) = delta by construction (raw kernels right-multiplied
/// by Ktilde^{-1}).
struct ModeKernel {
    std::vector<cplx> values;      // values[alpha * half_count + j]
    std::vector<cplx> ktilde;      // m x m row-major raw trace matrix
    std::vector<cplx> ktilde_inv;  // its inverse
    bool contour_fallback = false;
};

struct BoundaryKernel {
    GridPtr grid;
    int m = 0;
    int half_count = 0;
    std::vector<ModeKernel> modes;  // boundary-flat indexed
    std::vector<char> retained;
    double min_decay = 0.0;  // min over modes of min Im rho+
};

BoundaryKernel build_boundary_kernel(const OperatorTuple& tuple, const FactorTable& table);

/// Corrected kernel values (L_0..L_{m-1}) at an arbitrary x_n >= 0, following
/// the mode's residue/contour path; used by the finite-difference re-check of
/// the delta-trace identity.
std::vector<cplx> kernel_values_at(const FactorizationEntry& fact, const ModeKernel& mode,
                                   int m, double xn);

/// u2 with hat(u2)(k, xi', x_n) = sum_alpha L_alpha(k, xi', x_n) hat(d_alpha);
/// supported on x_n >= 0, returned physical. d holds m boundary fields with
/// P d = 0 (symbol-trace convention).
TPField lift_dirichlet(std::span<const TPField> d, const BoundaryKernel& kernel);

}  // namespace tppar
