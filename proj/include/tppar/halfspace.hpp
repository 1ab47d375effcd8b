#pragma once

#include <span>
#include <vector>

#include "tppar/boundary_kernel.hpp"
#include "tppar/ellipticity.hpp"
#include "tppar/factor_table.hpp"
#include "tppar/norms.hpp"

namespace tppar {

enum class BcKind { dirichlet, general };

/// d_t u + A^H u = f on T x R^n_+, B_j u = g_j on the boundary. Construction
/// validates the structural conditions (complementing on theta = +-pi/2 for
/// general boundary operators) and the zero-mean preconditions.
struct HalfSpaceProblem {
    OperatorTuple tuple;
    GridPtr grid;
    TPField f;                 // full-box representation, data on x_n >= 0
    std::vector<TPField> g;    // m boundary fields (symbol-trace convention)
    BcKind bc = BcKind::dirichlet;
    EllipticityReport report;  // structural checks run at construction
    // Set when the predicted kernel decay e^{-margin L_n} at the slowest
    // retained mode exceeds 1e-8; choose L_n >= 18/margin to clear it.
    bool truncation_warning = false;

    HalfSpaceProblem(OperatorTuple tuple_, GridPtr grid_, TPField f_,
                     std::vector<TPField> g_, BcKind bc_,
                     const SamplingPolicy& policy = SamplingPolicy{});
};

/// A_+^{-1} Y_+ A_-^{-1} f, restricted to x_n >= 0. When leakage is non-null
/// it receives ||u||_{x_n<0} / ||u|| measured before the final restriction
/// (the discrete Paley-Wiener defect).
TPField solve_zero_trace(const TPField& f, const FactorTable& table,
                         double* leakage = nullptr);

/// op[F^{-1}] g / op[F] d as boundary-field multipliers built from the
/// characteristic matrix at every retained mode.
std::vector<TPField> apply_char_inverse(std::span<const TPField> g, const OperatorTuple& tuple,
                                        const FactorTable& table);
std::vector<TPField> apply_char(std::span<const TPField> d, const OperatorTuple& tuple,
                                const FactorTable& table);

/// Full solve: u1 = zero-trace lift of f, Dirichlet data d = op[F^{-1}](g - B u1),
/// u2 = kernel lift of d.
TPField solve_general(const HalfSpaceProblem& prob, const FactorTable& table,
                      const BoundaryKernel& kernel);

/// sobolev_half(u) / (lp_half(f) + sum_j trace_norm(g_j, kappa_j)); +inf when
/// the denominator vanishes.
double estimate_ratio_hs(const TPField& u, const TPField& f, std::span<const TPField> g,
                         double p, const TraceSpaceSpec& spec);

}  // namespace tppar
