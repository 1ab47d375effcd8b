#pragma once

#include "tppar/field.hpp"
#include "tppar/symbol.hpp"

namespace tppar {

/// d_t u + A u = f on T x R^n for purely oscillatory data, inverted mode-wise
/// through M(k, xi) = ik + A(xi). The full symbol (lower-order terms included)
/// is inverted directly; construction scans every retained mode against the
/// invertibility floor |M| >= 1e-12 (1 + |(k,xi)|^{2m}).
struct WholeSpaceProblem {
    DifferentialSymbol op;
    GridPtr grid;
    TPField f;

    WholeSpaceProblem(DifferentialSymbol op_, GridPtr grid_, TPField f_);
};

/// u with hat(u) = hat(f)/M on retained modes, k = 0 plane zero; physical state.
TPField solve_wholespace(const WholeSpaceProblem& prob);

/// ||op[M]u - P_perp f||_2 / ||P_perp f||_2.
double residual_wholespace(const TPField& u, const TPField& f, const DifferentialSymbol& op);

/// bessel(u,s) / (bessel(op[M]u, s-2m) + bessel(u, s-1)); +inf when the
/// denominator vanishes (u = 0 is excluded by the precondition).
double estimate_ratio_ws(const TPField& u, const DifferentialSymbol& op, double s, double p);

}  // namespace tppar
