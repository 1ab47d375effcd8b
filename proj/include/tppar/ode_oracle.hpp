#pragma once

#include <span>
#include <vector>

#include "tppar/symbol.hpp"

namespace tppar {

/// One-mode two-point boundary value problem on [0, X_max]:
///   ik u + A(xi', D_n) u = rhs,  B_j u(0) = bc_j,  clamped at X_max.
/// Solved by order-6 finite differences and a sparse direct solve; shares no
/// code with the half-space solver beyond symbol evaluation.
struct ModeODEProblem {
    double k = 0.0;
    std::vector<double> xi_prime;
    OperatorTuple tuple;
    std::vector<cplx> rhs;  // N_ode + 1 samples on the uniform grid
    std::vector<cplx> bc;   // m values of B_j u(0), symbol-trace convention
    double X_max = 0.0;
    int N_ode = 0;

    ModeODEProblem(double k_, std::vector<double> xi_prime_, OperatorTuple tuple_,
                   std::vector<cplx> rhs_, std::vector<cplx> bc_, double X_max_, int N_ode_);
};

/// u samples at the N_ode + 1 grid points. SingularSystem when the mode's
/// boundary conditions are degenerate (complementing failure).
std::vector<cplx> ode_oracle(const ModeODEProblem& prob);

/// Closed-form heat mode solution g0 e^{i rho+ x_n} with rho+ the upper root
/// of ik + |xi'|^2 + z^2.
cplx analytic_heat_halfspace(double k, std::span<const double> xi_prime, cplx g0, double xn);

}  // namespace tppar
