#include "tppar/ode_oracle.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "tppar/boundary_values.hpp"
#include "tppar/errors.hpp"
#include "tppar/factorization.hpp"

namespace tppar {

namespace {
const cplx I(0.0, 1.0);
}

ModeODEProblem::ModeODEProblem(double k_, std::vector<double> xi_prime_, OperatorTuple tuple_,
                               std::vector<cplx> rhs_, std::vector<cplx> bc_, double X_max_,
                               int N_ode_)
    : k(k_),
      xi_prime(std::move(xi_prime_)),
      tuple(std::move(tuple_)),
      rhs(std::move(rhs_)),
      bc(std::move(bc_)),
      X_max(X_max_),
      N_ode(N_ode_) {
    if (static_cast<int>(rhs.size()) != N_ode + 1)
        throw DimensionMismatch("mode ODE: rhs must hold N_ode + 1 samples");
    if (static_cast<int>(bc.size()) != tuple.half_order())
        throw DimensionMismatch("mode ODE: expected m boundary values");
    if (!(X_max > 0.0) || N_ode < 16) throw InvalidGrid("mode ODE: bad grid");
    // Far-boundary contamination bound: X_max * min root margin >= 18.
    auto split = split_roots(tuple.interior.principal_part(), k, xi_prime);
    if (X_max * split.margin < 18.0)
        throw InvalidGrid("mode ODE: X_max * root margin = " +
                          fmt_float(X_max * split.margin) + " < 18");
}

std::vector<cplx> ode_oracle(const ModeODEProblem& prob) {
    const int m = prob.tuple.half_order();
    const int n_pts = prob.N_ode + 1;
    const double h = prob.X_max / prob.N_ode;

    std::vector<cplx> apoly = prob.tuple.interior.normal_poly(prob.xi_prime);
    const int two_m = prob.tuple.interior.order();

    using Trip = Eigen::Triplet<cplx>;
    std::vector<Trip> trips;
    Eigen::VectorXcd rhs(n_pts);
    rhs.setZero();

    std::vector<double> nodes;
    int row = 0;

    // m boundary rows at x = 0: B_j(xi', D_n) u(0) = bc_j.
    for (int j = 0; j < m; ++j, ++row) {
        std::vector<cplx> bpoly = prob.tuple.boundary[j].normal_poly(prob.xi_prime);
        std::vector<cplx> coeff;
        for (int d = 0; d < static_cast<int>(bpoly.size()); ++d) {
            if (bpoly[d] == cplx(0.0) && d > 0) continue;
            const int stencil = d + kBoundaryFdOrder;
            nodes.assign(stencil, 0.0);
            for (int s = 0; s < stencil; ++s) nodes[s] = s * h;
            auto w = fornberg_weights(0.0, nodes, d);
            const cplx factor = bpoly[d] * std::pow(-I, d);
            if (static_cast<int>(coeff.size()) < stencil) coeff.resize(stencil, cplx(0.0));
            for (int s = 0; s < stencil; ++s) coeff[s] += factor * w[s];
        }
        double row_norm = 0.0;
        for (std::size_t s = 0; s < coeff.size(); ++s) row_norm += std::norm(coeff[s]);
        if (row_norm < 1e-24)
            throw SingularSystem("mode ODE: boundary row " + std::to_string(j + 1) +
                                 " vanishes (complementing failure at this mode)");
        for (std::size_t s = 0; s < coeff.size(); ++s)
            if (coeff[s] != cplx(0.0)) trips.emplace_back(row, static_cast<int>(s), coeff[s]);
        rhs(row) = prob.bc[j];
    }

    // Interior rows i = m .. N-m: ik u + sum_d apoly[d] (-i)^d d^d u = rhs_i.
    for (int i = m; i <= prob.N_ode - m; ++i, ++row) {
        for (int d = 0; d <= two_m; ++d) {
            if (apoly[d] == cplx(0.0) && d > 0) continue;
            const cplx factor = apoly[d] * std::pow(-I, d);
            if (d == 0) {
                trips.emplace_back(row, i, factor);
                continue;
            }
            const int stencil = std::min(d + kBoundaryFdOrder, n_pts);
            int start = std::clamp(i - stencil / 2, 0, n_pts - stencil);
            nodes.assign(stencil, 0.0);
            for (int s = 0; s < stencil; ++s) nodes[s] = (start + s) * h;
            auto w = fornberg_weights(i * h, nodes, d);
            for (int s = 0; s < stencil; ++s)
                trips.emplace_back(row, start + s, factor * w[s]);
        }
        trips.emplace_back(row, i, I * prob.k);
        rhs(row) = prob.rhs[i];
    }

    // m clamped rows at X_max: d^beta u(X_max) = 0, beta = 0..m-1.
    for (int beta = 0; beta < m; ++beta, ++row) {
        const int stencil = beta + kBoundaryFdOrder;
        const int start = n_pts - stencil;
        nodes.assign(stencil, 0.0);
        for (int s = 0; s < stencil; ++s) nodes[s] = (start + s) * h;
        auto w = fornberg_weights(prob.X_max, nodes, beta);
        for (int s = 0; s < stencil; ++s)
            trips.emplace_back(row, start + s, cplx(w[s], 0.0));
        rhs(row) = 0.0;
    }

    Eigen::SparseMatrix<cplx> A(n_pts, n_pts);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw SingularSystem("mode ODE: sparse factorization failed at k = " +
                             fmt_float(prob.k));
    Eigen::VectorXcd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw SingularSystem("mode ODE: solve failed at k = " + fmt_float(prob.k));

    std::vector<cplx> out(n_pts);
    for (int i = 0; i < n_pts; ++i) out[i] = sol(i);
    return out;
}

cplx analytic_heat_halfspace(double k, std::span<const double> xi_prime, cplx g0, double xn) {
    DifferentialSymbol heat = DifferentialSymbol::laplacian_power(
        static_cast<int>(xi_prime.size()) + 1, 1);
    auto split = split_roots(heat, k, xi_prime);
    return g0 * std::exp(I * split.plus[0] * xn);
}

}  // namespace tppar
