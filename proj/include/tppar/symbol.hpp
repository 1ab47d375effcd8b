#pragma once

#include <map>
#include <span>
#include <vector>

#include "tppar/types.hpp"

namespace tppar {

/// Constant-coefficient differential symbol A(xi) = sum a_alpha xi^alpha.
/// The operator convention is D_j = -i d/dx_j, so op[A(xi)] realizes A(D) and
/// op[ik + A(xi)] realizes d/dt + A(D).
class DifferentialSymbol {
public:
    DifferentialSymbol(int dimension, int order, std::map<MultiIndex, cplx> coeffs);

    int dimension() const { return dimension_; }
    int order() const { return order_; }
    const std::map<MultiIndex, cplx>& coefficients() const { return coeffs_; }

    /// Restriction to |alpha| = order.
    DifferentialSymbol principal_part() const;

    bool is_homogeneous() const;

    /// Symbol magnitude scale (max |a_alpha|), used for relative tolerances.
    double coefficient_scale() const;

    cplx eval(std::span<const double> xi) const;
    /// Evaluation with complex last component: xi = (xi', z).
    cplx eval(std::span<const double> xi_prime, cplx z) const;

    /// Coefficients of z -> A(xi', z), ascending in z, size order+1.
    std::vector<cplx> normal_poly(std::span<const double> xi_prime) const;

    // Common test operators. laplacian_power(n, q) has symbol |xi|^{2q};
    // normal_derivative(n, j) has symbol xi_n^j (the boundary operator D_n^j).
    static DifferentialSymbol laplacian_power(int dimension, int power, cplx scale = 1.0);
    static DifferentialSymbol normal_derivative(int dimension, int j);
    static DifferentialSymbol tangential_derivative(int dimension, int axis);

private:
    int dimension_;
    int order_;
    std::map<MultiIndex, cplx> coeffs_;
};

/// (A, B_1, ..., B_m): interior operator of order 2m plus m boundary operators.
struct OperatorTuple {
    DifferentialSymbol interior;
    std::vector<DifferentialSymbol> boundary;

    OperatorTuple(DifferentialSymbol interior_, std::vector<DifferentialSymbol> boundary_);

    int dimension() const { return interior.dimension(); }
    int half_order() const { return interior.order() / 2; }  // m
    int boundary_order(int j) const { return boundary[j].order(); }  // m_{j+1}

    /// Dirichlet tuple for the given interior operator: B_j = D_n^{j-1}.
    static OperatorTuple dirichlet(DifferentialSymbol interior_);
    bool is_dirichlet() const;
};

}  // namespace tppar
