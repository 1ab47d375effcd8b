#include "tppar/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tppar/errors.hpp"

namespace tppar {

DifferentialSymbol::DifferentialSymbol(int dimension, int order,
                                       std::map<MultiIndex, cplx> coeffs)
    : dimension_(dimension), order_(order), coeffs_(std::move(coeffs)) {
    if (dimension < 1) throw DimensionMismatch("symbol dimension must be >= 1");
    if (order < 0) throw DimensionMismatch("symbol order must be >= 0");
    for (const auto& [alpha, a] : coeffs_) {
        if (static_cast<int>(alpha.size()) != dimension)
            throw DimensionMismatch("multi-index length != symbol dimension");
        for (int comp : alpha)
            if (comp < 0) throw DimensionMismatch("negative multi-index entry");
        if (multi_order(alpha) > order)
            throw DimensionMismatch("coefficient order exceeds symbol order");
        (void)a;
    }
}

DifferentialSymbol DifferentialSymbol::principal_part() const {
    std::map<MultiIndex, cplx> principal;
    for (const auto& [alpha, a] : coeffs_)
        if (multi_order(alpha) == order_) principal.emplace(alpha, a);
    return DifferentialSymbol(dimension_, order_, std::move(principal));
}

bool DifferentialSymbol::is_homogeneous() const {
    for (const auto& [alpha, a] : coeffs_) {
        if (multi_order(alpha) != order_ && std::abs(a) != 0.0) return false;
    }
    return true;
}

double DifferentialSymbol::coefficient_scale() const {
    double s = 0.0;
    for (const auto& [alpha, a] : coeffs_) s = std::max(s, std::abs(a));
    return s;
}

cplx DifferentialSymbol::eval(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != dimension_)
        throw DimensionMismatch("eval: argument dimension != symbol dimension");
    cplx acc = 0.0;
    for (const auto& [alpha, a] : coeffs_) {
        double term = 1.0;
        for (int j = 0; j < dimension_; ++j)
            for (int q = 0; q < alpha[j]; ++q) term *= xi[j];
        acc += a * term;
    }
    return acc;
}

cplx DifferentialSymbol::eval(std::span<const double> xi_prime, cplx z) const {
    std::vector<cplx> p = normal_poly(xi_prime);
    cplx acc = p.back();
    for (std::size_t j = p.size() - 1; j-- > 0;) acc = acc * z + p[j];
    return acc;
}

std::vector<cplx> DifferentialSymbol::normal_poly(std::span<const double> xi_prime) const {
    if (static_cast<int>(xi_prime.size()) != dimension_ - 1)
        throw DimensionMismatch("normal_poly: tangential dimension mismatch");
    std::vector<cplx> p(order_ + 1, cplx(0.0));
    for (const auto& [alpha, a] : coeffs_) {
        double tang = 1.0;
        for (int j = 0; j + 1 < dimension_; ++j)
            for (int q = 0; q < alpha[j]; ++q) tang *= xi_prime[j];
        p[alpha[dimension_ - 1]] += a * tang;
    }
    return p;
}

DifferentialSymbol DifferentialSymbol::laplacian_power(int dimension, int power, cplx scale) {
    // |xi|^{2q} = (xi_1^2 + ... + xi_n^2)^q, expanded by multinomial recursion.
    std::map<MultiIndex, cplx> coeffs;
    MultiIndex alpha(dimension, 0);
    // Recursive expansion over q factors.
    std::function<void(int, int, cplx)> expand = [&](int axis, int remaining, cplx c) {
        if (axis == dimension - 1) {
            alpha[axis] = 2 * remaining;
            coeffs[alpha] += c;
            alpha[axis] = 0;
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            // multinomial factor C(remaining, take)
            double binom = 1.0;
            for (int i = 0; i < take; ++i)
                binom = binom * double(remaining - i) / double(i + 1);
            alpha[axis] = 2 * take;
            expand(axis + 1, remaining - take, c * binom);
            alpha[axis] = 0;
        }
    };
    expand(0, power, scale);
    return DifferentialSymbol(dimension, 2 * power, std::move(coeffs));
}

DifferentialSymbol DifferentialSymbol::normal_derivative(int dimension, int j) {
    MultiIndex alpha(dimension, 0);
    alpha[dimension - 1] = j;
    return DifferentialSymbol(dimension, j, {{alpha, cplx(1.0)}});
}

DifferentialSymbol DifferentialSymbol::tangential_derivative(int dimension, int axis) {
    MultiIndex alpha(dimension, 0);
    alpha[axis] = 1;
    return DifferentialSymbol(dimension, 1, {{alpha, cplx(1.0)}});
}

OperatorTuple::OperatorTuple(DifferentialSymbol interior_,
                             std::vector<DifferentialSymbol> boundary_)
    : interior(std::move(interior_)), boundary(std::move(boundary_)) {
    if (interior.order() % 2 != 0)
        throw DimensionMismatch("interior operator order must be even (2m)");
    const int m = interior.order() / 2;
    if (static_cast<int>(boundary.size()) != m)
        throw DimensionMismatch("operator tuple requires exactly m boundary operators");
    for (const auto& b : boundary) {
        if (b.dimension() != interior.dimension())
            throw DimensionMismatch("boundary operator dimension mismatch");
        if (b.order() > 2 * m - 1)
            throw DimensionMismatch("boundary operator order must satisfy m_j <= 2m-1");
    }
}

OperatorTuple OperatorTuple::dirichlet(DifferentialSymbol interior_) {
    const int m = interior_.order() / 2;
    const int n = interior_.dimension();
    std::vector<DifferentialSymbol> bops;
    bops.reserve(m);
    for (int j = 0; j < m; ++j) bops.push_back(DifferentialSymbol::normal_derivative(n, j));
    return OperatorTuple(std::move(interior_), std::move(bops));
}

bool OperatorTuple::is_dirichlet() const {
    const int m = half_order();
    const int n = dimension();
    for (int j = 0; j < m; ++j) {
        MultiIndex alpha(n, 0);
        alpha[n - 1] = j;
        const auto& coeffs = boundary[j].coefficients();
        if (boundary[j].order() != j) return false;
        if (coeffs.size() != 1) return false;
        auto it = coeffs.find(alpha);
        if (it == coeffs.end() || std::abs(it->second - cplx(1.0)) > 0.0) return false;
    }
    return true;
}

}  // namespace tppar
