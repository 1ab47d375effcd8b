#include "tppar/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tppar/errors.hpp"

namespace tppar {

namespace {

// Parlett-Reinsch balancing with powers of 2: similarity scaling D^-1 A D that
// equalizes row/column 1-norms without rounding error.
void balance(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s && f != 1.0) {
                converged = false;
                a.col(i) *= f;
                a.row(i) /= f;
            }
        }
    }
}

}  // namespace

std::vector<cplx> poly_roots(std::span<const cplx> coeffs) {
    // Trim trailing coefficients that are negligible against the scale.
    double scale = 0.0;
    for (cplx c : coeffs) scale = std::max(scale, std::abs(c));
    std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    while (deg > 0 && std::abs(coeffs[deg]) <= 1e-14 * scale) --deg;
    if (deg == 0) return {};
    const cplx lead = coeffs[deg];

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (std::size_t j = 0; j + 1 < deg; ++j) comp(j + 1, j) = 1.0;
    for (std::size_t j = 0; j < deg; ++j) comp(j, deg - 1) = -coeffs[j] / lead;
    balance(comp);

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(comp, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw SingularSystem("companion-matrix eigenvalue iteration failed");

    std::vector<cplx> roots(deg);
    for (std::size_t j = 0; j < deg; ++j) roots[j] = schur.matrixT()(j, j);
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace tppar
