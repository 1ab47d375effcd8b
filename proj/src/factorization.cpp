#include "tppar/factorization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tppar/errors.hpp"
#include "tppar/polynomial.hpp"
#include "tppar/roots.hpp"

namespace tppar {

namespace {

std::string mode_label(cplx shift, std::span<const double> xi_prime) {
    std::ostringstream os;
    os << "shift=(" << shift.real() << "," << shift.imag() << "), xi'=(";
    for (std::size_t j = 0; j < xi_prime.size(); ++j)
        os << (j ? "," : "") << xi_prime[j];
    os << ")";
    return os.str();
}

cplx eval_descending(std::span<const cplx> c, cplx z) {
    cplx acc = 0.0;
    for (cplx coeff : c) acc = acc * z + coeff;
    return acc;
}

}  // namespace

cplx FactorizationEntry::eval_plus(cplx z) const { return eval_descending(c_plus, z); }
cplx FactorizationEntry::eval_minus(cplx z) const { return eval_descending(c_minus, z); }

RootSplit split_roots_shifted(const DifferentialSymbol& principal, cplx shift,
                              std::span<const double> xi_prime) {
    const int two_m = principal.order();
    std::vector<cplx> p = principal.normal_poly(xi_prime);
    p[0] += shift;

    const double scale = principal.coefficient_scale();
    if (std::abs(p[two_m]) <= 1e-12 * scale)
        throw DegenerateRoot("leading coefficient a of xi_n^{2m} vanishes at " +
                             mode_label(shift, xi_prime));

    std::vector<cplx> roots = poly_roots(p);
    RootSplit out;
    out.leading = p[two_m];
    out.margin = std::numeric_limits<double>::infinity();
    for (cplx r : roots) {
        const double tol = kRootImagTol * (1.0 + std::abs(r));
        if (std::abs(r.imag()) < tol)
            throw RootOnRealAxis("root " + fmt_cplx(r) + " within " + fmt_float(tol) +
                                 " of the real axis at " + mode_label(shift, xi_prime));
        out.margin = std::min(out.margin, std::abs(r.imag()));
        (r.imag() > 0 ? out.plus : out.minus).push_back(r);
    }
    const int m = two_m / 2;
    if (static_cast<int>(out.plus.size()) != m || static_cast<int>(out.minus.size()) != m) {
        std::ostringstream os;
        os << "expected " << m << "/" << m << " split, got " << out.plus.size() << "/"
           << out.minus.size() << " at " << mode_label(shift, xi_prime);
        throw WrongSplit(os.str());
    }
    auto canonical = [](std::vector<cplx>& v) {
        std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
    };
    canonical(out.plus);
    canonical(out.minus);
    return out;
}

RootSplit split_roots(const DifferentialSymbol& principal, double eta,
                      std::span<const double> xi_prime) {
    return split_roots_shifted(principal, cplx(0.0, eta), xi_prime);
}

FactorizationEntry factorize_mode(const DifferentialSymbol& principal, double eta,
                                  std::span<const double> xi_prime) {
    RootSplit s = split_roots(principal, eta, xi_prime);
    FactorizationEntry e;
    e.rho_plus = std::move(s.plus);
    e.rho_minus = std::move(s.minus);
    e.c_plus = half_symbol_coeffs(e.rho_plus);
    e.c_minus = half_symbol_coeffs(e.rho_minus);
    e.leading = s.leading;
    e.margin = s.margin;
    return e;
}

CharMatrixEntry char_matrix_rows(const OperatorTuple& tuple,
                                 std::span<const double> xi_prime,
                                 std::span<const cplx> c_plus) {
    const int m = tuple.half_order();
    std::vector<cplx> mplus = descending_to_ascending(c_plus);
    CharMatrixEntry out;
    out.m = m;
    out.F.assign(static_cast<std::size_t>(m) * m, cplx(0.0));
    for (int j = 0; j < m; ++j) {
        std::vector<cplx> bj =
            tuple.boundary[j].principal_part().normal_poly(xi_prime);
        std::vector<cplx> rem = poly_mod(bj, mplus);
        for (int l = 0; l < m && l < static_cast<int>(rem.size()); ++l)
            out.F[static_cast<std::size_t>(j) * m + l] = rem[l];
    }
    // Scaled determinant for the complementing test.
    Eigen::MatrixXcd F(m, m);
    double row_prod = 1.0;
    for (int j = 0; j < m; ++j) {
        double rn = 0.0;
        for (int l = 0; l < m; ++l) {
            F(j, l) = out.f(j, l);
            rn += std::norm(out.f(j, l));
        }
        row_prod *= std::sqrt(rn);
    }
    const double det = std::abs(F.determinant());
    out.scaled_det = row_prod > 0.0 ? det / row_prod : 0.0;
    return out;
}

CharMatrixEntry char_matrix(const OperatorTuple& tuple, double eta,
                            std::span<const double> xi_prime,
                            const FactorizationEntry& fact) {
    CharMatrixEntry out = char_matrix_rows(tuple, xi_prime, fact.c_plus);
    const int m = out.m;
    Eigen::MatrixXcd F(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) F(j, l) = out.f(j, l);

    if (out.scaled_det < kDetTol) {
        std::ostringstream os;
        os << "characteristic matrix singular (scaled det " << fmt_float(out.scaled_det)
           << ") at eta=" << eta << ", xi'=(";
        for (std::size_t t = 0; t < xi_prime.size(); ++t)
            os << (t ? "," : "") << xi_prime[t];
        os << ")";
        throw SingularCharMatrix(os.str());
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(F);
    Eigen::MatrixXcd inv = lu.inverse();
    out.F_inv.assign(static_cast<std::size_t>(m) * m, cplx(0.0));
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) out.F_inv[static_cast<std::size_t>(j) * m + l] = inv(j, l);
    out.cond = F.norm() * inv.norm();
    return out;
}

}  // namespace tppar
