#pragma once

#include <span>
#include <vector>

#include "tppar/symbol.hpp"
#include "tppar/types.hpp"

namespace tppar {

/// Roots with |Im rho| <= kRootImagTol*(1+|rho|) are rejected as on-axis.
constexpr double kRootImagTol = 1e-9;

/// Rows of F with |det F| < kDetTol * prod(row 2-norms) count as singular.
constexpr double kDetTol = 1e-8;

/// Wiener-Hopf data of one mode: the 2m roots of z -> i*eta + A^H(xi', z)
/// split by half-plane, the monic factor coefficients (descending, c[0]=1),
/// the leading coefficient a of xi_n^{2m}, and the classification margin.
struct FactorizationEntry {
    std::vector<cplx> rho_plus;   // Im > 0
    std::vector<cplx> rho_minus;  // Im < 0
    std::vector<cplx> c_plus;     // size m+1
    std::vector<cplx> c_minus;    // size m+1
    cplx leading = 1.0;           // a
    double margin = 0.0;          // min |Im rho| over both sets

    cplx eval_plus(cplx z) const;   // monic M_+(z)
    cplx eval_minus(cplx z) const;  // monic M_-(z)
};

struct RootSplit {
    std::vector<cplx> plus, minus;
    cplx leading;
    double margin;
};

/// Splits the roots of z -> shift + A^H(xi', z) by the sign of Im.
/// Throws RootOnRealAxis / WrongSplit per the classification tolerance.
RootSplit split_roots_shifted(const DifferentialSymbol& principal, cplx shift,
                              std::span<const double> xi_prime);

/// split_roots for the parabolic symbol: shift = i*eta.
RootSplit split_roots(const DifferentialSymbol& principal, double eta,
                      std::span<const double> xi_prime);

FactorizationEntry factorize_mode(const DifferentialSymbol& principal, double eta,
                                  std::span<const double> xi_prime);

/// Characteristic matrix at one mode: row j holds the remainder coefficients
/// of z -> B_{j+1}^H(xi', z) modulo M_+(eta, xi', z). Row-major m x m storage.
struct CharMatrixEntry {
    int m = 0;
    std::vector<cplx> F;      // F[j*m + l]
    std::vector<cplx> F_inv;  // filled when invert succeeded
    double cond = 0.0;        // ||F|| * ||F^-1|| (Frobenius)
    double scaled_det = 0.0;  // |det F| / prod(row norms)

    cplx f(int j, int l) const { return F[static_cast<std::size_t>(j) * m + l]; }
    cplx finv(int j, int l) const { return F_inv[static_cast<std::size_t>(j) * m + l]; }
};

/// Builds F and its inverse (LU with partial pivoting). Throws
/// SingularCharMatrix when |det F| < kDetTol * prod(row norms).
CharMatrixEntry char_matrix(const OperatorTuple& tuple, double eta,
                            std::span<const double> xi_prime,
                            const FactorizationEntry& fact);

/// F rows only, no inversion; used by the complementing checker.
CharMatrixEntry char_matrix_rows(const OperatorTuple& tuple,
                                 std::span<const double> xi_prime,
                                 std::span<const cplx> c_plus);

}  // namespace tppar
