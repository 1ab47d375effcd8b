#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tppar/field.hpp"
#include "tppar/symbol.hpp"

namespace tppar {

enum class Domain { whole, half };

/// Relative interior PDE residual ||op[M]u - f|| / ||f||, measured on the
/// full box for whole-space and on the slab x_n in [L_n/8, 7L_n/8] for
/// half-space (the representation formula is exact only away from the
/// boundary layer and the box edge).
double manufactured_residual(const TPField& u, const TPField& f, const OperatorTuple& tuple,
                             Domain domain);

struct ConvergenceRow {
    int resolution = 0;
    double error = 0.0;
    double order = 0.0;  // log2(e_i / e_{i+1}), 0 for the last row
};

/// error_at(resolution) evaluated for >= 3 resolutions plus empirical orders.
std::vector<ConvergenceRow> convergence_study(const std::function<double(int)>& error_at,
                                              std::span<const int> resolutions);

struct SweepReport {
    int ensemble = 0;
    std::uint64_t seed = 0;
    std::vector<double> ratios;       // base resolution
    std::vector<double> ratios_fine;  // doubled resolution
    double sup = 0.0;
    double sup_fine = 0.0;
    double drift = 0.0;  // |sup_fine - sup| / sup
};

/// Whole-space estimate sweep: random band-limited P_perp data f, u = A^{-1}f,
/// ratios at s = 2m, p; repeated on a grid with doubled counts.
SweepReport estimate_sweep_ws(const DifferentialSymbol& op, GridPtr grid, int ensemble,
                              double p, std::uint64_t seed);

/// Same ensemble restricted to pure single modes; also returns the analytic
/// supremum over the sampled modes for the closed-form cross-check.
SweepReport estimate_sweep_ws_single_modes(const DifferentialSymbol& op, GridPtr grid,
                                           int ensemble, double p, std::uint64_t seed,
                                           double* analytic_sup);

/// Half-space sweep with mixed data: f = (tangential/time band-limited random
/// field) x (Gaussian bump in x_n), g random band-limited boundary fields.
SweepReport estimate_sweep_hs(const OperatorTuple& tuple, GridPtr grid, int ensemble,
                              double p, std::uint64_t seed);

/// Higher-order diagnostic along the regularity bootstrap: slab-measured
/// || op[(i xi_n + |(k,xi')|)^j |(k,xi)|^m] u ||_2 for j = 0..m.
std::vector<double> bootstrap_chain(const TPField& u, const OperatorTuple& tuple);

}  // namespace tppar
