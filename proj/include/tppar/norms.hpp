#pragma once

#include <span>
#include <vector>

#include "tppar/field.hpp"

namespace tppar {

/// |(eta, xi)| = (|eta|^2 + |xi|^{4m})^{1/(4m)}, |xi| Euclidean.
double parabolic_length(double eta, std::span<const double> xi, int m);

/// Riemann-sum L^p norm with weights (1/N_t) * prod(2L_i/N_i); physical state
/// fields are used as-is, spectral inputs are transformed on a copy.
double lp_norm(const TPField& u, double p);

/// Same, restricted to x_n >= 0 (grid must have a half axis).
double lp_norm_half(const TPField& u, double p);

/// Same, restricted to the slab x_n in [lo_frac*L_n, hi_frac*L_n].
double lp_norm_slab(const TPField& u, double p, double lo_frac, double hi_frac);

/// Anisotropic Sobolev norm (||d_t u||_p^p + sum_{|alpha|<=2m} ||d^alpha u||_p^p)^{1/p},
/// derivatives computed spectrally.
double sobolev_norm(const TPField& u, double p, int m);
double sobolev_norm_half(const TPField& u, double p, int m);

/// Bessel-potential norm || op[|(k,xi)|^s] u ||_p; requires P u = 0.
double bessel_norm(const TPField& u, double s, double p, int m);

/// Trace-space proxy norm on the boundary group:
/// ||g||_p + || op[|(k,xi')|^{2m kappa}] g ||_p (exact equivalent at p = 2).
double trace_norm(const TPField& g, double kappa, double p, int m);

/// Trace exponents kappa_j = 1 - m_j/(2m) - 1/(2mp) and
/// iota_j = 1 - (j-1)/(2m) - 1/(2mp); validated to lie in (0,1] on build.
struct TraceSpaceSpec {
    int m;
    double p;
    std::vector<int> mj;
    std::vector<double> kappa;
    std::vector<double> iota;

    TraceSpaceSpec(int m, double p, std::vector<int> boundary_orders);
};

}  // namespace tppar
