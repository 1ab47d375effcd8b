#include "tppar/boundary_kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tppar/errors.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/parallel.hpp"
#include "tppar/polynomial.hpp"
#include "tppar/transform.hpp"

namespace tppar {

namespace {

const cplx I(0.0, 1.0);

/// Numerator N_alpha(z) = sum_{l=0}^{m-alpha-1} c_l^+ z^{m-alpha-l-1},
/// ascending coefficients.
std::vector<cplx> kernel_numerator(std::span<const cplx> c_plus, int m, int alpha) {
    std::vector<cplx> num(m - alpha, cplx(0.0));
    for (int l = 0; l <= m - alpha - 1; ++l) num[m - alpha - l - 1] = c_plus[l];
    return num;
}

bool roots_clustered(std::span<const cplx> roots) {
    double max_abs = 0.0;
    for (cplx r : roots) max_abs = std::max(max_abs, std::abs(r));
    const double tol = kClusterTol * (1.0 + max_abs);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= tol) return true;
    return false;
}

/// Raw kernel column values L~_alpha at the requested points, plus the raw
/// trace rows K~_{beta alpha} = D_n^beta L~_alpha(0).
struct RawKernel {
    std::vector<std::vector<cplx>> columns;  // [alpha][point]
    std::vector<cplx> ktilde;                // m x m row-major, [beta*m + alpha]
    bool contour = false;
};

RawKernel raw_kernel(const FactorizationEntry& fact, int m, std::span<const double> points) {
    RawKernel out;
    out.columns.assign(m, std::vector<cplx>(points.size(), cplx(0.0)));
    out.ktilde.assign(static_cast<std::size_t>(m) * m, cplx(0.0));
    out.contour = roots_clustered(fact.rho_plus);

    std::vector<std::vector<cplx>> numerators;
    numerators.reserve(m);
    for (int alpha = 0; alpha < m; ++alpha)
        numerators.push_back(kernel_numerator(fact.c_plus, m, alpha));

    if (!out.contour) {
        // Residues at the simple roots: N_alpha(rho) e^{i x rho} / M_+'(rho).
        std::vector<cplx> mplus = descending_to_ascending(fact.c_plus);
        std::vector<cplx> dmplus = poly_derivative(mplus);
        for (cplx rho : fact.rho_plus) {
            const cplx dval = poly_eval(dmplus, rho);
            for (int alpha = 0; alpha < m; ++alpha) {
                const cplx base = poly_eval(numerators[alpha], rho) / dval;
                for (std::size_t j = 0; j < points.size(); ++j)
                    out.columns[alpha][j] += base * std::exp(I * points[j] * rho);
                cplx zb = base;
                for (int beta = 0; beta < m; ++beta) {
                    out.ktilde[static_cast<std::size_t>(beta) * m + alpha] += zb;
                    zb *= rho;
                }
            }
        }
        return out;
    }

    // Clustered roots: trapezoid contour quadrature on a circle through the
    // root centroid. e^{i x z} stays bounded only while the contour remains
    // close to the cluster, which is exactly the regime that triggers this
    // path.
    cplx center = 0.0;
    double max_abs = 0.0;
    for (cplx r : fact.rho_plus) {
        center += r;
        max_abs = std::max(max_abs, std::abs(r));
    }
    center /= double(m);
    const double radius = 2.0 * max_abs;
    std::vector<cplx> mplus = descending_to_ascending(fact.c_plus);
    for (int qn = 0; qn < kContourNodes; ++qn) {
        const double theta = 2.0 * kPi * qn / kContourNodes;
        const cplx zq = center + radius * std::exp(I * theta);
        const cplx jac = radius * std::exp(I * theta) / double(kContourNodes);
        const cplx mval = poly_eval(mplus, zq);
        for (int alpha = 0; alpha < m; ++alpha) {
            const cplx base = poly_eval(numerators[alpha], zq) / mval * jac;
            for (std::size_t j = 0; j < points.size(); ++j)
                out.columns[alpha][j] += base * std::exp(I * points[j] * zq);
            cplx zb = base;
            for (int beta = 0; beta < m; ++beta) {
                out.ktilde[static_cast<std::size_t>(beta) * m + alpha] += zb;
                zb *= zq;
            }
        }
    }
    return out;
}

std::vector<cplx> invert_trace(const std::vector<cplx>& ktilde, int m) {
    Eigen::MatrixXcd K(m, m);
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < m; ++a) K(b, a) = ktilde[static_cast<std::size_t>(b) * m + a];
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(K);
    Eigen::MatrixXcd inv = lu.inverse();
    const double cond = K.norm() * inv.norm();
    if (!(cond < kTraceCondLimit))
        throw IllConditionedTrace("raw trace matrix condition " + fmt_float(cond));
    std::vector<cplx> out(static_cast<std::size_t>(m) * m);
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < m; ++a) out[static_cast<std::size_t>(b) * m + a] = inv(b, a);
    return out;
}

}  // namespace

BoundaryKernel build_boundary_kernel(const OperatorTuple& tuple, const FactorTable& table) {
    const GroupGrid& g = *table.grid;
    const int axis = *g.half_axis();
    const int m = tuple.half_order();
    BoundaryKernel kernel;
    kernel.grid = table.grid;
    kernel.m = m;
    kernel.half_count = g.axis(axis).count / 2;
    kernel.modes.assign(table.entries.size(), ModeKernel{});
    kernel.retained = table.retained;
    kernel.min_decay = std::numeric_limits<double>::infinity();

    const double h = g.axis_spacing(axis);
    std::vector<double> points(kernel.half_count);
    for (int j = 0; j < kernel.half_count; ++j) points[j] = j * h;

    std::vector<std::size_t> todo;
    for (std::size_t f = 0; f < table.entries.size(); ++f)
        if (table.retained[f]) todo.push_back(f);

    std::vector<std::string> failure(todo.size());
    parallel_for(todo.size(), [&](std::size_t i) {
        try {
            const FactorizationEntry& fact = table.at(todo[i]);
            RawKernel raw = raw_kernel(fact, m, points);
            ModeKernel mk;
            mk.contour_fallback = raw.contour;
            mk.ktilde = raw.ktilde;
            mk.ktilde_inv = invert_trace(raw.ktilde, m);
            // L = L~ * K~^{-1}
            mk.values.assign(static_cast<std::size_t>(m) * points.size(), cplx(0.0));
            for (int alpha = 0; alpha < m; ++alpha)
                for (std::size_t j = 0; j < points.size(); ++j) {
                    cplx acc = 0.0;
                    for (int b = 0; b < m; ++b)
                        acc += raw.columns[b][j] *
                               mk.ktilde_inv[static_cast<std::size_t>(b) * m + alpha];
                    mk.values[static_cast<std::size_t>(alpha) * points.size() + j] = acc;
                }
            kernel.modes[todo[i]] = std::move(mk);
        } catch (const Error& e) {
            failure[i] = e.what();
        }
    });
    for (const auto& msg : failure)
        if (!msg.empty()) throw IllConditionedTrace("boundary kernel: " + msg);

    for (std::size_t f : todo) {
        double dmin = std::numeric_limits<double>::infinity();
        for (cplx r : table.at(f).rho_plus) dmin = std::min(dmin, r.imag());
        kernel.min_decay = std::min(kernel.min_decay, dmin);
    }
    return kernel;
}

std::vector<cplx> kernel_values_at(const FactorizationEntry& fact, const ModeKernel& mode,
                                   int m, double xn) {
    double point[1] = {xn};
    RawKernel raw = raw_kernel(fact, m, std::span<const double>(point, 1));
    std::vector<cplx> out(m, cplx(0.0));
    for (int alpha = 0; alpha < m; ++alpha)
        for (int b = 0; b < m; ++b)
            out[alpha] += raw.columns[b][0] * mode.ktilde_inv[static_cast<std::size_t>(b) * m + alpha];
    return out;
}

TPField lift_dirichlet(std::span<const TPField> d, const BoundaryKernel& kernel) {
    const GroupGrid& g = *kernel.grid;
    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    const int m = kernel.m;
    if (static_cast<int>(d.size()) != m)
        throw DimensionMismatch("lift_dirichlet: expected m boundary fields");
    GridPtr bgrid = g.boundary();
    std::vector<TPField> dspec;
    dspec.reserve(m);
    for (const TPField& dj : d) {
        if (!dj.grid()->same_layout(*bgrid))
            throw DimensionMismatch("lift_dirichlet: boundary field on the wrong grid");
        if (mean_fraction(dj) > 1e-12)
            throw MeanNotZero("lift_dirichlet: boundary data has a nonzero time mean");
        dspec.push_back(dj.state() == FieldState::spectral ? dj : forward(dj));
    }

    TPField mixed(kernel.grid, FieldState::physical);  // spectral tangentially below
    const int half = kernel.half_count;
    for_each_boundary_mode(g, [&](std::size_t bflat, double, std::span<const double>,
                                  bool retained) {
        if (!retained || !kernel.retained[bflat]) return;
        const ModeKernel& mk = kernel.modes[bflat];
        cplx* line = mixed.data().data() + bflat * nn;
        for (int alpha = 0; alpha < m; ++alpha) {
            const cplx amp = dspec[alpha][bflat];
            if (amp == cplx(0.0)) continue;
            const cplx* col = mk.values.data() + static_cast<std::size_t>(alpha) * half;
            for (int j = 0; j < half; ++j) line[nn / 2 + j] += amp * col[j];
        }
    });
    // tangential + time axes back to physical; x_n already physical
    for (int ax = 0; ax < g.dim(); ++ax) transform_axis(mixed.data(), g, ax, false);
    return mixed;
}

}  // namespace tppar
