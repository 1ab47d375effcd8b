#include "tppar/half_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tppar/boundary_values.hpp"
#include "tppar/errors.hpp"
#include "tppar/factor_table.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/norms.hpp"
#include "tppar/transform.hpp"

namespace tppar {

namespace {

const cplx I(0.0, 1.0);

/// Per-node FD weight table for one derivative order on a uniform half
/// segment: row j holds the stencil (start offset + weights) at node j.
struct FdRows {
    int stencil = 1;
    std::vector<int> start;              // per node
    std::vector<std::vector<double>> w;  // per node
};

FdRows fd_rows(int half, double h, int order) {
    FdRows rows;
    if (order == 0) return rows;
    rows.stencil = std::min(order + kBoundaryFdOrder, half);
    rows.start.resize(half);
    rows.w.resize(half);
    std::vector<double> nodes(rows.stencil);
    for (int j = 0; j < half; ++j) {
        int start = std::clamp(j - (rows.stencil - 1) / 2, 0, half - rows.stencil);
        rows.start[j] = start;
        for (int s = 0; s < rows.stencil; ++s) nodes[s] = (start + s) * h;
        rows.w[j] = fornberg_weights(j * h, nodes, order);
    }
    return rows;
}

}  // namespace

TPField half_derivative(const TPField& u, const MultiIndex& alpha, int time_order) {
    const GroupGrid& g = *u.grid();
    if (!g.half_axis()) throw InvalidGrid("half_derivative: grid has no half axis");
    const int n = g.dim();
    if (static_cast<int>(alpha.size()) != n)
        throw DimensionMismatch("half_derivative: multi-index dimension mismatch");
    require_state(u, FieldState::physical, "half_derivative");

    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    const int half = nn / 2;
    const double h = g.axis_spacing(axis);
    const int d_normal = alpha[n - 1];

    std::vector<cplx> mixed = u.data();
    for (int ax = 0; ax < n; ++ax) transform_axis(mixed, g, ax, true);

    FdRows rows = fd_rows(half, h, d_normal);
    TPField out(u.grid(), FieldState::physical);
    std::vector<cplx> seg(half);
    for_each_boundary_mode(g, [&](std::size_t bflat, double k,
                                  std::span<const double> xi_prime, bool retained) {
        cplx* dst = out.data().data() + bflat * nn;
        if (!retained) return;  // k = 0 and Nyquist planes stay zero
        const cplx* line = mixed.data() + bflat * nn + half;  // x_n >= 0 nodes
        // tangential and time factors
        cplx factor = 1.0;
        for (int t = 0; t < time_order; ++t) factor *= I * k;
        for (int i = 0; i + 1 < n; ++i)
            for (int q = 0; q < alpha[i]; ++q) factor *= I * xi_prime[i];
        if (d_normal == 0) {
            for (int j = 0; j < half; ++j) dst[half + j] = factor * line[j];
            return;
        }
        for (int j = 0; j < half; ++j) {
            cplx acc = 0.0;
            const auto& w = rows.w[j];
            const int start = rows.start[j];
            for (int s = 0; s < rows.stencil; ++s) acc += w[s] * line[start + s];
            seg[j] = acc;
        }
        for (int j = 0; j < half; ++j) dst[half + j] = factor * seg[j];
    });
    for (int ax = 0; ax < n; ++ax) transform_axis(out.data(), *out.grid(), ax, false);
    return out;
}

namespace {

std::vector<MultiIndex> indices_up_to(int n, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex alpha(n, 0);
    std::function<void(int, int)> rec = [&](int a, int remaining) {
        if (a == n - 1) {
            for (int v = 0; v <= remaining; ++v) {
                alpha[a] = v;
                out.push_back(alpha);
            }
            alpha[a] = 0;
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            alpha[a] = v;
            rec(a + 1, remaining - v);
        }
        alpha[a] = 0;
    };
    rec(0, max_order);
    return out;
}

}  // namespace

double half_sobolev_norm(const TPField& u, double p, int m) {
    const int n = u.grid()->dim();
    double acc = 0.0;
    {
        TPField dt = half_derivative(u, MultiIndex(n, 0), 1);
        acc += std::pow(lp_norm_half(dt, p), p);
    }
    for (const MultiIndex& alpha : indices_up_to(n, 2 * m)) {
        TPField da = half_derivative(u, alpha, 0);
        acc += std::pow(lp_norm_half(da, p), p);
    }
    return std::pow(acc, 1.0 / p);
}

TPField half_pde_residual(const TPField& u, const TPField& f, const DifferentialSymbol& op) {
    const int n = op.dimension();
    TPField r = half_derivative(u, MultiIndex(n, 0), 1);
    for (const auto& [alpha, a] : op.coefficients()) {
        if (a == cplx(0.0)) continue;
        TPField da = half_derivative(u, alpha, 0);
        // A(D) with D = -i d/dx: coefficient a (-i)^{|alpha|} on d^alpha
        da *= a * std::pow(-I, multi_order(alpha));
        r += da;
    }
    TPField fr = restrict_half(project_osc(f));
    r -= fr;
    return r;
}

}  // namespace tppar
