#include "tppar/boundary_values.hpp"

#include <algorithm>
#include <cmath>

#include "tppar/errors.hpp"
#include "tppar/factor_table.hpp"
#include "tppar/transform.hpp"

namespace tppar {

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order) {
    const int nd = static_cast<int>(nodes.size()) - 1;
    if (nd < order) throw DimensionMismatch("fornberg_weights: too few nodes for the order");
    // B. Fornberg, "Generation of finite difference formulas on arbitrarily
    // spaced grids", Math. Comp. 51 (1988). c[k][j]: weight of node j for the
    // k-th derivative; only rows up to `order` are kept.
    std::vector<std::vector<double>> c(order + 1, std::vector<double>(nodes.size(), 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= nd; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c[order];
}

namespace {

const cplx I(0.0, 1.0);

/// Spectral-in-(t, x') representation with x_n kept physical.
std::vector<cplx> to_mixed(const TPField& u) {
    require_state(u, FieldState::physical, "boundary extraction");
    std::vector<cplx> mixed = u.data();
    const GroupGrid& g = *u.grid();
    for (int ax = 0; ax < g.dim(); ++ax) transform_axis(mixed, g, ax, true);
    return mixed;
}

/// D_n^d profile derivatives at x_n = 0 for every boundary mode and every
/// d = 0..dmax; out[d][bflat].
std::vector<std::vector<cplx>> normal_derivatives(const TPField& u, int dmax) {
    const GroupGrid& g = *u.grid();
    if (!g.half_axis()) throw InvalidGrid("boundary extraction requires a half-space grid");
    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    const int half = nn / 2;
    const double h = g.axis_spacing(axis);

    std::vector<cplx> mixed = to_mixed(u);

    std::vector<std::vector<double>> weights(dmax + 1);
    for (int d = 0; d <= dmax; ++d) {
        int stencil = std::min(d + kBoundaryFdOrder, half);
        std::vector<double> nodes(stencil);
        for (int s = 0; s < stencil; ++s) nodes[s] = s * h;
        weights[d] = fornberg_weights(0.0, nodes, d);
    }

    const std::size_t bcount = u.size() / nn;
    std::vector<std::vector<cplx>> out(dmax + 1, std::vector<cplx>(bcount, cplx(0.0)));
    for_each_boundary_mode(g, [&](std::size_t bflat, double, std::span<const double>,
                                  bool retained) {
        if (!retained) return;
        const cplx* line = mixed.data() + bflat * nn + nn / 2;  // x_n = 0 onward
        for (int d = 0; d <= dmax; ++d) {
            cplx acc = 0.0;
            for (std::size_t s = 0; s < weights[d].size(); ++s)
                acc += weights[d][s] * line[s];
            // D_n = -i d/dx_n
            out[d][bflat] = std::pow(-I, d) * acc;
        }
    });
    return out;
}

}  // namespace

std::vector<TPField> trace_symbol(const TPField& u, int m) {
    auto der = normal_derivatives(u, m - 1);
    GridPtr bgrid = u.grid()->boundary();
    std::vector<TPField> traces;
    traces.reserve(m);
    for (int d = 0; d < m; ++d) {
        TPField t(bgrid, FieldState::spectral);
        std::copy(der[d].begin(), der[d].end(), t.data().begin());
        inverse_in_place(t);
        traces.push_back(std::move(t));
    }
    return traces;
}

std::vector<TPField> boundary_values(const TPField& u, const OperatorTuple& tuple) {
    const int m = tuple.half_order();
    int dmax = 0;
    for (int j = 0; j < m; ++j) dmax = std::max(dmax, tuple.boundary_order(j));
    auto der = normal_derivatives(u, dmax);

    const GroupGrid& g = *u.grid();
    GridPtr bgrid = g.boundary();
    std::vector<TPField> values;
    values.reserve(m);
    for (int j = 0; j < m; ++j) {
        TPField bj(bgrid, FieldState::spectral);
        for_each_boundary_mode(g, [&](std::size_t bflat, double,
                                      std::span<const double> xi_prime, bool retained) {
            if (!retained) return;
            std::vector<cplx> bpoly = tuple.boundary[j].normal_poly(xi_prime);
            cplx acc = 0.0;
            for (std::size_t d = 0; d < bpoly.size(); ++d)
                acc += bpoly[d] * der[d][bflat];
            bj.data()[bflat] = acc;
        });
        inverse_in_place(bj);
        values.push_back(std::move(bj));
    }
    return values;
}

}  // namespace tppar
