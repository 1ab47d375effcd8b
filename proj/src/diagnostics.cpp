#include "tppar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tppar/boundary_kernel.hpp"
#include "tppar/errors.hpp"
#include "tppar/half_calculus.hpp"
#include "tppar/halfspace.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/norms.hpp"
#include "tppar/random_fields.hpp"
#include "tppar/transform.hpp"
#include "tppar/wholespace.hpp"

namespace tppar {

namespace {

SymbolFn full_symbol_multiplier(const DifferentialSymbol& op) {
    return [&op](double k, std::span<const double> xi) {
        return cplx(0.0, k) + op.eval(xi);
    };
}

constexpr double kSlabLo = 1.0 / 8.0;
constexpr double kSlabHi = 7.0 / 8.0;

}  // namespace

double manufactured_residual(const TPField& u, const TPField& f, const OperatorTuple& tuple,
                             Domain domain) {
    if (domain == Domain::whole) {
        TPField r = apply_multiplier(u, full_symbol_multiplier(tuple.interior));
        r -= project_osc(f);
        double den = lp_norm(project_osc(f), 2.0);
        double num = lp_norm(r, 2.0);
        return den > 0.0 ? num / den : num;
    }
    TPField r = half_pde_residual(u, f, tuple.interior);
    double den = lp_norm_slab(project_osc(f), 2.0, kSlabLo, kSlabHi);
    double num = lp_norm_slab(r, 2.0, kSlabLo, kSlabHi);
    if (den == 0.0) den = lp_norm_half(project_osc(f), 2.0);
    return den > 0.0 ? num / den : num;
}

std::vector<ConvergenceRow> convergence_study(const std::function<double(int)>& error_at,
                                              std::span<const int> resolutions) {
    if (resolutions.size() < 3)
        throw DimensionMismatch("convergence_study: need at least 3 resolutions");
    std::vector<ConvergenceRow> rows;
    rows.reserve(resolutions.size());
    for (int r : resolutions) rows.push_back({r, error_at(r), 0.0});
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i + 1].error > 0.0 && rows[i].error > 0.0)
            rows[i].order = std::log2(rows[i].error / rows[i + 1].error);
    }
    return rows;
}

namespace {

GridPtr doubled(const GroupGrid& g) {
    std::vector<AxisSpec> axes;
    for (int i = 0; i < g.dim(); ++i)
        axes.push_back({g.axis(i).half_length, 2 * g.axis(i).count});
    return make_grid(g.period(), g.dim(), 2 * g.time_count(), std::move(axes),
                     g.half_axis());
}

double sup_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, x);
    return s;
}

}  // namespace

SweepReport estimate_sweep_ws(const DifferentialSymbol& op, GridPtr grid, int ensemble,
                              double p, std::uint64_t seed) {
    SweepReport rep;
    rep.ensemble = ensemble;
    rep.seed = seed;
    const int m = op.order() / 2;
    const double s = 2.0 * m;
    const int k_band = std::max(1, grid->time_count() / 4);
    int q_band = grid->axis(0).count;
    for (int i = 0; i < grid->dim(); ++i) q_band = std::min(q_band, grid->axis(i).count);
    q_band = std::max(1, q_band / 4);

    GridPtr fine = doubled(*grid);
    for (int i = 0; i < ensemble; ++i) {
        const std::uint64_t si = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
        for (GridPtr g : {grid, fine}) {
            TPField f = random_band_limited(g, si, k_band, q_band);
            WholeSpaceProblem prob(op, g, f);
            TPField u = solve_wholespace(prob);
            double ratio = estimate_ratio_ws(u, op, s, p);
            (g == grid ? rep.ratios : rep.ratios_fine).push_back(ratio);
        }
    }
    rep.sup = sup_of(rep.ratios);
    rep.sup_fine = sup_of(rep.ratios_fine);
    rep.drift = rep.sup > 0.0 ? std::abs(rep.sup_fine - rep.sup) / rep.sup : 0.0;
    return rep;
}

SweepReport estimate_sweep_ws_single_modes(const DifferentialSymbol& op, GridPtr grid,
                                           int ensemble, double p, std::uint64_t seed,
                                           double* analytic_sup) {
    SweepReport rep;
    rep.ensemble = ensemble;
    rep.seed = seed;
    const int m = op.order() / 2;
    const double s = 2.0 * m;
    const GroupGrid& g = *grid;
    const int n = g.dim();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kpick(1, g.time_count() / 2 - 1);
    double best_analytic = 0.0;
    for (int i = 0; i < ensemble; ++i) {
        // random retained single mode
        int k_idx = kpick(rng) * (rng() % 2 ? 1 : -1);
        std::vector<int> q(n);
        std::vector<double> xi(n);
        for (int a = 0; a < n; ++a) {
            std::uniform_int_distribution<int> qpick(-(g.axis(a).count / 2 - 1),
                                                     g.axis(a).count / 2 - 1);
            q[a] = qpick(rng);
        }
        TPField w(grid, FieldState::spectral);
        int t_idx = k_idx >= 0 ? k_idx : k_idx + g.time_count();
        std::size_t flat = t_idx;
        for (int a = 0; a < n; ++a) {
            int qi = q[a] >= 0 ? q[a] : q[a] + g.axis(a).count;
            flat = flat * g.axis(a).count + qi;
            xi[a] = g.space_freq(a, qi);
        }
        w[flat] = 1.0;
        TPField f = inverse(w);
        WholeSpaceProblem prob(op, grid, f);
        TPField u = solve_wholespace(prob);
        rep.ratios.push_back(estimate_ratio_ws(u, op, s, p));

        const double k = g.time_freq(t_idx);
        const double len = parabolic_length(k, xi, m);
        const cplx mval = cplx(0.0, k) + op.eval(xi);
        best_analytic = std::max(
            best_analytic,
            std::pow(len, s) / (std::abs(mval) + std::pow(len, s - 1.0)));
    }
    rep.ratios_fine = rep.ratios;
    rep.sup = sup_of(rep.ratios);
    rep.sup_fine = rep.sup;
    rep.drift = 0.0;
    if (analytic_sup) *analytic_sup = best_analytic;
    return rep;
}

namespace {

/// Gaussian bump along x_n centered at L_n/2, width L_n/10; modulates the
/// random tangential/time field so the data is smooth on the half box and
/// vanishes to machine precision at the boundary and the box edge.
TPField half_space_data(GridPtr grid, std::uint64_t seed, int k_band, int q_band) {
    const GroupGrid& g = *grid;
    const int axis = *g.half_axis();
    TPField f = random_band_limited(grid, seed, k_band, q_band);
    const double ln = g.axis(axis).half_length;
    const double center = 0.5 * ln, width = ln / 10.0;
    auto shape = g.shape();
    long stride = 1;
    for (int d = axis + 2; d <= g.dim(); ++d) stride *= shape[d];
    const int nn = g.axis(axis).count;
    long block = stride * nn;
    long blocks = static_cast<long>(f.size()) / block;
    for (long b = 0; b < blocks; ++b)
        for (long off = 0; off < stride; ++off) {
            cplx* base = f.data().data() + b * block + off;
            for (int j = 0; j < nn; ++j) {
                const double x = g.space_node(axis, j);
                const double arg = (x - center) / width;
                base[j * stride] *= std::exp(-arg * arg);
            }
        }
    return restrict_half(f);
}

}  // namespace

SweepReport estimate_sweep_hs(const OperatorTuple& tuple, GridPtr grid, int ensemble,
                              double p, std::uint64_t seed) {
    SweepReport rep;
    rep.ensemble = ensemble;
    rep.seed = seed;
    const int m = tuple.half_order();
    std::vector<int> orders;
    for (int j = 0; j < m; ++j) orders.push_back(tuple.boundary_order(j));
    TraceSpaceSpec spec(m, p, orders);

    GridPtr fine;
    {
        // refine the normal axis only: tangential/time content is band-limited
        const GroupGrid& g = *grid;
        std::vector<AxisSpec> axes;
        for (int i = 0; i < g.dim(); ++i) {
            int c = g.axis(i).count;
            if (i == *g.half_axis()) c *= 2;
            axes.push_back({g.axis(i).half_length, c});
        }
        fine = make_grid(g.period(), g.dim(), g.time_count(), std::move(axes), g.half_axis());
    }

    const int k_band = std::max(1, grid->time_count() / 4);
    const BcKind bc = tuple.is_dirichlet() ? BcKind::dirichlet : BcKind::general;

    for (GridPtr g : {grid, fine}) {
        FactorTable table = build_factor_table(tuple, g);
        BoundaryKernel kernel = build_boundary_kernel(tuple, table);
        GridPtr bgrid = g->boundary();
        int q_band = 1;
        if (g->dim() > 1) {
            q_band = g->axis(0).count;
            for (int i = 0; i + 1 < g->dim(); ++i) q_band = std::min(q_band, g->axis(i).count);
            q_band = std::max(1, q_band / 4);
        }
        for (int i = 0; i < ensemble; ++i) {
            const std::uint64_t si = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
            TPField f = half_space_data(g, si, k_band, q_band);
            std::vector<TPField> gb;
            for (int j = 0; j < m; ++j)
                gb.push_back(random_band_limited_boundary(bgrid, si ^ (j + 1), k_band,
                                                          g->dim() > 1 ? q_band : 0));
            HalfSpaceProblem prob(tuple, g, f, gb, bc);
            TPField u = solve_general(prob, table, kernel);
            double ratio = estimate_ratio_hs(u, f, gb, p, spec);
            (g == grid ? rep.ratios : rep.ratios_fine).push_back(ratio);
        }
    }
    rep.sup = sup_of(rep.ratios);
    rep.sup_fine = sup_of(rep.ratios_fine);
    rep.drift = rep.sup > 0.0 ? std::abs(rep.sup_fine - rep.sup) / rep.sup : 0.0;
    return rep;
}

std::vector<double> bootstrap_chain(const TPField& u, const OperatorTuple& tuple) {
    const int m = tuple.half_order();
    std::vector<double> chain;
    chain.reserve(m + 1);
    for (int j = 0; j <= m; ++j) {
        TPField w = apply_multiplier(
            u,
            [m, j](double k, std::span<const double> xi) {
                std::span<const double> xi_prime = xi.first(xi.size() - 1);
                const double len_t = parabolic_length(k, xi_prime, m);
                const cplx factor = cplx(0.0, xi.back()) + len_t;
                return std::pow(factor, j) * std::pow(parabolic_length(k, xi, m), m);
            },
            /*osc_only=*/true);
        chain.push_back(lp_norm_slab(w, 2.0, kSlabLo, kSlabHi));
    }
    return chain;
}

}  // namespace tppar
