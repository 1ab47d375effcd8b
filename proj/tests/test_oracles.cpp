#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tppar/diagnostics.hpp"
#include "tppar/errors.hpp"
#include "tppar/factor_table.hpp"
#include "tppar/halfspace.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/ode_oracle.hpp"
#include "tppar/random_fields.hpp"
#include "tppar/wholespace.hpp"

using namespace tppar;
using namespace tppar::testing;

namespace {

OperatorTuple heat_dirichlet(int n) {
    return OperatorTuple::dirichlet(DifferentialSymbol::laplacian_power(n, 1));
}

TPField gaussian_mode_f(GridPtr g, int k_idx) {
    const GroupGrid& gr = *g;
    const int axis = *gr.half_axis();
    const double ln = gr.axis(axis).half_length;
    TPField f(g);
    auto shape = gr.shape();
    std::vector<int> idx(shape.size(), 0);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        const double x = gr.space_node(axis, idx[axis + 1]);
        const double arg = (x - 0.5 * ln) / (0.1 * ln);
        f[flat] = std::exp(I * gr.time_freq((k_idx % gr.time_count() + gr.time_count()) %
                                            gr.time_count()) *
                           gr.time_node(idx[0])) *
                  std::exp(-arg * arg);
        for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
            if (++idx[d] < shape[d]) break;
            idx[d] = 0;
        }
    }
    return restrict_half(f);
}

}  // namespace

TEST_CASE("ode_oracle solves the homogeneous heat mode") {
    const double x_max = 32.0;
    const int n_ode = 1024;
    std::vector<cplx> rhs(n_ode + 1, cplx(0.0));
    ModeODEProblem prob(1.0, {}, heat_dirichlet(1), rhs, {cplx(1.0)}, x_max, n_ode);
    auto u = ode_oracle(prob);
    double worst = 0.0;
    for (int i = 0; i <= n_ode; i += 16) {
        cplx want = analytic_heat_halfspace(1.0, {}, 1.0, i * (x_max / n_ode));
        worst = std::max(worst, std::abs(u[i] - want));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("analytic_heat_halfspace closed form") {
    // oracle-computed value of e^{i rho+} at k = 1, x_n = 1
    cplx v = analytic_heat_halfspace(1.0, {}, 1.0, 1.0);
    CHECK(std::abs(v - cplx(0.37485280862038234, -0.3203156354342155)) <= 1e-12);
    CHECK(std::abs(analytic_heat_halfspace(1.0, {}, 0.0, 2.0)) == 0.0);
    double last = 1.0;
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
        double mag = std::abs(analytic_heat_halfspace(1.0, {}, 1.0, x));
        CHECK(mag < last);
        last = mag;
    }
}

TEST_CASE("ode_oracle far-boundary and resolution robustness") {
    const int n_ode = 1024;
    auto solve_with = [&](double x_max, int n) {
        std::vector<cplx> rhs(n + 1, cplx(0.0));
        ModeODEProblem prob(1.0, {}, heat_dirichlet(1), rhs, {cplx(1.0)}, x_max, n);
        return ode_oracle(prob);
    };
    auto base = solve_with(32.0, n_ode);
    auto far = solve_with(64.0, 2 * n_ode);  // same spacing, doubled X_max
    double diff = 0.0;
    for (int i = 0; i <= n_ode; i += 8) diff = std::max(diff, std::abs(base[i] - far[i]));
    CHECK(diff <= 1e-6);

    CHECK_THROWS_AS(ModeODEProblem(1.0, {}, heat_dirichlet(1),
                                   std::vector<cplx>(65, cplx(0.0)), {cplx(1.0)}, 4.0, 64),
                    InvalidGrid);
}

TEST_CASE("ode_oracle detects degenerate boundary rows") {
    OperatorTuple bad(DifferentialSymbol::laplacian_power(2, 1),
                      {DifferentialSymbol::tangential_derivative(2, 0)});
    std::vector<cplx> rhs(513, cplx(0.0));
    std::vector<double> xi0{0.0};
    CHECK_THROWS_AS((void)ode_oracle(ModeODEProblem(1.0, xi0, bad, rhs, {cplx(1.0)}, 32.0, 512)),
                    SingularSystem);
}

TEST_CASE("ode_oracle cross-validates the zero-trace representation formula") {
    auto g = make_grid(2.0 * kPi, 1, 16, {{16.0, 256}}, 0);
    auto tuple = heat_dirichlet(1);
    auto table = build_factor_table(tuple, g);
    TPField f = gaussian_mode_f(g, 1);
    TPField u = solve_zero_trace(f, table);

    const int n_ode = 2048;
    const double x_max = 32.0;
    std::vector<cplx> rhs(n_ode + 1);
    for (int i = 0; i <= n_ode; ++i) {
        double x = i * (x_max / n_ode);
        double arg = (x - 8.0) / 1.6;
        rhs[i] = std::exp(-arg * arg);
    }
    auto oracle = ode_oracle(ModeODEProblem(1.0, {}, tuple, rhs, {cplx(0.0)}, x_max, n_ode));

    std::vector<cplx> mixed = u.data();
    transform_axis(mixed, *g, 0, true);
    const int nn = 256;
    double num = 0.0, den = 0.0;
    const int stride = static_cast<int>(g->axis_spacing(0) / (x_max / n_ode) + 0.5);
    for (int j = 0; j < nn / 2; ++j) {
        cplx solver = mixed[1 * nn + nn / 2 + j];
        cplx want = oracle[j * stride];
        num += std::norm(solver - want);
        den += std::norm(want);
    }
    CHECK(std::sqrt(num / den) <= 1e-3);
}

TEST_CASE("manufactured_residual") {
    SUBCASE("whole space: exact solve and normalized zero solution") {
        auto g = make_grid(2.0 * kPi, 1, 8, {{4.0, 16}});
        auto op = DifferentialSymbol::laplacian_power(1, 1);
        TPField f = random_band_limited(g, 5, 3, 4);
        WholeSpaceProblem prob(op, g, f);
        TPField u = solve_wholespace(prob);
        OperatorTuple tuple = OperatorTuple::dirichlet(op);
        CHECK(manufactured_residual(u, f, tuple, Domain::whole) <= 1e-12);
        TPField zero(g);
        CHECK(manufactured_residual(zero, f, tuple, Domain::whole) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("half space: small and improving under refinement") {
        // large-margin regime (margin * L_n >= 18) so the finite-difference
        // truncation term dominates and refinement shows through
        auto tuple = heat_dirichlet(1);
        auto residual_at = [&](int nn) {
            auto g = make_grid(1.0, 1, 16, {{16.0, nn}}, 0);
            const GroupGrid& gr = *g;
            auto table = build_factor_table(tuple, g);
            TPField f(g);
            for (int t = 0; t < 16; ++t)
                for (int j = 0; j < nn; ++j) {
                    double x = gr.space_node(0, j);
                    double arg = (x - 8.0) / 0.6;
                    f[t * nn + j] = std::exp(I * gr.time_freq(1) * gr.time_node(t)) *
                                    std::exp(-arg * arg);
                }
            f = restrict_half(f);
            TPField u = solve_zero_trace(f, table);
            return manufactured_residual(u, f, tuple, Domain::half);
        };
        double r256 = residual_at(256);
        double r512 = residual_at(512);
        CHECK(r256 <= 1e-2);
        CHECK(r512 <= r256 / 1.5);
    }
}

TEST_CASE("convergence_study") {
    SUBCASE("whole-space manufactured family sits at the machine floor") {
        auto op = DifferentialSymbol::laplacian_power(1, 1);
        auto error_at = [&](int nn) {
            auto g = make_grid(2.0 * kPi, 1, 8, {{4.0, nn}});
            TPField u0 = random_band_limited(g, 9, 3, 4);
            TPField f = apply_multiplier(u0, [&op](double k, std::span<const double> xi) {
                return cplx(0.0, k) + op.eval(xi);
            });
            WholeSpaceProblem prob(op, g, f);
            return rel_l2(solve_wholespace(prob), u0);
        };
        int res[] = {16, 32, 64};
        auto rows = convergence_study(error_at, res);
        for (const auto& r : rows) CHECK(r.error <= 1e-12);
    }
    SUBCASE("half-space Dirichlet heat family converges with order >= 1") {
        auto tuple = heat_dirichlet(1);
        auto error_at = [&](int nn) {
            auto g = make_grid(2.0 * kPi, 1, 16, {{16.0, nn}}, 0);
            auto table = build_factor_table(tuple, g);
            TPField f = gaussian_mode_f(g, 1);
            TPField u = solve_zero_trace(f, table);
            const int n_ode = 2048;
            const double x_max = 32.0;
            std::vector<cplx> rhs(n_ode + 1);
            for (int i = 0; i <= n_ode; ++i) {
                double x = i * (x_max / n_ode);
                double arg = (x - 8.0) / 1.6;
                rhs[i] = std::exp(-arg * arg);
            }
            auto oracle =
                ode_oracle(ModeODEProblem(1.0, {}, tuple, rhs, {cplx(0.0)}, x_max, n_ode));
            std::vector<cplx> mixed = u.data();
            transform_axis(mixed, *g, 0, true);
            const int stride = static_cast<int>(g->axis_spacing(0) / (x_max / n_ode) + 0.5);
            double num = 0.0, den = 0.0;
            for (int j = 0; j < nn / 2; ++j) {
                num += std::norm(mixed[nn + nn / 2 + j] - oracle[j * stride]);
                den += std::norm(oracle[j * stride]);
            }
            return std::sqrt(num / den);
        };
        int res[] = {64, 128, 256};
        auto rows = convergence_study(error_at, res);
        CHECK(rows[0].error > rows[1].error);
        CHECK(rows[1].error > rows[2].error);
        CHECK(rows[0].order >= 1.0);
        CHECK(rows[1].order >= 1.0);
    }
}

TEST_CASE("estimate sweeps are deterministic and stable") {
    auto g = make_grid(2.0 * kPi, 1, 8, {{4.0, 16}});
    auto op = DifferentialSymbol::laplacian_power(1, 1);
    SweepReport a = estimate_sweep_ws(op, g, 10, 2.0, 2024);
    SweepReport b = estimate_sweep_ws(op, g, 10, 2.0, 2024);
    CHECK(a.ratios == b.ratios);
    CHECK(a.sup == b.sup);
    CHECK(a.drift == b.drift);
}

TEST_CASE("cross-validation: n=2 heat Dirichlet against the mode oracle") {
    auto tuple = heat_dirichlet(2);
    // data on two tangential/time modes: f = bump(x_n) x modes, g on one mode
    struct Mode {
        int k, q;
        cplx famp, gamp;
    };
    std::vector<Mode> modes{{1, 1, cplx(1.0, 0.2), cplx(0.5, -0.1)},
                            {2, -2, cplx(-0.3, 0.6), cplx(0.0, 0.0)}};
    auto err_at = [&](int nn) {
        auto g = make_grid(1.0, 2, 16, {{kPi, 32}, {16.0, nn}}, 1);
        const GroupGrid& gr = *g;
        TPField f(g);
        auto shape = gr.shape();
        std::vector<int> idx(shape.size(), 0);
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            const double xn = gr.space_node(1, idx[2]);
            const double bump = std::exp(-std::pow((xn - 8.0) / 1.2, 2));
            cplx acc = 0.0;
            for (const Mode& md : modes)
                acc += md.famp * std::exp(I * (gr.time_freq((md.k + 16) % 16) *
                                                   gr.time_node(idx[0]) +
                                               gr.space_freq(0, (md.q + 32) % 32) *
                                                   gr.space_node(0, idx[1])));
            f[flat] = acc * bump;
            for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
                if (++idx[d] < shape[d]) break;
                idx[d] = 0;
            }
        }
        f = restrict_half(f);
        GridPtr bgrid = g->boundary();
        TPField gb(bgrid);
        for (int t = 0; t < 16; ++t)
            for (int q = 0; q < 32; ++q) {
                cplx acc = 0.0;
                for (const Mode& md : modes)
                    acc += md.gamp * std::exp(I * (bgrid->time_freq((md.k + 16) % 16) *
                                                       bgrid->time_node(t) +
                                                   bgrid->space_freq(0, (md.q + 32) % 32) *
                                                       bgrid->space_node(0, q)));
                gb[t * 32 + q] = acc;
            }
        FactorTable table = build_factor_table(tuple, g);
        BoundaryKernel kernel = build_boundary_kernel(tuple, table);
        HalfSpaceProblem prob(tuple, g, f, {gb}, BcKind::dirichlet);
        TPField u = solve_general(prob, table, kernel);

        std::vector<cplx> mixed = u.data();
        for (int ax = 0; ax < 2; ++ax) transform_axis(mixed, gr, ax, true);
        // the mixed representation carries the tangential transform weight
        const double tang_weight = 2.0 * gr.axis(0).half_length;
        const double x_max = 32.0;
        const int n_ode = 4 * nn;
        double num = 0.0, den = 0.0;
        for (const Mode& md : modes) {
            const double kval = gr.time_freq((md.k + 16) % 16);
            std::vector<double> xip{gr.space_freq(0, (md.q + 32) % 32)};
            std::vector<cplx> rhs(n_ode + 1, cplx(0.0));
            for (int i = 0; i <= n_ode; ++i) {
                double x = i * (x_max / n_ode);
                if (x < 16.0)
                    rhs[i] = tang_weight * md.famp * std::exp(-std::pow((x - 8.0) / 1.2, 2));
            }
            auto oracle = ode_oracle(
                ModeODEProblem(kval, xip, tuple, rhs, {tang_weight * md.gamp}, x_max, n_ode));
            std::size_t bflat = std::size_t((md.k + 16) % 16) * 32 + (md.q + 32) % 32;
            for (int j = 0; j < nn / 2; ++j) {
                cplx solver = mixed[bflat * nn + nn / 2 + j];
                num += std::norm(solver - oracle[j * 4]);
                den += std::norm(oracle[j * 4]);
            }
        }
        return std::sqrt(num / den);
    };
    double e256 = err_at(256);
    CHECK(e256 <= 1e-3);
    CHECK(err_at(512) < e256);
}

TEST_CASE("cross-validation: biharmonic clamped against the mode oracle") {
    auto tuple = OperatorTuple::dirichlet(DifferentialSymbol::laplacian_power(1, 2));
    auto err_at = [&](int nn) {
        const double ln = 24.0;
        auto g = make_grid(1.0, 1, 16, {{ln, nn}}, 0);
        const GroupGrid& gr = *g;
        TPField f(g);
        for (int t = 0; t < 16; ++t)
            for (int j = 0; j < nn; ++j) {
                double x = gr.space_node(0, j);
                f[t * nn + j] = std::exp(I * gr.time_freq(1) * gr.time_node(t)) *
                                std::exp(-std::pow((x - 12.0) / 1.0, 2));
            }
        f = restrict_half(f);
        GridPtr bgrid = g->boundary();
        TPField g0(bgrid), g1(bgrid);
        for (int t = 0; t < 16; ++t) {
            g0[t] = 0.7 * std::exp(I * bgrid->time_freq(1) * bgrid->time_node(t));
            g1[t] = cplx(0.0, 0.4) * std::exp(I * bgrid->time_freq(2) * bgrid->time_node(t));
        }
        FactorTable table = build_factor_table(tuple, g);
        BoundaryKernel kernel = build_boundary_kernel(tuple, table);
        HalfSpaceProblem prob(tuple, g, f, {g0, g1}, BcKind::dirichlet);
        TPField u = solve_general(prob, table, kernel);

        std::vector<cplx> mixed = u.data();
        transform_axis(mixed, gr, 0, true);
        const double x_max = 2.0 * ln;
        const int n_ode = 4 * nn;
        double num = 0.0, den = 0.0;
        for (int k = 1; k <= 2; ++k) {
            const double kval = gr.time_freq(k);
            std::vector<cplx> rhs(n_ode + 1, cplx(0.0));
            if (k == 1)
                for (int i = 0; i <= n_ode; ++i) {
                    double x = i * (x_max / n_ode);
                    if (x < ln) rhs[i] = std::exp(-std::pow((x - 12.0) / 1.0, 2));
                }
            std::vector<cplx> bc{k == 1 ? cplx(0.7) : cplx(0.0),
                                 k == 2 ? cplx(0.0, 0.4) : cplx(0.0)};
            auto oracle = ode_oracle(ModeODEProblem(kval, {}, tuple, rhs, bc, x_max, n_ode));
            for (int j = 0; j < nn / 2; ++j) {
                cplx solver = mixed[std::size_t(k) * nn + nn / 2 + j];
                num += std::norm(solver - oracle[j * 4]);
                den += std::norm(oracle[j * 4]);
            }
        }
        return std::sqrt(num / den);
    };
    double e384 = err_at(384);
    CHECK(e384 <= 1e-3);
    CHECK(err_at(768) < e384);
}
