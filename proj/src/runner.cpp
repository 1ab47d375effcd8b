#include "tppar/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "tppar/boundary_values.hpp"
#include "tppar/diagnostics.hpp"
#include "tppar/errors.hpp"
#include "tppar/field_io.hpp"
#include "tppar/half_calculus.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/ode_oracle.hpp"
#include "tppar/report.hpp"
#include "tppar/transform.hpp"
#include "tppar/wholespace.hpp"

namespace tppar {

namespace {

const cplx I(0.0, 1.0);

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

/// Band-limited profile of hat(f)(k, x') along x_n at an arbitrary point, for
/// feeding the mode ODE oracle on its own grid.
std::vector<cplx> oracle_rhs(const TPField& f, std::size_t bflat, double x_max, int n_ode) {
    const GroupGrid& g = *f.grid();
    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    std::vector<cplx> mixed = f.data();
    for (int ax = 0; ax < g.dim(); ++ax) transform_axis(mixed, g, ax, true);
    // one more transform along the normal axis gives the full spectrum line
    transform_axis(mixed, g, axis + 1, true);
    const cplx* line = mixed.data() + bflat * nn;
    std::vector<cplx> rhs(n_ode + 1, cplx(0.0));
    const double two_l = 2.0 * g.axis(axis).half_length;
    for (int i = 0; i <= n_ode; ++i) {
        const double x = i * (x_max / n_ode);
        if (x >= g.axis(axis).half_length) continue;  // beyond the box: data is 0
        cplx acc = 0.0;
        for (int q = 0; q < nn; ++q) {
            if (g.is_space_nyquist(axis, q)) continue;
            acc += line[q] * std::exp(I * g.space_freq(axis, q) * x);
        }
        rhs[i] = acc / two_l;
    }
    return rhs;
}

struct LoadedHalf {
    OperatorTuple tuple;
    GridPtr grid;
    TPField f;
    std::vector<TPField> g;
};

LoadedHalf load_half(const ProblemSpec& spec) {
    GridPtr grid = spec.build_grid();
    return LoadedHalf{spec.build_tuple(), grid, spec.build_f(grid), spec.build_g(grid)};
}

int task_check(const ProblemSpec& spec, const RunOptions& opt) {
    EllipticityReport report;
    if (spec.domain == SpecDomain::half) {
        report = check_operator(spec.build_tuple(), spec.sampling);
    } else {
        // no boundary: proper ellipticity and the two rays only
        DifferentialSymbol principal = spec.build_interior().principal_part();
        report.proper = check_properly_elliptic(principal, spec.sampling);
        for (double theta : {kPi / 2.0, -kPi / 2.0})
            report.agmon.push_back(check_agmon_ray(principal, theta, spec.sampling));
        report.samples_used = spec.sampling.sphere_samples;
    }
    save_text(join(opt.out_dir, "check.json"), ellipticity_report_json(report).dump());
    std::cout << "check: " << (report.all_pass() ? "pass" : "FAIL") << "\n";
    return report.all_pass() ? 0 : 2;
}

int task_solve(const ProblemSpec& spec, const RunOptions& opt) {
    CsvWriter norms({"quantity", "value"});
    if (spec.domain == SpecDomain::whole) {
        GridPtr grid = spec.build_grid();
        DifferentialSymbol op = spec.build_interior();
        TPField f = spec.build_f(grid);
        WholeSpaceProblem prob(op, grid, f);
        TPField u = solve_wholespace(prob);
        norms.row({"residual_l2", CsvWriter::cell(residual_wholespace(u, f, op))});
        norms.row({"u_l2", CsvWriter::cell(lp_norm(u, 2.0))});
        norms.row({"u_sobolev", CsvWriter::cell(sobolev_norm(u, 2.0, spec.m))});
        norms.row({"f_l2", CsvWriter::cell(lp_norm(project_osc(f), 2.0))});
        write_field(join(opt.out_dir, "solution.tpf"), u);
    } else {
        LoadedHalf p = load_half(spec);
        HalfSpaceProblem prob(p.tuple, p.grid, p.f, p.g, spec.bc, spec.sampling);
        if (prob.truncation_warning)
            std::cout << "warning: predicted kernel decay exceeds 1e-8 at the box edge; "
                         "increase L_n\n";
        FactorTable table = build_factor_table(p.tuple, p.grid);
        BoundaryKernel kernel = build_boundary_kernel(p.tuple, table);
        TPField u = solve_general(prob, table, kernel);
        const double res = manufactured_residual(u, p.f, p.tuple, Domain::half);
        norms.row({"residual_interior", CsvWriter::cell(res)});
        norms.row({"u_l2_half", CsvWriter::cell(lp_norm_half(u, 2.0))});
        norms.row(
            {"u_sobolev_half", CsvWriter::cell(sobolev_norm_half(u, 2.0, p.tuple.half_order()))});
        std::vector<int> orders;
        for (int j = 0; j < p.tuple.half_order(); ++j)
            orders.push_back(p.tuple.boundary_order(j));
        TraceSpaceSpec ts(p.tuple.half_order(), 2.0, orders);
        norms.row({"estimate_ratio",
                   CsvWriter::cell(estimate_ratio_hs(u, p.f, p.g, 2.0, ts))});
        write_field(join(opt.out_dir, "solution.tpf"), u);
    }
    norms.save(join(opt.out_dir, "norms.csv"));
    std::cout << "solve: wrote solution.tpf and norms.csv\n";
    return 0;
}

int task_verify(const ProblemSpec& spec, const RunOptions& opt) {
    CsvWriter rows({"quantity", "value"});
    bool pass = true;
    if (spec.domain == SpecDomain::whole) {
        GridPtr grid = spec.build_grid();
        DifferentialSymbol op = spec.build_interior();
        TPField f = spec.build_f(grid);
        WholeSpaceProblem prob(op, grid, f);
        TPField u = solve_wholespace(prob);
        double res = residual_wholespace(u, f, op);
        rows.row({"residual_l2", CsvWriter::cell(res)});
        pass = res <= spec.residual_tolerance;
    } else {
        LoadedHalf p = load_half(spec);
        HalfSpaceProblem prob(p.tuple, p.grid, p.f, p.g, spec.bc, spec.sampling);
        FactorTable table = build_factor_table(p.tuple, p.grid);
        BoundaryKernel kernel = build_boundary_kernel(p.tuple, table);
        TPField u = solve_general(prob, table, kernel);
        double res = manufactured_residual(u, p.f, p.tuple, Domain::half);
        rows.row({"residual_interior", CsvWriter::cell(res)});

        // boundary data recovery B_j u vs g_j
        auto bu = boundary_values(u, p.tuple);
        for (std::size_t j = 0; j < bu.size(); ++j) {
            TPField diff = bu[j];
            diff -= p.g[j];
            double scale = std::max(lp_norm(p.g[j], 2.0), 1e-30);
            rows.row({"boundary_misfit_" + std::to_string(j + 1),
                      CsvWriter::cell(lp_norm(diff, 2.0) / scale)});
        }

        // per-mode ODE oracle comparison on the data's own modes
        const GroupGrid& g = *p.grid;
        const int axis = *g.half_axis();
        const int nn = g.axis(axis).count;
        const double x_max = 2.0 * g.axis(axis).half_length;
        const int n_ode = 4 * nn;  // oracle nodes contain the solver nodes
        std::vector<cplx> mixed_u = u.data();
        for (int ax = 0; ax < g.dim(); ++ax) transform_axis(mixed_u, g, ax, true);
        std::vector<TPField> gspec;
        for (const auto& gj : p.g) gspec.push_back(forward(gj));
        double num = 0.0, den = 0.0;
        const int stride =
            static_cast<int>(g.axis_spacing(axis) / (x_max / n_ode) + 0.5);
        for_each_boundary_mode(g, [&](std::size_t bflat, double k,
                                      std::span<const double> xi_prime, bool retained) {
            if (!retained) return;
            std::vector<cplx> rhs = oracle_rhs(p.f, bflat, x_max, n_ode);
            std::vector<cplx> bc;
            for (const auto& gs : gspec) bc.push_back(gs[bflat]);
            bool trivial = true;
            for (const cplx& v : rhs)
                if (std::abs(v) > 1e-14) trivial = false;
            for (const cplx& v : bc)
                if (std::abs(v) > 1e-14) trivial = false;
            if (trivial) return;
            ModeODEProblem mode(k, {xi_prime.begin(), xi_prime.end()}, p.tuple, rhs, bc,
                                x_max, n_ode);
            auto oracle = ode_oracle(mode);
            for (int j = 0; j < nn / 2; ++j) {
                cplx solver = mixed_u[bflat * nn + nn / 2 + j];
                num += std::norm(solver - oracle[j * stride]);
                den += std::norm(oracle[j * stride]);
            }
        });
        double oracle_err = den > 0.0 ? std::sqrt(num / den) : 0.0;
        rows.row({"oracle_rel_l2", CsvWriter::cell(oracle_err)});
        pass = res <= spec.residual_tolerance;
    }
    rows.save(join(opt.out_dir, "verify.csv"));
    std::cout << "verify: " << (pass ? "pass" : "FAIL") << " (see verify.csv)\n";
    return pass ? 0 : 3;
}

int task_sweep(const ProblemSpec& spec, const RunOptions& opt) {
    const int samples = opt.sweep_samples.value_or(spec.sweep.samples);
    const std::uint64_t seed = opt.sweep_seed.value_or(spec.sweep.seed);
    GridPtr grid = spec.build_grid();
    SweepReport rep;
    if (spec.domain == SpecDomain::whole) {
        rep = estimate_sweep_ws(spec.build_interior(), grid, samples, spec.sweep.p, seed);
    } else {
        rep = estimate_sweep_hs(spec.build_tuple(), grid, samples, spec.sweep.p, seed);
    }
    JsonValue root = JsonValue::object();
    root.set("ensemble", JsonValue::integer(rep.ensemble));
    root.set("seed", JsonValue::integer(static_cast<long long>(rep.seed)));
    root.set("sup_ratio", JsonValue::number(rep.sup));
    root.set("sup_ratio_refined", JsonValue::number(rep.sup_fine));
    root.set("drift", JsonValue::number(rep.drift));
    save_text(join(opt.out_dir, "sweep.json"), root.dump());
    CsvWriter table({"sample", "ratio", "ratio_refined"});
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
        table.row({CsvWriter::cell(static_cast<long long>(i)),
                   CsvWriter::cell(rep.ratios[i]), CsvWriter::cell(rep.ratios_fine[i])});
    table.save(join(opt.out_dir, "sweep.csv"));
    std::cout << "sweep: sup ratio " << fmt_float(rep.sup) << ", drift "
              << fmt_float(rep.drift) << "\n";
    return 0;
}

int task_oracle_compare(const ProblemSpec& spec, const RunOptions& opt) {
    if (spec.domain != SpecDomain::half)
        throw SchemaError("oracle-compare requires a half-space problem");
    LoadedHalf p = load_half(spec);
    HalfSpaceProblem prob(p.tuple, p.grid, p.f, p.g, spec.bc, spec.sampling);
    FactorTable table = build_factor_table(p.tuple, p.grid);
    BoundaryKernel kernel = build_boundary_kernel(p.tuple, table);
    TPField u = solve_general(prob, table, kernel);

    const GroupGrid& g = *p.grid;
    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    const double x_max = 2.0 * g.axis(axis).half_length;
    const int n_ode = 4 * nn;  // oracle nodes contain the solver nodes
    const int stride = static_cast<int>(g.axis_spacing(axis) / (x_max / n_ode) + 0.5);
    std::vector<cplx> mixed_u = u.data();
    for (int ax = 0; ax < g.dim(); ++ax) transform_axis(mixed_u, g, ax, true);
    std::vector<TPField> gspec;
    for (const auto& gj : p.g) gspec.push_back(forward(gj));

    CsvWriter rows({"k", "xi_prime", "rel_l2"});
    for_each_boundary_mode(g, [&](std::size_t bflat, double k,
                                  std::span<const double> xi_prime, bool retained) {
        if (!retained) return;
        std::vector<cplx> rhs = oracle_rhs(p.f, bflat, x_max, n_ode);
        std::vector<cplx> bc;
        for (const auto& gs : gspec) bc.push_back(gs[bflat]);
        bool trivial = true;
        for (const cplx& v : rhs)
            if (std::abs(v) > 1e-14) trivial = false;
        for (const cplx& v : bc)
            if (std::abs(v) > 1e-14) trivial = false;
        if (trivial) return;
        ModeODEProblem mode(k, {xi_prime.begin(), xi_prime.end()}, p.tuple, rhs, bc, x_max,
                            n_ode);
        auto oracle = ode_oracle(mode);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < nn / 2; ++j) {
            num += std::norm(mixed_u[bflat * nn + nn / 2 + j] - oracle[j * stride]);
            den += std::norm(oracle[j * stride]);
        }
        std::string xs;
        for (std::size_t i = 0; i < xi_prime.size(); ++i)
            xs += (i ? ";" : "") + fmt_float(xi_prime[i]);
        rows.row({fmt_float(k), xs.empty() ? "-" : xs,
                  CsvWriter::cell(den > 0 ? std::sqrt(num / den) : std::sqrt(num))});
    });
    rows.save(join(opt.out_dir, "oracle_compare.csv"));
    std::cout << "oracle-compare: wrote oracle_compare.csv\n";
    return 0;
}

}  // namespace

int exit_code_for(const Error& e) {
    const std::string& k = e.kind();
    if (k == "SchemaError" || k == "MeanModePresent" || k == "BadMagic" ||
        k == "SizeMismatch" || k == "InvalidGrid" || k == "DimensionMismatch")
        return 1;
    if (k == "SingularCharMatrix" || k == "RootOnRealAxis" || k == "WrongSplit" ||
        k == "DegenerateRoot")
        return 2;
    return 3;  // SymbolVanishes, SingularSystem, IllConditionedTrace, MeanNotZero, ...
}

int run(const ProblemSpec& spec, const RunOptions& options) {
    std::filesystem::create_directories(options.out_dir);
    const std::vector<std::string>& tasks =
        options.tasks.empty() ? spec.tasks : options.tasks;
    if (tasks.empty()) throw SchemaError("no tasks requested");
    int worst = 0;
    for (const std::string& t : tasks) {
        int code = 0;
        if (t == "check")
            code = task_check(spec, options);
        else if (t == "solve")
            code = task_solve(spec, options);
        else if (t == "verify")
            code = task_verify(spec, options);
        else if (t == "sweep")
            code = task_sweep(spec, options);
        else if (t == "oracle-compare")
            code = task_oracle_compare(spec, options);
        else
            throw SchemaError("unknown task \"" + t + "\"");
        worst = std::max(worst, code);
    }
    return worst;
}

}  // namespace tppar
