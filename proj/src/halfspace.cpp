#include "tppar/halfspace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "tppar/boundary_values.hpp"
#include "tppar/errors.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/polynomial.hpp"
#include "tppar/transform.hpp"

namespace tppar {

HalfSpaceProblem::HalfSpaceProblem(OperatorTuple tuple_, GridPtr grid_, TPField f_,
                                   std::vector<TPField> g_, BcKind bc_,
                                   const SamplingPolicy& policy)
    : tuple(std::move(tuple_)),
      grid(std::move(grid_)),
      f(std::move(f_)),
      g(std::move(g_)),
      bc(bc_) {
    if (!grid->half_axis()) throw InvalidGrid("half-space problem: grid has no half axis");
    if (tuple.dimension() != grid->dim())
        throw DimensionMismatch("half-space problem: symbol/grid dimension mismatch");
    if (static_cast<int>(g.size()) != tuple.half_order())
        throw DimensionMismatch("half-space problem: expected m boundary fields");
    if (mean_fraction(f) > 1e-12)
        throw MeanNotZero("half-space problem: f has a nonzero time mean");
    for (const auto& gj : g)
        if (mean_fraction(gj) > 1e-12)
            throw MeanNotZero("half-space problem: boundary data has a nonzero time mean");
    if (bc == BcKind::dirichlet && !tuple.is_dirichlet())
        throw DimensionMismatch(
            "half-space problem: bc=dirichlet requires B_j = D_n^{j-1}");

    report = check_operator(tuple, policy);
    if (!report.proper.pass)
        throw WrongSplit("half-space problem: interior operator is not properly elliptic (" +
                         report.proper.failure + ")");
    for (const auto& ray : report.agmon)
        if (!ray.pass)
            throw RootOnRealAxis(
                "half-space problem: Agmon's condition fails on theta = " +
                fmt_float(ray.theta));
    if (bc == BcKind::general) {
        for (const auto& c : report.complementing)
            if (!c.pass)
                throw SingularCharMatrix(
                    "half-space problem: complementing condition fails on theta = " +
                    fmt_float(c.theta) + " with witness eta = " + fmt_float(c.witness_eta));
    }

    // Predicted truncation of the decaying kernels at the box edge; the
    // slowest retained mode is |k| = 2pi/T at xi' = 0.
    const int axis = *grid->half_axis();
    const double ln = grid->axis(axis).half_length;
    auto split = split_roots(tuple.interior.principal_part(), 2.0 * kPi / grid->period(),
                             std::vector<double>(grid->dim() - 1, 0.0));
    truncation_warning = std::exp(-split.margin * ln) > 1e-8;
}

namespace {

const cplx I(0.0, 1.0);

/// Jump-corrected composition A_+^{-1} Y_+ v. Y_+ v jumps at x_n = 0 by the
/// jet of v, and pushing that jump through the discrete A_+^{-1} leaves an
/// h-independent error in the solution's m-th normal derivative right at the
/// boundary -- exactly where general boundary operators read it. The jet is
/// therefore matched by m decaying step fields a_l Y_+ e^{i rho_l x} whose
/// A_+^{-1} images are known in closed form (simple-pole residues); only the
/// jump-free remainder goes through the spectral inverse.
TPField plus_inverse_of_masked(const TPField& v, const FactorTable& table) {
    const GroupGrid& g = *table.grid;
    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    const int half = nn / 2;
    const int m = table.m;
    const double h = g.axis_spacing(axis);

    // jet orders 0..m: boundary operators read derivatives up to 2m-1, and
    // killing one order beyond the m-1 minimum buys an extra power of h
    const int jets = m + 1;
    const int stencil = std::min(jets - 1 + kBoundaryFdOrder, half);
    std::vector<double> nodes(stencil);
    for (int s = 0; s < stencil; ++s) nodes[s] = s * h;
    std::vector<std::vector<double>> jet_w(jets);
    for (int j = 0; j < jets; ++j) jet_w[j] = fornberg_weights(0.0, nodes, j);

    std::vector<cplx> mixed = v.data();
    for (int ax = 0; ax < g.dim(); ++ax) transform_axis(mixed, g, ax, true);

    TPField w_c(v.grid(), FieldState::physical);   // masked, jump-free remainder
    TPField q(v.grid(), FieldState::physical);     // analytic step images
    std::vector<cplx>& wc = w_c.data();
    std::vector<cplx>& qd = q.data();

    Eigen::MatrixXcd vand(jets, jets);
    Eigen::VectorXcd jet(jets), coeff(jets);
    for_each_boundary_mode(g, [&](std::size_t bflat, double, std::span<const double>,
                                  bool retained) {
        if (!retained) return;
        const FactorizationEntry& e = table.at(bflat);
        const cplx* line = mixed.data() + bflat * nn + half;  // x_n >= 0

        // one-sided jet of v at 0+
        for (int j = 0; j < jets; ++j) {
            cplx acc = 0.0;
            for (int s = 0; s < stencil; ++s) acc += jet_w[j][s] * line[s];
            jet(j) = acc;
        }
        // decaying step exponents i kappa_l, clear of the factor roots
        double max_rho = 0.0;
        for (cplx r : e.rho_plus) max_rho = std::max(max_rho, std::abs(r));
        std::vector<cplx> rho0(jets);
        for (int l = 0; l < jets; ++l) {
            double kappa = (1.0 + max_rho) * (1.5 + l);
            bool clear = false;
            while (!clear) {
                clear = true;
                for (cplx r : e.rho_plus)
                    if (std::abs(cplx(0.0, kappa) - r) < 1e-3 * (1.0 + max_rho)) clear = false;
                if (!clear) kappa *= 1.37;
            }
            rho0[l] = cplx(0.0, kappa);
        }
        // match d^j/dx^j of sum_l a_l e^{i rho_l x} at 0 to the jet
        for (int j = 0; j < jets; ++j)
            for (int l = 0; l < jets; ++l) vand(j, l) = std::pow(I * rho0[l], j);
        coeff = vand.partialPivLu().solve(jet);

        // A_+^{-1}[Y_+ e^{i rho_l x}] = sum of e^{i p x} residues over the
        // simple poles p of 1/((z - rho_l) M_+(z)); the -i from the step's
        // transform cancels the i of the residue theorem.
        std::vector<cplx> mplus = descending_to_ascending(e.c_plus);
        std::vector<cplx> dmplus = poly_derivative(mplus);
        cplx* wline = wc.data() + bflat * nn;
        cplx* qline = qd.data() + bflat * nn;
        for (int j = 0; j < half; ++j) {
            const double x = j * h;
            cplx cval = 0.0, qval = 0.0;
            for (int l = 0; l < jets; ++l) {
                const cplx a = coeff(l);
                if (a == cplx(0.0)) continue;
                cval += a * std::exp(I * rho0[l] * x);
                cplx resid = std::exp(I * rho0[l] * x) / poly_eval(mplus, rho0[l]);
                for (std::size_t r = 0; r < e.rho_plus.size(); ++r) {
                    const cplx rr = e.rho_plus[r];
                    resid += std::exp(I * rr * x) /
                             ((rr - rho0[l]) * poly_eval(dmplus, rr));
                }
                qval += a * resid;
            }
            wline[half + j] = line[j] - cval;
            qline[half + j] = qval;
        }
    });
    for (int ax = 0; ax < g.dim(); ++ax) {
        transform_axis(wc, g, ax, false);
        transform_axis(qd, g, ax, false);
    }
    TPField u = apply_factor_inverse(w_c, table, FactorSide::plus);
    u += q;
    return u;
}

}  // namespace

TPField solve_zero_trace(const TPField& f, const FactorTable& table, double* leakage) {
    if (mean_fraction(f) > 1e-12)
        throw MeanNotZero("solve_zero_trace: f has a nonzero time mean");
    TPField fz = extend_zero(f);
    TPField v = apply_factor_inverse(fz, table, FactorSide::minus);
    TPField u = plus_inverse_of_masked(v, table);
    if (leakage) {
        double below = lp_norm(complement_half(u), 2.0);
        double total = lp_norm(u, 2.0);
        *leakage = total > 0.0 ? below / total : 0.0;
    }
    return restrict_half(u);
}

namespace {

std::vector<TPField> apply_char_impl(std::span<const TPField> fields,
                                     const OperatorTuple& tuple, const FactorTable& table,
                                     bool inverse_matrix) {
    const int m = tuple.half_order();
    if (static_cast<int>(fields.size()) != m)
        throw DimensionMismatch("characteristic multiplier: expected m boundary fields");
    GridPtr bgrid = table.grid->boundary();
    std::vector<TPField> spec;
    std::vector<FieldState> in_state;
    spec.reserve(m);
    for (const TPField& fj : fields) {
        if (!fj.grid()->same_layout(*bgrid))
            throw DimensionMismatch("characteristic multiplier: wrong boundary grid");
        if (mean_fraction(fj) > 1e-12)
            throw MeanNotZero("characteristic multiplier: data has a nonzero time mean");
        in_state.push_back(fj.state());
        spec.push_back(fj.state() == FieldState::spectral ? fj : forward(fj));
    }
    std::vector<TPField> out(m, TPField(bgrid, FieldState::spectral));
    for_each_boundary_mode(*table.grid, [&](std::size_t bflat, double k,
                                            std::span<const double> xi_prime, bool retained) {
        if (!retained) return;
        CharMatrixEntry cm = char_matrix(tuple, k, xi_prime, table.at(bflat));
        for (int j = 0; j < m; ++j) {
            cplx acc = 0.0;
            for (int l = 0; l < m; ++l) {
                cplx entry = inverse_matrix ? cm.finv(j, l) : cm.f(j, l);
                acc += entry * spec[l][bflat];
            }
            out[j].data()[bflat] = acc;
        }
    });
    for (int j = 0; j < m; ++j)
        if (in_state[j] == FieldState::physical) inverse_in_place(out[j]);
    return out;
}

}  // namespace

std::vector<TPField> apply_char_inverse(std::span<const TPField> g, const OperatorTuple& tuple,
                                        const FactorTable& table) {
    return apply_char_impl(g, tuple, table, true);
}

std::vector<TPField> apply_char(std::span<const TPField> d, const OperatorTuple& tuple,
                                const FactorTable& table) {
    return apply_char_impl(d, tuple, table, false);
}

TPField solve_general(const HalfSpaceProblem& prob, const FactorTable& table,
                      const BoundaryKernel& kernel) {
    TPField u1 = solve_zero_trace(prob.f, table);
    std::vector<TPField> bu1 = boundary_values(u1, prob.tuple);
    std::vector<TPField> h;
    h.reserve(prob.g.size());
    for (std::size_t j = 0; j < prob.g.size(); ++j) {
        TPField hj = prob.g[j];
        hj -= bu1[j];
        h.push_back(std::move(hj));
    }
    std::vector<TPField> d = apply_char_inverse(h, prob.tuple, table);
    TPField u2 = lift_dirichlet(d, kernel);
    TPField u = u1;
    u += u2;
    return u;
}

double estimate_ratio_hs(const TPField& u, const TPField& f, std::span<const TPField> g,
                         double p, const TraceSpaceSpec& spec) {
    double den = lp_norm_half(f, p);
    for (std::size_t j = 0; j < g.size(); ++j)
        den += trace_norm(g[j], spec.kappa[j], p, spec.m);
    double num = sobolev_norm_half(u, p, spec.m);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace tppar
