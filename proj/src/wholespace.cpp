#include "tppar/wholespace.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tppar/errors.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/norms.hpp"
#include "tppar/transform.hpp"

namespace tppar {

namespace {

SymbolFn full_multiplier(const DifferentialSymbol& op) {
    return [&op](double k, std::span<const double> xi) {
        return cplx(0.0, k) + op.eval(xi);
    };
}

}  // namespace

WholeSpaceProblem::WholeSpaceProblem(DifferentialSymbol op_, GridPtr grid_, TPField f_)
    : op(std::move(op_)), grid(std::move(grid_)), f(std::move(f_)) {
    if (op.dimension() != grid->dim())
        throw DimensionMismatch("whole-space problem: symbol/grid dimension mismatch");
    if (mean_fraction(f) > 1e-12)
        throw MeanNotZero("whole-space problem: f has a nonzero time mean");
    const GroupGrid& g = *grid;
    const int n = g.dim();
    const int m = op.order() / 2;
    const DifferentialSymbol principal = op.principal_part();
    auto shape = g.shape();
    std::vector<int> idx(shape.size(), 0);
    std::vector<double> xi(n, 0.0);
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
        bool skip = idx[0] == 0 || g.is_time_nyquist(idx[0]);
        for (int i = 0; i < n && !skip; ++i) skip = g.is_space_nyquist(i, idx[i + 1]);
        if (!skip) {
            const double k = g.time_freq(idx[0]);
            for (int i = 0; i < n; ++i) xi[i] = g.space_freq(i, idx[i + 1]);
            const cplx mval = cplx(0.0, k) + op.eval(xi);
            const double len = parabolic_length(k, xi, m);
            if (std::abs(mval) < 1e-12 * (1.0 + std::pow(len, 2 * m))) {
                // Does the witness point to an Agmon failure on +-i pi/2?
                double xin = 0.0;
                for (double c : xi) xin += c * c;
                bool agmon = false;
                if (xin > 0.0) {
                    std::vector<double> hat(xi);
                    for (double& c : hat) c /= std::sqrt(xin);
                    cplx ph = principal.eval(hat);
                    if (std::abs(ph) > 0.0)
                        agmon = std::abs(std::abs(std::arg(ph)) - kPi / 2.0) < 1e-6;
                }
                std::ostringstream os;
                os << "|ik + A(xi)| = " << fmt_float(std::abs(mval)) << " at k = " << k
                   << ", xi = (";
                for (int i = 0; i < n; ++i) os << (i ? "," : "") << xi[i];
                os << ")" << (agmon ? " [Agmon condition violated on +-i pi/2]" : "");
                throw SymbolVanishes(os.str(), agmon);
            }
        }
        for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
            if (++idx[d] < shape[d]) break;
            idx[d] = 0;
        }
    }
}

TPField solve_wholespace(const WholeSpaceProblem& prob) {
    const DifferentialSymbol& op = prob.op;
    TPField u = apply_multiplier(
        prob.f,
        [&op](double k, std::span<const double> xi) {
            return 1.0 / (cplx(0.0, k) + op.eval(xi));
        },
        /*osc_only=*/true);
    return u;
}

double residual_wholespace(const TPField& u, const TPField& f, const DifferentialSymbol& op) {
    TPField fp = project_osc(f);
    TPField r = apply_multiplier(u, full_multiplier(op));
    r -= fp;
    double den = lp_norm(fp, 2.0);
    double num = lp_norm(r, 2.0);
    return den > 0.0 ? num / den : num;
}

double estimate_ratio_ws(const TPField& u, const DifferentialSymbol& op, double s, double p) {
    const int m = op.order() / 2;
    TPField mu = apply_multiplier(u, full_multiplier(op), /*osc_only=*/true);
    double num = bessel_norm(u, s, p, m);
    double den = bessel_norm(mu, s - 2 * m, p, m) + bessel_norm(u, s - 1.0, p, m);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace tppar
