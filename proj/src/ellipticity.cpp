#include "tppar/ellipticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tppar/errors.hpp"
#include "tppar/factorization.hpp"
#include "tppar/polynomial.hpp"
#include "tppar/roots.hpp"

namespace tppar {

namespace {

/// Coefficients (ascending in tau) of tau -> A^H(zeta + tau xi).
std::vector<cplx> line_polynomial(const DifferentialSymbol& sym,
                                  std::span<const double> zeta,
                                  std::span<const double> xi) {
    const int n = sym.dimension();
    std::vector<cplx> acc{cplx(0.0)};
    acc.resize(sym.order() + 1, cplx(0.0));
    for (const auto& [alpha, a] : sym.coefficients()) {
        std::vector<cplx> term{a};
        for (int j = 0; j < n; ++j) {
            std::vector<cplx> lin{cplx(zeta[j]), cplx(xi[j])};
            for (int q = 0; q < alpha[j]; ++q) term = poly_mul(term, lin);
        }
        for (std::size_t d = 0; d < term.size(); ++d) acc[d] += term[d];
    }
    return acc;
}

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

}  // namespace

bool EllipticityReport::all_pass() const {
    if (!proper.pass) return false;
    for (const auto& r : agmon)
        if (!r.pass) return false;
    for (const auto& c : complementing)
        if (!c.pass) return false;
    return true;
}

EllipticityReport::Proper check_properly_elliptic(const DifferentialSymbol& principal,
                                                  const SamplingPolicy& policy) {
    EllipticityReport::Proper out;
    out.min_symbol_abs = std::numeric_limits<double>::infinity();
    out.min_root_imag = std::numeric_limits<double>::infinity();
    const int n = principal.dimension();
    const int m = principal.order() / 2;
    const double scale = principal.coefficient_scale();

    // (a) nonvanishing on the sphere.
    auto sphere = unit_sphere_design(n, policy.sphere_samples);
    for (const auto& xi : sphere) {
        double mag = std::abs(principal.eval(xi));
        if (mag < out.min_symbol_abs) {
            out.min_symbol_abs = mag;
            out.symbol_witness = xi;
        }
    }
    if (out.min_symbol_abs <= 1e-9 * scale) {
        out.pass = false;
        out.failure = "SymbolZero";
    }

    // (b) m/m split along lines. No linearly independent pairs exist in R^1.
    if (n >= 2) {
        std::mt19937_64 rng(policy.seed);
        std::uniform_int_distribution<std::size_t> pick(0, sphere.size() - 1);
        int target = policy.sphere_samples;
        for (int s = 0; s < target; ++s) {
            const auto& zeta = sphere[pick(rng)];
            const auto& xi = sphere[pick(rng)];
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += zeta[j] * xi[j];
            if (1.0 - dot * dot < 1e-6) continue;  // nearly dependent pair
            std::vector<cplx> p = line_polynomial(principal, zeta, xi);
            if (std::abs(p.back()) <= 1e-12 * scale) {
                // leading coefficient is A^H(xi): already a symbol zero
                if (out.failure.empty()) {
                    out.pass = false;
                    out.failure = "SymbolZero";
                    out.symbol_witness = xi;
                    out.min_symbol_abs = std::abs(p.back());
                }
                continue;
            }
            ++out.pairs_checked;
            std::vector<cplx> roots = poly_roots(p);
            int plus = 0, minus = 0;
            double worst = std::numeric_limits<double>::infinity();
            for (cplx r : roots) {
                double rel = std::abs(r.imag()) / (1.0 + std::abs(r));
                worst = std::min(worst, rel);
                if (r.imag() > 0)
                    ++plus;
                else
                    ++minus;
            }
            bool degenerate = worst < kRootImagTol;
            bool wrong = (plus != m || minus != m);
            if (worst < out.min_root_imag) {
                out.min_root_imag = worst;
                out.witness_zeta = zeta;
                out.witness_xi = xi;
                out.witness_plus = plus;
                out.witness_minus = minus;
            }
            if (degenerate || wrong) {
                out.pass = false;
                if (out.failure.empty() || out.failure == "DegenerateRoot")
                    out.failure = degenerate ? "DegenerateRoot" : "WrongSplit";
                out.witness_zeta = zeta;
                out.witness_xi = xi;
                out.witness_plus = plus;
                out.witness_minus = minus;
            }
        }
    }
    return out;
}

EllipticityReport::Ray check_agmon_ray(const DifferentialSymbol& principal, double theta,
                                       const SamplingPolicy& policy) {
    EllipticityReport::Ray out;
    out.theta = theta;
    out.angular_margin = std::numeric_limits<double>::infinity();
    const double scale = principal.coefficient_scale();
    auto sphere = unit_sphere_design(principal.dimension(), policy.sphere_samples);
    for (const auto& xi : sphere) {
        cplx v = principal.eval(xi);
        double dist;
        if (std::abs(v) <= 1e-12 * scale) {
            dist = 0.0;  // the origin belongs to the closed ray
        } else {
            dist = std::abs(wrap_angle(std::arg(v) - theta));
        }
        if (dist < out.angular_margin) {
            out.angular_margin = dist;
            out.witness_xi = xi;
        }
    }
    out.pass = out.angular_margin > 1e-12;
    return out;
}

EllipticityReport::Complementing check_complementing(const OperatorTuple& tuple,
                                                     double theta,
                                                     const SamplingPolicy& policy) {
    EllipticityReport::Complementing out;
    out.theta = theta;
    out.min_scaled_det = std::numeric_limits<double>::infinity();
    const DifferentialSymbol principal = tuple.interior.principal_part();
    const int m = tuple.half_order();

    auto samples =
        parabolic_sphere_design(tuple.dimension() - 1, policy.sphere_samples, m);
    for (const auto& s : samples) {
        // Q(z) = -r e^{i theta} + A^H(xi', z) with r = |eta| >= 0; for
        // theta = +-pi/2 this is split_roots with eta = -+r.
        const double r = std::abs(s.eta);
        cplx shift = -r * std::exp(cplx(0.0, theta));
        RootSplit split = split_roots_shifted(principal, shift, s.xi_prime);
        std::vector<cplx> c_plus = half_symbol_coeffs(split.plus);
        CharMatrixEntry F = char_matrix_rows(tuple, s.xi_prime, c_plus);
        if (F.scaled_det < out.min_scaled_det) {
            out.min_scaled_det = F.scaled_det;
            out.witness_eta = s.eta;
            out.witness_xi_prime = s.xi_prime;
        }
    }
    out.pass = out.min_scaled_det >= kDetTol;
    if (!out.pass) out.failure = "SingularCharMatrix";
    return out;
}

EllipticityReport check_operator(const OperatorTuple& tuple, const SamplingPolicy& policy) {
    EllipticityReport report;
    const DifferentialSymbol principal = tuple.interior.principal_part();
    report.proper = check_properly_elliptic(principal, policy);
    report.samples_used = policy.sphere_samples;
    for (double theta : {kPi / 2.0, -kPi / 2.0}) {
        report.agmon.push_back(check_agmon_ray(principal, theta, policy));
    }
    if (report.proper.pass && report.agmon[0].pass && report.agmon[1].pass) {
        for (double theta : {kPi / 2.0, -kPi / 2.0})
            report.complementing.push_back(check_complementing(tuple, theta, policy));
    }
    return report;
}

}  // namespace tppar
