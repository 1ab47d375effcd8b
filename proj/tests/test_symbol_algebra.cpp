#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "tppar/ellipticity.hpp"
#include "tppar/errors.hpp"
#include "tppar/factorization.hpp"
#include "tppar/norms.hpp"
#include "tppar/polynomial.hpp"
#include "tppar/roots.hpp"
#include "tppar/symbol.hpp"

using namespace tppar;

namespace {

const cplx I(0.0, 1.0);

cplx polar1(double arg) { return std::polar(1.0, arg); }

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

/// Multiset comparison by greedy nearest matching (robust against ulp-level
/// ties that can flip a lexicographic sort).
bool multiset_close(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    for (cplx x : a) {
        std::size_t best = b.size();
        double best_d = tol;
        for (std::size_t j = 0; j < b.size(); ++j) {
            double d = std::abs(x - b[j]);
            if (d <= best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == b.size()) return false;
        b.erase(b.begin() + best);
    }
    return true;
}

DifferentialSymbol heat(int n) { return DifferentialSymbol::laplacian_power(n, 1); }
DifferentialSymbol backward_heat(int n) {
    return DifferentialSymbol::laplacian_power(n, 1, cplx(-1.0));
}
DifferentialSymbol biharmonic(int n) { return DifferentialSymbol::laplacian_power(n, 2); }

// Closed-form oracle for the tau-roots of |zeta + tau xi|^2 = 0 (independent
// quadratic path): tau = (-(z.x) +- i sqrt(|x|^2|z|^2 - (z.x)^2)) / |x|^2.
std::pair<cplx, cplx> quadratic_line_roots(const std::vector<double>& zeta,
                                           const std::vector<double>& xi) {
    double zz = 0, xx = 0, zx = 0;
    for (std::size_t j = 0; j < zeta.size(); ++j) {
        zz += zeta[j] * zeta[j];
        xx += xi[j] * xi[j];
        zx += zeta[j] * xi[j];
    }
    double disc = xx * zz - zx * zx;
    cplx root1 = (-zx + I * std::sqrt(disc)) / xx;
    cplx root2 = (-zx - I * std::sqrt(disc)) / xx;
    return {root1, root2};
}

}  // namespace

TEST_CASE("principal_part filters by degree") {
    DifferentialSymbol a(1, 2, {{{2}, cplx(1.0)}, {{0}, cplx(5.0)}});
    auto p = a.principal_part();
    CHECK(p.coefficients().size() == 1);
    CHECK(p.coefficients().count({2}) == 1);
    CHECK(p.order() == 2);
    CHECK(p.dimension() == 1);

    auto h = heat(2);
    auto hp = h.principal_part();
    CHECK(hp.coefficients() == h.coefficients());

    DifferentialSymbol q(2, 4,
                         {{{4, 0}, cplx(1.0)},
                          {{0, 4}, cplx(1.0)},
                          {{2, 2}, cplx(1.0)},
                          {{1, 0}, cplx(1.0)}});
    auto qp = q.principal_part();
    CHECK(qp.coefficients().size() == 3);
    CHECK(qp.coefficients().count({1, 0}) == 0);
}

TEST_CASE("eval_symbol on real and complex arguments") {
    auto h2 = heat(2);
    double xi34[] = {3.0, 4.0};
    CHECK(close(h2.eval(xi34), cplx(25.0), 1e-14));

    auto h1 = heat(1);
    CHECK(close(h1.eval({}, I), cplx(-1.0), 1e-14));

    // |xi|^4 at z = e^{i 3pi/8}: direct complex-power oracle z^4
    auto b1 = biharmonic(1);
    cplx z = polar1(3.0 * kPi / 8.0);
    cplx oracle = z * z * z * z;
    CHECK(close(oracle, -I, 1e-14));
    CHECK(close(b1.eval({}, z), oracle, 1e-12));

    double xi_bad[] = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS((void)h2.eval(std::span<const double>(xi_bad, 3)), DimensionMismatch);
}

TEST_CASE("split_roots closed forms") {
    // heat, eta = 1: roots of z^2 + i
    auto s = split_roots(heat(1), 1.0, {});
    REQUIRE(s.plus.size() == 1);
    REQUIRE(s.minus.size() == 1);
    CHECK(close(s.plus[0], polar1(3.0 * kPi / 4.0), 1e-10));
    CHECK(close(s.minus[0], polar1(-kPi / 4.0), 1e-10));
    CHECK(close(s.leading, cplx(1.0), 1e-14));

    // backward heat, eta = 1: roots of i - z^2
    auto sb = split_roots(backward_heat(1), 1.0, {});
    CHECK(close(sb.plus[0], polar1(kPi / 4.0), 1e-10));
    CHECK(close(sb.minus[0], -polar1(kPi / 4.0), 1e-10));

    // biharmonic, eta = 1: roots of z^4 + i
    auto s4 = split_roots(biharmonic(1), 1.0, {});
    REQUIRE(s4.plus.size() == 2);
    CHECK(multiset_close(s4.plus, {polar1(3.0 * kPi / 8.0), polar1(7.0 * kPi / 8.0)}, 1e-10));
    CHECK(multiset_close(s4.minus, {polar1(-kPi / 8.0), polar1(-5.0 * kPi / 8.0)}, 1e-10));
}

TEST_CASE("split_roots error paths") {
    // i|xi|^2: roots of i(eta + z^2) are real for eta < 0
    DifferentialSymbol ih(1, 2, {{{2}, I}});
    CHECK_THROWS_AS((void)split_roots(ih, -1.0, {}), RootOnRealAxis);
}

TEST_CASE("half_symbol_coeffs via Vieta") {
    cplx rho = polar1(3.0 * kPi / 4.0);
    auto c1 = half_symbol_coeffs(std::vector<cplx>{rho});
    REQUIRE(c1.size() == 2);
    CHECK(close(c1[0], cplx(1.0), 0.0));
    CHECK(close(c1[1], -rho, 1e-15));

    cplx r1 = polar1(3.0 * kPi / 8.0), r2 = polar1(7.0 * kPi / 8.0);
    auto c2 = half_symbol_coeffs(std::vector<cplx>{r1, r2});
    REQUIRE(c2.size() == 3);
    CHECK(close(c2[0], cplx(1.0), 0.0));
    CHECK(close(c2[1], -(r1 + r2), 1e-14));  // ~ 0.54120 - 1.30656i
    CHECK(close(c2[2], r1 * r2, 1e-14));     // ~ -0.70711 - 0.70711i
    CHECK(close(c2[1], cplx(0.5411961001461969, -1.3065629648763766), 1e-12));
    CHECK(close(c2[2], cplx(-0.7071067811865477, -0.7071067811865475), 1e-12));

    auto c0 = half_symbol_coeffs(std::vector<cplx>{cplx(0.0), cplx(0.0)});
    CHECK(close(c0[0], cplx(1.0), 0.0));
    CHECK(close(c0[1], cplx(0.0), 0.0));
    CHECK(close(c0[2], cplx(0.0), 0.0));
}

TEST_CASE("poly_mod synthetic division") {
    cplx rho = polar1(0.3);
    // p = z mod (z - rho) -> rho
    std::vector<cplx> p{cplx(0.0), cplx(1.0)};
    std::vector<cplx> q{-rho, cplx(1.0)};
    auto r = poly_mod(p, q);
    REQUIRE(r.size() == 1);
    CHECK(close(r[0], rho, 1e-15));

    // p = 1 (degree below divisor)
    std::vector<cplx> one{cplx(1.0)};
    auto r1 = poly_mod(one, q);
    CHECK(close(r1[0], cplx(1.0), 0.0));

    // p = z^3 mod (z^2 + 1): hand-check oracle gives remainder -z, quotient z
    std::vector<cplx> z3{cplx(0.0), cplx(0.0), cplx(0.0), cplx(1.0)};
    std::vector<cplx> q2{cplx(1.0), cplx(0.0), cplx(1.0)};
    std::vector<cplx> quot;
    auto r2 = poly_mod(z3, q2, &quot);
    REQUIRE(r2.size() == 2);
    CHECK(close(r2[0], cplx(0.0), 0.0));
    CHECK(close(r2[1], cplx(-1.0), 0.0));
    CHECK(close(quot[0], cplx(0.0), 0.0));
    CHECK(close(quot[1], cplx(1.0), 0.0));
}

TEST_CASE("char_matrix small cases") {
    SUBCASE("heat + Dirichlet: F = [1]") {
        auto tuple = OperatorTuple::dirichlet(heat(1));
        auto fact = factorize_mode(heat(1), 1.0, {});
        auto cm = char_matrix(tuple, 1.0, {}, fact);
        CHECK(close(cm.f(0, 0), cplx(1.0), 1e-14));
        CHECK(close(cm.finv(0, 0), cplx(1.0), 1e-14));
    }
    SUBCASE("heat + Neumann: F = [rho+]") {
        OperatorTuple tuple(heat(1), {DifferentialSymbol::normal_derivative(1, 1)});
        auto fact = factorize_mode(heat(1), 1.0, {});
        auto cm = char_matrix(tuple, 1.0, {}, fact);
        CHECK(close(cm.f(0, 0), polar1(3.0 * kPi / 4.0), 1e-10));
    }
    SUBCASE("Laplacian + tangential derivative at xi' = 0 is singular") {
        OperatorTuple tuple(heat(2), {DifferentialSymbol::tangential_derivative(2, 0)});
        double xi0[] = {0.0};
        auto fact = factorize_mode(heat(2), 1.0, std::span<const double>(xi0, 1));
        CHECK_THROWS_AS((void)char_matrix(tuple, 1.0, std::span<const double>(xi0, 1), fact),
                        SingularCharMatrix);
    }
}

TEST_CASE("check_properly_elliptic") {
    SamplingPolicy policy;
    SUBCASE("laplacian n=2 passes with 1/1 splits") {
        auto r = check_properly_elliptic(heat(2), policy);
        CHECK(r.pass);
        CHECK(r.failure.empty());
        CHECK(r.pairs_checked > 100);
        CHECK(r.min_symbol_abs > 0.9);  // |xi|^2 = 1 on the sphere
    }
    SUBCASE("wave symbol fails with witness on the diagonal") {
        DifferentialSymbol wave(2, 2, {{{2, 0}, cplx(1.0)}, {{0, 2}, cplx(-1.0)}});
        auto r = check_properly_elliptic(wave, policy);
        CHECK(!r.pass);
        // A^H vanishes at (1,1)/sqrt(2); the uniform-angle design hits it.
        CHECK(r.min_symbol_abs <= 1e-12);
        REQUIRE(r.symbol_witness.size() == 2);
        CHECK(std::abs(std::abs(r.symbol_witness[0]) - std::abs(r.symbol_witness[1])) < 1e-9);
    }
    SUBCASE("biharmonic n=2 passes with 2/2 splits") {
        auto r = check_properly_elliptic(biharmonic(2), policy);
        CHECK(r.pass);
        CHECK(r.witness_plus + r.witness_minus == 4);
    }
}

TEST_CASE("proper ellipticity agrees with the closed-form oracle on random pairs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 100) {
        std::vector<double> zeta{u(rng), u(rng)}, xi{u(rng), u(rng)};
        double xx = xi[0] * xi[0] + xi[1] * xi[1];
        double zz = zeta[0] * zeta[0] + zeta[1] * zeta[1];
        double zx = zeta[0] * xi[0] + zeta[1] * xi[1];
        if (xx < 0.1 || zz < 0.1 || xx * zz - zx * zx < 1e-2) continue;
        ++checked;
        auto [t1, t2] = quadratic_line_roots(zeta, xi);

        // m=1: roots of |zeta + tau xi|^2 from the checker's machinery
        std::vector<cplx> p{cplx(zz), cplx(2.0 * zx), cplx(xx)};
        auto roots = poly_roots(p);
        CHECK(multiset_close(roots, {t1, t2}, 1e-10));
        CHECK(((roots[0].imag() > 0) != (roots[1].imag() > 0)));

        // m=2: biharmonic line polynomial is the square; roots doubled
        std::vector<cplx> p4 = poly_mul(p, p);
        auto roots4 = poly_roots(p4);
        int plus = 0, minus = 0;
        for (cplx r : roots4) (r.imag() > 0 ? plus : minus)++;
        CHECK(plus == 2);
        CHECK(minus == 2);
    }
}

TEST_CASE("check_agmon_ray") {
    SamplingPolicy policy;
    SUBCASE("heat passes on the imaginary rays with margin pi/2") {
        auto r = check_agmon_ray(heat(2), kPi / 2.0, policy);
        CHECK(r.pass);
        CHECK(r.angular_margin == doctest::Approx(kPi / 2.0).epsilon(1e-10));
    }
    SUBCASE("backward heat passes on both rays") {
        for (double theta : {kPi / 2.0, -kPi / 2.0}) {
            auto r = check_agmon_ray(backward_heat(2), theta, policy);
            CHECK(r.pass);
            CHECK(r.angular_margin == doctest::Approx(kPi / 2.0).epsilon(1e-10));
        }
    }
    SUBCASE("i |xi|^2 lies on the ray") {
        DifferentialSymbol ih(2, 2, {{{2, 0}, I}, {{0, 2}, I}});
        auto r = check_agmon_ray(ih, kPi / 2.0, policy);
        CHECK(!r.pass);
        CHECK(r.angular_margin <= 1e-12);
    }
}

TEST_CASE("check_complementing") {
    SamplingPolicy policy;
    SUBCASE("heat + Dirichlet passes with margin 1") {
        auto tuple = OperatorTuple::dirichlet(heat(2));
        for (double theta : {kPi / 2.0, -kPi / 2.0}) {
            auto r = check_complementing(tuple, theta, policy);
            CHECK(r.pass);
            CHECK(r.min_scaled_det == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("Laplacian + tangential derivative fails at xi' = 0") {
        OperatorTuple tuple(heat(2), {DifferentialSymbol::tangential_derivative(2, 0)});
        auto r = check_complementing(tuple, kPi / 2.0, policy);
        CHECK(!r.pass);
        CHECK(r.failure == "SingularCharMatrix");
        REQUIRE(r.witness_xi_prime.size() == 1);
        CHECK(std::abs(r.witness_xi_prime[0]) <= 1e-12);
    }
    SUBCASE("clamped biharmonic passes") {
        OperatorTuple tuple(biharmonic(2), {DifferentialSymbol::normal_derivative(2, 0),
                                            DifferentialSymbol::normal_derivative(2, 1)});
        for (double theta : {kPi / 2.0, -kPi / 2.0}) {
            auto r = check_complementing(tuple, theta, policy);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("factorization homogeneity and factor identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    auto sym1 = heat(1);
    auto sym2 = biharmonic(2);

    for (int trial = 0; trial < 100; ++trial) {
        for (double lambda : {2.0, 0.5}) {
            // heat n=1
            {
                double eta = (trial % 2 ? 1.0 : -1.0) * mag(rng);
                auto base = factorize_mode(sym1, eta, {});
                auto scaled = factorize_mode(sym1, std::pow(lambda, 2) * eta, {});
                CHECK(multiset_close({lambda * base.rho_plus[0]}, {scaled.rho_plus[0]}, 1e-8));
                // c_alpha: lambda^alpha c(eta) = c(lambda^{2m} eta)
                for (int a = 0; a <= 1; ++a)
                    CHECK(close(std::pow(lambda, a) * base.c_plus[a], scaled.c_plus[a], 1e-8));
            }
            // biharmonic n=2 (m=2)
            {
                double eta = (trial % 2 ? 1.0 : -1.0) * mag(rng);
                std::vector<double> xip{u(rng)};
                std::vector<double> xip_scaled{lambda * xip[0]};
                auto base = factorize_mode(sym2, eta, xip);
                auto scaled = factorize_mode(sym2, std::pow(lambda, 4) * eta, xip_scaled);
                auto lhs = base.rho_plus;
                for (auto& r : lhs) r *= lambda;
                CHECK(multiset_close(lhs, scaled.rho_plus, 1e-8));
                for (int a = 0; a <= 2; ++a)
                    CHECK(close(std::pow(lambda, a) * base.c_plus[a], scaled.c_plus[a], 1e-8));
            }
        }
    }

    // Factor product a * M_+(z) * M_-(z) = i eta + A^H(xi', z) at random z.
    std::uniform_real_distribution<double> zr(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        double eta = (trial % 2 ? 1.0 : -1.0) * mag(rng);
        std::vector<double> xip{u(rng)};
        auto f = factorize_mode(sym2, eta, xip);
        for (int j = 0; j < 10; ++j) {
            cplx z(zr(rng), zr(rng));
            cplx lhs = f.leading * f.eval_plus(z) * f.eval_minus(z);
            cplx rhs = cplx(0.0, eta) + sym2.eval(xip, z);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("characteristic matrix inverse quality") {
    // ||F F^-1 - I||_max <= 1e-10 whenever cond <= 1e8
    OperatorTuple tuple(biharmonic(2), {DifferentialSymbol::normal_derivative(2, 2),
                                        DifferentialSymbol::normal_derivative(2, 3)});
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        double eta = (trial % 2 ? 1.0 : -1.0) * mag(rng);
        std::vector<double> xip{u(rng)};
        auto fact = factorize_mode(tuple.interior, eta, xip);
        auto cm = char_matrix(tuple, eta, xip, fact);
        if (cm.cond > 1e8) continue;
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) {
                cplx prod = 0.0;
                for (int s = 0; s < 2; ++s) prod += cm.f(j, s) * cm.finv(s, l);
                CHECK(std::abs(prod - (j == l ? cplx(1.0) : cplx(0.0))) <= 1e-10);
            }
    }
}

TEST_CASE("characteristic matrix scaling and growth bounds") {
    // clamped biharmonic in n=2: m=2, boundary orders (0, 1)
    OperatorTuple tuple(biharmonic(2), {DifferentialSymbol::normal_derivative(2, 0),
                                        DifferentialSymbol::normal_derivative(2, 1)});
    const int m = 2;
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> mag(0.5, 2.0);

    auto cm_at = [&](double eta, const std::vector<double>& xip) {
        auto fact = factorize_mode(tuple.interior, eta, xip);
        return char_matrix(tuple, eta, xip, fact);
    };

    for (int trial = 0; trial < 100; ++trial) {
        double eta = (trial % 2 ? 1.0 : -1.0) * mag(rng);
        std::vector<double> xip{u(rng)};
        auto base = cm_at(eta, xip);
        for (double lambda : {2.0, 0.5}) {
            std::vector<double> xps{lambda * xip[0]};
            auto scaled = cm_at(std::pow(lambda, 2 * m) * eta, xps);
            for (int j = 0; j < m; ++j) {
                int mj = tuple.boundary_order(j);
                for (int l = 0; l < m; ++l) {
                    cplx want = std::pow(lambda, l - mj) * scaled.f(j, l);
                    CHECK(close(base.f(j, l), want, 1e-8 * (1.0 + std::abs(want))));
                    cplx want_inv = std::pow(lambda, tuple.boundary_order(l) - j) *
                                    scaled.finv(j, l);
                    CHECK(close(base.finv(j, l), want_inv, 1e-8 * (1.0 + std::abs(want_inv))));
                }
            }
        }
    }

    // Growth bound |F_jl| <= C |(eta, xi')|^{m_{j+1} - l} with C the sphere
    // supremum; include each test point's own sphere projection in C.
    auto sphere = parabolic_sphere_design(1, 256, m);
    std::vector<std::vector<double>> sup(m, std::vector<double>(m, 0.0));
    auto absorb = [&](double eta, const std::vector<double>& xip) {
        auto cm = cm_at(eta, xip);
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l)
                sup[j][l] = std::max(sup[j][l], std::abs(cm.f(j, l)));
    };
    for (const auto& s : sphere)
        if (s.eta != 0.0 || s.xi_prime[0] != 0.0) absorb(s.eta, s.xi_prime);

    std::vector<std::pair<double, std::vector<double>>> pts;
    for (int trial = 0; trial < 50; ++trial) {
        double eta = (trial % 2 ? 1.0 : -1.0) * mag(rng) * 3.0;
        std::vector<double> xip{u(rng)};
        pts.push_back({eta, xip});
        // project to the parabolic sphere: lambda = 1/len
        double len = parabolic_length(eta, xip, m);
        double li = 1.0 / len;
        absorb(std::pow(li, 2 * m) * eta, {li * xip[0]});
    }
    for (const auto& [eta, xip] : pts) {
        double len = parabolic_length(eta, xip, m);
        auto cm = cm_at(eta, xip);
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) {
                double bound = sup[j][l] * std::pow(len, tuple.boundary_order(j) - l);
                CHECK(std::abs(cm.f(j, l)) <= bound * (1.0 + 1e-8) + 1e-12);
            }
    }
}
