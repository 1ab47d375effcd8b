#include "tppar/sampling.hpp"

#include <cmath>
#include <random>

#include "tppar/errors.hpp"

namespace tppar {

std::vector<std::vector<double>> unit_sphere_design(int dim, int count) {
    std::vector<std::vector<double>> pts;
    if (dim < 1) throw DimensionMismatch("unit_sphere_design: dim must be >= 1");
    if (dim == 1) {
        pts.push_back({1.0});
        pts.push_back({-1.0});
        return pts;
    }
    if (dim == 2) {
        pts.reserve(count);
        for (int j = 0; j < count; ++j) {
            double phi = 2.0 * kPi * j / count;
            pts.push_back({std::cos(phi), std::sin(phi)});
        }
        return pts;
    }
    if (dim == 3) {
        // Fibonacci lattice.
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        pts.reserve(count);
        for (int j = 0; j < count; ++j) {
            double z = 1.0 - (2.0 * j + 1.0) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = 2.0 * kPi * j / golden;
            pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
        }
        return pts;
    }
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(dim));
    std::normal_distribution<double> gauss(0.0, 1.0);
    pts.reserve(count);
    for (int j = 0; j < count; ++j) {
        std::vector<double> v(dim);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& c : v) {
                c = gauss(rng);
                norm += c * c;
            }
        } while (norm < 1e-12);
        norm = std::sqrt(norm);
        for (double& c : v) c /= norm;
        pts.push_back(std::move(v));
    }
    return pts;
}

std::vector<ParabolicSample> parabolic_sphere_design(int tangential_dim, int count, int m) {
    std::vector<ParabolicSample> samples;
    // Mandatory poles xi' = 0.
    samples.push_back({1.0, std::vector<double>(tangential_dim, 0.0)});
    samples.push_back({-1.0, std::vector<double>(tangential_dim, 0.0)});
    if (tangential_dim == 0) return samples;

    auto euclidean = unit_sphere_design(tangential_dim + 1, count);
    for (const auto& p : euclidean) {
        double eta = p[0];
        std::vector<double> xi(p.begin() + 1, p.end());
        double xi_norm2 = 0.0;
        for (double c : xi) xi_norm2 += c * c;
        if (std::abs(eta) < 1e-300 && xi_norm2 < 1e-300) continue;
        // Rescale along (eta, xi') -> (s^{2m} eta, s xi') onto the parabolic
        // sphere; g(s) = (s^{2m} eta)^2 + (s |xi'|)^{4m} is strictly
        // increasing in s, so bisection suffices.
        const double xin = std::sqrt(xi_norm2);
        auto g = [&](double s) {
            double se = std::pow(s, 2 * m) * eta;
            double sx = std::pow(s * xin, 2 * m);
            return se * se + sx * sx;
        };
        double lo = 0.0, hi = 1.0;
        while (g(hi) < 1.0) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (g(mid) < 1.0 ? lo : hi) = mid;
        }
        double s = 0.5 * (lo + hi);
        ParabolicSample out;
        out.eta = std::pow(s, 2 * m) * eta;
        out.xi_prime.resize(tangential_dim);
        for (int j = 0; j < tangential_dim; ++j) out.xi_prime[j] = s * xi[j];
        samples.push_back(std::move(out));
    }
    return samples;
}

}  // namespace tppar
