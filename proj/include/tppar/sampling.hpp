#pragma once

#include <vector>

#include "tppar/types.hpp"

namespace tppar {

/// Sphere-sampling density for the ellipticity checkers. Homogeneity reduces
/// all three conditions to the unit sphere, so density is the only knob.
struct SamplingPolicy {
    int sphere_samples = 512;
    unsigned seed = 20177;  // pair sampling for proper ellipticity
};

/// Points on the Euclidean unit sphere S^{dim-1}: the pair {-1,+1} for dim 1,
/// uniform angles for dim 2, a Fibonacci lattice for dim 3, seeded Gaussian
/// directions beyond. Deterministic for a given (dim, count).
std::vector<std::vector<double>> unit_sphere_design(int dim, int count);

/// Point on the parabolic sphere |(eta, xi')| = 1, i.e. eta^2 + |xi'|^{4m} = 1.
struct ParabolicSample {
    double eta;
    std::vector<double> xi_prime;
};

/// Design on the parabolic sphere in R x R^{tangential_dim}; always includes
/// the poles xi' = 0, eta = +-1. Obtained by rescaling Euclidean sphere
/// samples along the parabolic scaling (eta, xi') -> (s^{2m} eta, s xi').
std::vector<ParabolicSample> parabolic_sphere_design(int tangential_dim, int count, int m);

}  // namespace tppar
