#pragma once

#include <string>
#include <vector>

#include "tppar/sampling.hpp"
#include "tppar/symbol.hpp"

namespace tppar {

/// Results of the three structural checks. Every failed flag carries a
/// concrete witness point; margins are reported even on pass.
struct EllipticityReport {
    struct Proper {
        bool pass = true;
        // (a) A^H(xi) != 0 on the sphere.
        double min_symbol_abs = 0.0;
        std::vector<double> symbol_witness;
        // (b) m/m root split of tau -> A^H(zeta + tau xi) for independent pairs.
        double min_root_imag = 0.0;  // min |Im tau| / (1+|tau|) over all pair roots
        std::vector<double> witness_zeta, witness_xi;
        int witness_plus = 0, witness_minus = 0;
        int pairs_checked = 0;
        std::string failure;  // "", "SymbolZero", "DegenerateRoot", "WrongSplit"
    };

    struct Ray {
        double theta = 0.0;
        bool pass = true;
        double angular_margin = 0.0;  // min angular distance of arg A^H(xi) from theta
        std::vector<double> witness_xi;
    };

    struct Complementing {
        double theta = 0.0;
        bool pass = true;
        double min_scaled_det = 0.0;  // min |det F| / prod(row norms) over samples
        double witness_eta = 0.0;
        std::vector<double> witness_xi_prime;
        std::string failure;  // "", "SingularCharMatrix"
    };

    Proper proper;
    std::vector<Ray> agmon;
    std::vector<Complementing> complementing;
    int samples_used = 0;

    bool all_pass() const;
};

EllipticityReport::Proper check_properly_elliptic(const DifferentialSymbol& principal,
                                                  const SamplingPolicy& policy);

EllipticityReport::Ray check_agmon_ray(const DifferentialSymbol& principal, double theta,
                                       const SamplingPolicy& policy);

/// Requires properly elliptic + Agmon on theta (throws RootOnRealAxis
/// otherwise). Samples the parabolic sphere including the xi' = 0 poles.
EllipticityReport::Complementing check_complementing(const OperatorTuple& tuple,
                                                     double theta,
                                                     const SamplingPolicy& policy);

/// Full report on the rays theta = +-pi/2 used by the time-periodic theory.
EllipticityReport check_operator(const OperatorTuple& tuple, const SamplingPolicy& policy);

}  // namespace tppar
