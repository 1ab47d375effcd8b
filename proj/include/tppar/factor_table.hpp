#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tppar/factorization.hpp"
#include "tppar/field.hpp"

namespace tppar {

enum class FactorSide { plus, minus };

/// Wiener-Hopf factorizations at every retained boundary mode (k, xi') of a
/// half-space grid: k != 0, no Nyquist planes. Built once, then read-only.
struct FactorTable {
    GridPtr grid;  // full half-space grid
    DifferentialSymbol principal;
    int m = 0;
    std::vector<FactorizationEntry> entries;  // boundary-flat indexed
    std::vector<char> retained;
    double min_margin = 0.0;
    double max_abs_root = 0.0;

    const FactorizationEntry& at(std::size_t boundary_flat) const {
        return entries[boundary_flat];
    }
};

/// Enumerates boundary modes; fn(boundary_flat, k, xi_prime, retained).
void for_each_boundary_mode(
    const GroupGrid& grid,
    const std::function<void(std::size_t, double, std::span<const double>, bool)>& fn);

FactorTable build_factor_table(const OperatorTuple& tuple, GridPtr grid);

/// op[1/M_+] or op[1/(a M_-)]; the leading coefficient a is divided out once
/// on the minus side so that a M_+ M_- = ik + A^H. Non-retained planes are
/// zeroed. Output state matches input state.
TPField apply_factor_inverse(const TPField& u, const FactorTable& table, FactorSide side);

/// Spectral multiplication by the monic factor (no 1/a); inverse of the above
/// up to the a-normalization, used by tests and diagnostics.
TPField apply_factor(const TPField& u, const FactorTable& table, FactorSide side);

}  // namespace tppar
