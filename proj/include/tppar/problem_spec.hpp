#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tppar/field.hpp"
#include "tppar/halfspace.hpp"
#include "tppar/sampling.hpp"
#include "tppar/symbol.hpp"

namespace tppar {

/// One inline spectral mode: integer frequency indices plus a complex
/// amplitude. k = 0 entries are rejected (MeanModePresent).
struct ModeEntry {
    int k = 0;
    std::vector<int> xi;
    cplx amp;
};

/// Inline mode list or a reference to a TPFIELD1 file.
struct DataSource {
    std::vector<ModeEntry> modes;
    std::string file;
    bool from_file() const { return !file.empty(); }
};

enum class SpecDomain { whole, half };

struct SweepConfig {
    int samples = 100;
    std::uint64_t seed = 1;
    double p = 2.0;
};

struct ProblemSpec {
    double period = 2.0 * kPi;
    int dimension = 1;
    int m = 1;
    std::vector<std::pair<MultiIndex, cplx>> interior_coeffs;
    std::vector<std::vector<std::pair<MultiIndex, cplx>>> boundary_coeffs;
    SpecDomain domain = SpecDomain::whole;
    int time_count = 8;
    std::vector<AxisSpec> axes;
    BcKind bc = BcKind::dirichlet;
    bool bc_explicit = false;
    std::string trace_flavor = "partial";  // "partial" (d_n) or "symbol" (D_n)
    DataSource f;
    std::vector<DataSource> g;
    std::vector<std::string> tasks;
    SamplingPolicy sampling;
    SweepConfig sweep;
    double residual_tolerance = 1e-2;

    DifferentialSymbol build_interior() const;
    std::vector<DifferentialSymbol> build_boundary() const;
    OperatorTuple build_tuple() const;
    GridPtr build_grid() const;

    /// TPField from the f data source on the problem grid; half-domain
    /// problems mask to x_n >= 0.
    TPField build_f(GridPtr grid) const;
    /// Boundary fields (internal symbol-trace convention; the partial flavor
    /// conversion diag((-i)^{j-1}) is applied here for Dirichlet problems).
    std::vector<TPField> build_g(GridPtr grid) const;
};

/// Parses and validates the JSON problem-spec text. Errors carry line info.
ProblemSpec parse_spec(const std::string& text);
ProblemSpec load_spec_file(const std::string& path);

}  // namespace tppar
