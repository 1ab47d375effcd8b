#include "tppar/problem_spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tppar/errors.hpp"
#include "tppar/field_io.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/transform.hpp"

namespace tppar {

namespace {

using nlohmann::json;

const cplx I(0.0, 1.0);

int line_of_offset(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

cplx read_amp(const json& j, const char* where) {
    double re = j.value("re", 0.0);
    double im = j.value("im", 0.0);
    if (!j.contains("re") && !j.contains("im"))
        throw SchemaError(std::string(where) + ": amplitude needs re and/or im");
    return cplx(re, im);
}

std::vector<std::pair<MultiIndex, cplx>> read_coeffs(const json& j, int dimension,
                                                     const char* where) {
    if (!j.is_array()) throw SchemaError(std::string(where) + ": expected a coefficient list");
    std::vector<std::pair<MultiIndex, cplx>> out;
    for (const auto& term : j) {
        if (!term.contains("alpha"))
            throw SchemaError(std::string(where) + ": coefficient without alpha");
        MultiIndex alpha = term.at("alpha").get<MultiIndex>();
        if (static_cast<int>(alpha.size()) != dimension)
            throw SchemaError(std::string(where) + ": alpha length != dimension");
        out.emplace_back(std::move(alpha), read_amp(term, where));
    }
    return out;
}

DataSource read_data_source(const json& j, int mode_dim, const char* where) {
    DataSource src;
    if (j.is_null()) return src;
    if (j.contains("file")) {
        src.file = j.at("file").get<std::string>();
        return src;
    }
    if (!j.contains("modes"))
        throw SchemaError(std::string(where) + ": data needs \"modes\" or \"file\"");
    for (const auto& mj : j.at("modes")) {
        ModeEntry e;
        if (!mj.contains("k")) throw SchemaError(std::string(where) + ": mode without k");
        e.k = mj.at("k").get<int>();
        if (e.k == 0)
            throw MeanModePresent(std::string(where) + ": k = 0 mode in purely oscillatory data");
        const char* xi_key = mj.contains("xi_prime") ? "xi_prime" : "xi";
        if (mode_dim > 0) {
            if (!mj.contains(xi_key))
                throw SchemaError(std::string(where) + ": mode without xi indices");
            e.xi = mj.at(xi_key).get<std::vector<int>>();
        } else if (mj.contains(xi_key)) {
            e.xi = mj.at(xi_key).get<std::vector<int>>();
        }
        if (static_cast<int>(e.xi.size()) != mode_dim)
            throw SchemaError(std::string(where) + ": xi index count != expected dimension");
        e.amp = read_amp(mj, where);
        src.modes.push_back(std::move(e));
    }
    return src;
}

std::map<MultiIndex, cplx> to_map(const std::vector<std::pair<MultiIndex, cplx>>& coeffs) {
    std::map<MultiIndex, cplx> m;
    for (const auto& [alpha, a] : coeffs) m[alpha] += a;
    return m;
}

/// Physical-space accumulation of inline modes (exact on-grid exponentials).
TPField modes_to_field(GridPtr grid, const std::vector<ModeEntry>& modes,
                       const char* where) {
    const GroupGrid& g = *grid;
    const int n = g.dim();
    TPField out(grid);
    for (const ModeEntry& e : modes) {
        if (std::abs(e.k) >= g.time_count() / 2)
            throw SchemaError(std::string(where) + ": |k| reaches the Nyquist index");
        for (int i = 0; i < n; ++i)
            if (std::abs(e.xi[i]) >= g.axis(i).count / 2)
                throw SchemaError(std::string(where) + ": |xi| reaches the Nyquist index");
        auto shape = g.shape();
        std::vector<int> idx(shape.size(), 0);
        const double k = 2.0 * kPi / g.period() * e.k;
        for (std::size_t flat = 0; flat < out.size(); ++flat) {
            double phase = k * g.time_node(idx[0]);
            for (int i = 0; i < n; ++i)
                phase += kPi / g.axis(i).half_length * e.xi[i] * g.space_node(i, idx[i + 1]);
            out[flat] += e.amp * std::exp(I * phase);
            for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
                if (++idx[d] < shape[d]) break;
                idx[d] = 0;
            }
        }
    }
    return out;
}

TPField field_from_file(GridPtr grid, const std::string& path, const char* where) {
    TPField file_field = read_field(path);
    if (!file_field.grid()->same_layout(*grid))
        throw SchemaError(std::string(where) + ": field file " + path +
                          " does not match the problem grid");
    TPField out(grid, file_field.state());
    out.data() = file_field.data();
    if (out.state() == FieldState::spectral) inverse_in_place(out);
    return out;
}

}  // namespace

DifferentialSymbol ProblemSpec::build_interior() const {
    return DifferentialSymbol(dimension, 2 * m, to_map(interior_coeffs));
}

std::vector<DifferentialSymbol> ProblemSpec::build_boundary() const {
    std::vector<DifferentialSymbol> out;
    for (const auto& coeffs : boundary_coeffs) {
        int order = 0;
        for (const auto& [alpha, a] : coeffs) order = std::max(order, multi_order(alpha));
        out.emplace_back(dimension, order, to_map(coeffs));
    }
    return out;
}

OperatorTuple ProblemSpec::build_tuple() const {
    return OperatorTuple(build_interior(), build_boundary());
}

GridPtr ProblemSpec::build_grid() const {
    std::optional<int> half;
    if (domain == SpecDomain::half) half = dimension - 1;
    return make_grid(period, dimension, time_count, axes, half);
}

TPField ProblemSpec::build_f(GridPtr grid) const {
    TPField out(grid);
    if (f.from_file())
        out = field_from_file(grid, f.file, "data.f");
    else if (!f.modes.empty())
        out = modes_to_field(grid, f.modes, "data.f");
    if (domain == SpecDomain::half) out = restrict_half(out);
    return out;
}

std::vector<TPField> ProblemSpec::build_g(GridPtr grid) const {
    std::vector<TPField> out;
    if (domain != SpecDomain::half) return out;
    GridPtr bgrid = grid->boundary();
    for (int j = 0; j < m; ++j) {
        TPField gj(bgrid);
        if (j < static_cast<int>(g.size())) {
            if (g[j].from_file())
                gj = field_from_file(bgrid, g[j].file, "data.g");
            else if (!g[j].modes.empty())
                gj = modes_to_field(bgrid, g[j].modes, "data.g");
        }
        // partial flavor: user supplies d_n^{j-1} traces; internally the
        // Dirichlet data is D_n^{j-1} u(0) = (-i)^{j-1} d_n^{j-1} u(0)
        if (bc == BcKind::dirichlet && trace_flavor == "partial" && j > 0)
            gj *= std::pow(-I, j);
        out.push_back(std::move(gj));
    }
    return out;
}

ProblemSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("JSON parse error near line " +
                          std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
    try {
        ProblemSpec spec;
        if (!j.contains("period") || !j.contains("dimension") || !j.contains("m"))
            throw SchemaError("spec requires period, dimension and m");
        spec.period = j.at("period").get<double>();
        spec.dimension = j.at("dimension").get<int>();
        spec.m = j.at("m").get<int>();
        if (spec.period <= 0.0) throw SchemaError("period must be positive");
        if (spec.dimension < 1) throw SchemaError("dimension must be >= 1");
        if (spec.m < 1 || spec.m > 4) throw SchemaError("m must be in 1..4");

        spec.interior_coeffs = read_coeffs(j.at("interior"), spec.dimension, "interior");
        if (j.contains("boundary")) {
            for (const auto& bj : j.at("boundary"))
                spec.boundary_coeffs.push_back(read_coeffs(bj, spec.dimension, "boundary"));
        }

        const std::string dom = j.value("domain", std::string("whole"));
        if (dom == "whole")
            spec.domain = SpecDomain::whole;
        else if (dom == "half")
            spec.domain = SpecDomain::half;
        else
            throw SchemaError("domain must be \"whole\" or \"half\"");

        if (spec.domain == SpecDomain::half &&
            static_cast<int>(spec.boundary_coeffs.size()) != spec.m)
            throw SchemaError("half-space spec needs exactly m boundary operators, got " +
                              std::to_string(spec.boundary_coeffs.size()));

        const auto& gj = j.at("grid");
        spec.time_count = gj.at("time_count").get<int>();
        for (const auto& aj : gj.at("axes"))
            spec.axes.push_back(
                {aj.at("half_length").get<double>(), aj.at("count").get<int>()});
        if (static_cast<int>(spec.axes.size()) != spec.dimension)
            throw SchemaError("grid.axes length != dimension");

        spec.trace_flavor = j.value("trace_flavor", std::string("partial"));
        if (spec.trace_flavor != "partial" && spec.trace_flavor != "symbol")
            throw SchemaError("trace_flavor must be \"partial\" or \"symbol\"");

        if (j.contains("data")) {
            const auto& dj = j.at("data");
            if (dj.contains("f")) spec.f = read_data_source(dj.at("f"), spec.dimension, "data.f");
            if (dj.contains("g")) {
                for (const auto& gdata : dj.at("g"))
                    spec.g.push_back(read_data_source(gdata, spec.dimension - 1, "data.g"));
            }
        }

        if (j.contains("tasks"))
            spec.tasks = j.at("tasks").get<std::vector<std::string>>();
        for (const auto& t : spec.tasks)
            if (t != "check" && t != "solve" && t != "verify" && t != "sweep" &&
                t != "oracle-compare")
                throw SchemaError("unknown task \"" + t + "\"");

        if (j.contains("sampling"))
            spec.sampling.sphere_samples =
                j.at("sampling").value("sphere_samples", spec.sampling.sphere_samples);
        if (j.contains("sweep")) {
            const auto& sj = j.at("sweep");
            spec.sweep.samples = sj.value("samples", spec.sweep.samples);
            spec.sweep.seed = sj.value("seed", spec.sweep.seed);
            spec.sweep.p = sj.value("p", spec.sweep.p);
        }
        if (j.contains("tolerances"))
            spec.residual_tolerance =
                j.at("tolerances").value("residual", spec.residual_tolerance);

        // bc kind: explicit or derived from the boundary operators
        if (spec.domain == SpecDomain::half) {
            OperatorTuple tuple = spec.build_tuple();
            const std::string bcs = j.value("bc", std::string("auto"));
            if (bcs == "dirichlet")
                spec.bc = BcKind::dirichlet;
            else if (bcs == "general")
                spec.bc = BcKind::general;
            else if (bcs == "auto")
                spec.bc = tuple.is_dirichlet() ? BcKind::dirichlet : BcKind::general;
            else
                throw SchemaError("bc must be \"dirichlet\", \"general\" or \"auto\"");
            if (spec.bc == BcKind::dirichlet && !tuple.is_dirichlet())
                throw SchemaError("bc=dirichlet but boundary operators are not D_n^{j-1}");
            if (static_cast<int>(spec.g.size()) > spec.m)
                throw SchemaError("more boundary data entries than boundary operators");
        }
        // validate symbol construction eagerly for first-error diagnostics
        (void)spec.build_interior();
        (void)spec.build_boundary();
        (void)spec.build_grid();
        return spec;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed spec: ") + e.what());
    } catch (const DimensionMismatch& e) {
        throw SchemaError(std::string("malformed spec: ") + e.what());
    } catch (const InvalidGrid& e) {
        throw SchemaError(std::string("malformed spec: ") + e.what());
    }
}

ProblemSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

}  // namespace tppar
