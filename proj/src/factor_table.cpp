#include "tppar/factor_table.hpp"

#include <algorithm>
#include <limits>

#include "tppar/errors.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/parallel.hpp"
#include "tppar/transform.hpp"

namespace tppar {

void for_each_boundary_mode(
    const GroupGrid& grid,
    const std::function<void(std::size_t, double, std::span<const double>, bool)>& fn) {
    if (!grid.half_axis()) throw InvalidGrid("boundary modes require a half-space grid");
    const int n = grid.dim();
    const int nt = grid.time_count();
    std::vector<long> bshape;
    bshape.push_back(nt);
    for (int i = 0; i + 1 < n; ++i) bshape.push_back(grid.axis(i).count);
    std::size_t total = 1;
    for (long s : bshape) total *= s;

    std::vector<int> idx(bshape.size(), 0);
    std::vector<double> xi(n - 1, 0.0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        bool retained = idx[0] != 0 && !grid.is_time_nyquist(idx[0]);
        for (int i = 0; i + 1 < n && retained; ++i)
            retained = !grid.is_space_nyquist(i, idx[i + 1]);
        for (int i = 0; i + 1 < n; ++i) xi[i] = grid.space_freq(i, idx[i + 1]);
        fn(flat, grid.time_freq(idx[0]), xi, retained);
        for (int d = static_cast<int>(bshape.size()) - 1; d >= 0; --d) {
            if (++idx[d] < bshape[d]) break;
            idx[d] = 0;
        }
    }
}

FactorTable build_factor_table(const OperatorTuple& tuple, GridPtr grid) {
    FactorTable table{grid, tuple.interior.principal_part(), tuple.half_order(), {}, {}, 0, 0};

    struct Mode {
        std::size_t flat;
        double k;
        std::vector<double> xi_prime;
    };
    std::vector<Mode> todo;
    std::size_t total = 0;
    for_each_boundary_mode(*grid, [&](std::size_t flat, double k,
                                      std::span<const double> xi, bool retained) {
        total = std::max(total, flat + 1);
        if (retained) todo.push_back({flat, k, {xi.begin(), xi.end()}});
    });
    table.entries.assign(total, FactorizationEntry{});
    table.retained.assign(total, 0);

    std::vector<std::string> failure(todo.size());
    parallel_for(todo.size(), [&](std::size_t i) {
        try {
            table.entries[todo[i].flat] =
                factorize_mode(table.principal, todo[i].k, todo[i].xi_prime);
            table.retained[todo[i].flat] = 1;
        } catch (const Error& e) {
            failure[i] = e.what();
        }
    });
    for (const auto& msg : failure)
        if (!msg.empty()) throw RootOnRealAxis("factor table: " + msg);

    table.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < total; ++f) {
        if (!table.retained[f]) continue;
        table.min_margin = std::min(table.min_margin, table.entries[f].margin);
        for (cplx r : table.entries[f].rho_plus)
            table.max_abs_root = std::max(table.max_abs_root, std::abs(r));
        for (cplx r : table.entries[f].rho_minus)
            table.max_abs_root = std::max(table.max_abs_root, std::abs(r));
    }
    return table;
}

namespace {

TPField apply_along_normal(const TPField& u, const FactorTable& table,
                           const std::function<cplx(const FactorizationEntry&, cplx)>& mode_value) {
    if (mean_fraction(u) > 1e-12)
        throw MeanNotZero("factor application: input has a nonzero time mean");
    const GroupGrid& g = *table.grid;
    const bool was_physical = u.state() == FieldState::physical;
    TPField w = was_physical ? forward(u) : u;
    const int axis = *g.half_axis();
    const int nn = g.axis(axis).count;
    for_each_boundary_mode(g, [&](std::size_t bflat, double, std::span<const double>,
                                  bool retained) {
        cplx* line = w.data().data() + bflat * nn;
        if (!retained) {
            std::fill(line, line + nn, cplx(0.0));
            return;
        }
        const FactorizationEntry& e = table.at(bflat);
        for (int q = 0; q < nn; ++q) {
            if (g.is_space_nyquist(axis, q)) {
                line[q] = 0.0;
                continue;
            }
            line[q] *= mode_value(e, cplx(g.space_freq(axis, q), 0.0));
        }
    });
    if (was_physical) inverse_in_place(w);
    return w;
}

}  // namespace

TPField apply_factor_inverse(const TPField& u, const FactorTable& table, FactorSide side) {
    if (side == FactorSide::plus)
        return apply_along_normal(
            u, table, [](const FactorizationEntry& e, cplx z) { return 1.0 / e.eval_plus(z); });
    return apply_along_normal(u, table, [](const FactorizationEntry& e, cplx z) {
        return 1.0 / (e.leading * e.eval_minus(z));
    });
}

TPField apply_factor(const TPField& u, const FactorTable& table, FactorSide side) {
    if (side == FactorSide::plus)
        return apply_along_normal(
            u, table, [](const FactorizationEntry& e, cplx z) { return e.eval_plus(z); });
    return apply_along_normal(
        u, table, [](const FactorizationEntry& e, cplx z) { return e.eval_minus(z); });
}

}  // namespace tppar
