#include "tppar/random_fields.hpp"

#include <random>

#include "tppar/errors.hpp"
#include "tppar/transform.hpp"

namespace tppar {

namespace {

TPField build(GridPtr grid, std::uint64_t seed, int k_band, int q_band) {
    const GroupGrid& g = *grid;
    const int n = g.dim();
    if (k_band < 1 || k_band >= g.time_count() / 2)
        throw InvalidGrid("random_band_limited: k_band outside (0, N_t/2)");
    for (int i = 0; i < n; ++i)
        if (q_band >= g.axis(i).count / 2)
            throw InvalidGrid("random_band_limited: q_band reaches the Nyquist index");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    TPField w(grid, FieldState::spectral);
    // Iterate the band in a fixed (grid-independent) order so that the same
    // seed yields the same continuum field on refined grids.
    std::vector<int> q(n, -q_band);
    auto advance = [&]() {
        for (int d = n - 1; d >= 0; --d) {
            if (++q[d] <= q_band) return true;
            q[d] = -q_band;
        }
        return false;
    };
    for (int k = -k_band; k <= k_band; ++k) {
        if (k == 0) continue;
        std::fill(q.begin(), q.end(), -q_band);
        do {
            cplx amp(gauss(rng), gauss(rng));
            int t_idx = k >= 0 ? k : k + g.time_count();
            std::size_t flat = t_idx;
            for (int i = 0; i < n; ++i) {
                int qi = q[i] >= 0 ? q[i] : q[i] + g.axis(i).count;
                flat = flat * g.axis(i).count + qi;
            }
            w[flat] = amp;
        } while (advance());
    }
    return inverse(w);
}

}  // namespace

TPField random_band_limited(GridPtr grid, std::uint64_t seed, int k_band, int q_band) {
    return build(std::move(grid), seed, k_band, q_band);
}

TPField random_band_limited_boundary(GridPtr boundary_grid, std::uint64_t seed, int k_band,
                                     int q_band) {
    return build(std::move(boundary_grid), seed, k_band, q_band);
}

}  // namespace tppar
