#include "tppar/multiplier.hpp"

#include <cmath>

#include "tppar/errors.hpp"
#include "tppar/transform.hpp"

namespace tppar {

namespace {

constexpr double kMeanTol = 1e-12;

void spectral_multiply(TPField& w, const SymbolFn& m, bool osc_only) {
    const GroupGrid& g = *w.grid();
    const int n = g.dim();
    auto shape = g.shape();
    std::vector<int> idx(1 + n, 0);
    std::vector<double> xi(n, 0.0);
    const std::size_t total = w.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        bool nyquist = g.is_time_nyquist(idx[0]);
        for (int i = 0; i < n && !nyquist; ++i) nyquist = g.is_space_nyquist(i, idx[i + 1]);
        if (nyquist || (osc_only && idx[0] == 0)) {
            w[flat] = 0.0;
        } else {
            for (int i = 0; i < n; ++i) xi[i] = g.space_freq(i, idx[i + 1]);
            w[flat] *= m(g.time_freq(idx[0]), xi);
        }
        // row-major increment
        for (int d = n; d >= 0; --d) {
            if (++idx[d] < shape[d]) break;
            idx[d] = 0;
        }
    }
}

}  // namespace

TPField apply_multiplier(const TPField& u, const SymbolFn& m, bool osc_only) {
    if (osc_only && mean_fraction(u) > kMeanTol)
        throw MeanNotZero("apply_multiplier(osc_only): input has a nonzero time mean");
    if (u.state() == FieldState::spectral) {
        TPField w = u;
        spectral_multiply(w, m, osc_only);
        return w;
    }
    TPField w = forward(u);
    spectral_multiply(w, m, osc_only);
    inverse_in_place(w);
    return w;
}

TPField project_mean(const TPField& u) {
    TPField out = u;
    const GroupGrid& g = *u.grid();
    const std::size_t plane = u.size() / g.time_count();
    if (u.state() == FieldState::spectral) {
        std::fill(out.data().begin() + plane, out.data().end(), cplx(0.0));
        return out;
    }
    const double inv_nt = 1.0 / g.time_count();
    for (std::size_t s = 0; s < plane; ++s) {
        cplx mean = 0.0;
        for (int t = 0; t < g.time_count(); ++t) mean += u[t * plane + s];
        mean *= inv_nt;
        for (int t = 0; t < g.time_count(); ++t) out[t * plane + s] = mean;
    }
    return out;
}

TPField project_osc(const TPField& u) {
    TPField p = project_mean(u);
    TPField out = u;
    out -= p;
    return out;
}

double mean_fraction(const TPField& u) {
    TPField p = project_mean(u);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        num += std::norm(p[i]);
        den += std::norm(u[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

double conjugate_symmetry_defect(const TPField& u) {
    TPField w = u.state() == FieldState::spectral ? u : forward(u);
    const GroupGrid& g = *w.grid();
    const int n = g.dim();
    auto shape = g.shape();
    std::vector<int> idx(shape.size(), 0);
    double num = 0.0, den = 0.0;
    for (std::size_t flat = 0; flat < w.size(); ++flat) {
        bool nyquist = g.is_time_nyquist(idx[0]);
        for (int i = 0; i < n && !nyquist; ++i) nyquist = g.is_space_nyquist(i, idx[i + 1]);
        if (!nyquist) {
            // mirror index: -k mod N per axis
            std::size_t mirror = (g.time_count() - idx[0]) % g.time_count();
            for (int i = 0; i < n; ++i) {
                const int c = g.axis(i).count;
                mirror = mirror * c + (c - idx[i + 1]) % c;
            }
            num += std::norm(w[flat] - std::conj(w[mirror]));
            den += std::norm(w[flat]);
        }
        for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
            if (++idx[d] < shape[d]) break;
            idx[d] = 0;
        }
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

namespace {

TPField mask_half(const TPField& u, bool keep_upper, const char* what) {
    require_state(u, FieldState::physical, what);
    if (!u.grid()->half_axis()) throw InvalidGrid(std::string(what) + ": grid has no half-space axis");
    const GroupGrid& g = *u.grid();
    const int axis = *g.half_axis();
    const int count = g.axis(axis).count;
    TPField out = u;
    // Along the half axis, the nodes -L + j h lie in x_n >= 0 iff j >= N/2.
    auto shape = g.shape();
    long stride = 1;
    for (int d = axis + 2; d <= g.dim(); ++d) stride *= shape[d];
    long block = stride * count;
    long blocks = static_cast<long>(u.size()) / block;
    for (long b = 0; b < blocks; ++b)
        for (long off = 0; off < stride; ++off) {
            cplx* base = out.data().data() + b * block + off;
            int lo = keep_upper ? 0 : count / 2;
            int hi = keep_upper ? count / 2 : count;
            for (int j = lo; j < hi; ++j) base[j * stride] = 0.0;
        }
    return out;
}

}  // namespace

TPField restrict_half(const TPField& u) { return mask_half(u, true, "restrict_half"); }
TPField complement_half(const TPField& u) { return mask_half(u, false, "complement_half"); }
TPField extend_zero(const TPField& u) { return mask_half(u, true, "extend_zero"); }

}  // namespace tppar
