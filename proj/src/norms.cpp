#include "tppar/norms.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "tppar/errors.hpp"
#include "tppar/half_calculus.hpp"
#include "tppar/multiplier.hpp"
#include "tppar/transform.hpp"

namespace tppar {

double parabolic_length(double eta, std::span<const double> xi, int m) {
    double xi2 = 0.0;
    for (double c : xi) xi2 += c * c;
    // |xi|^{4m} = (xi2)^{2m}
    return std::pow(eta * eta + std::pow(xi2, 2 * m), 1.0 / (4 * m));
}

namespace {

double cell_weight(const GroupGrid& g) {
    double w = 1.0 / g.time_count();
    for (int i = 0; i < g.dim(); ++i) w *= g.axis_spacing(i);
    return w;
}

template <typename WeightFn>
double lp_masked_weighted(const TPField& u, double p, WeightFn&& node_weight) {
    const TPField* phys = &u;
    TPField copy;
    if (u.state() == FieldState::spectral) {
        copy = inverse(u);
        phys = &copy;
    }
    const GroupGrid& g = *phys->grid();
    const double w = cell_weight(g);
    double acc = 0.0;
    const auto shape = g.shape();
    std::vector<int> idx(shape.size(), 0);
    for (std::size_t flat = 0; flat < phys->size(); ++flat) {
        const double nw = node_weight(g, idx);
        if (nw != 0.0) acc += nw * std::pow(std::abs((*phys)[flat]), p);
        for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
            if (++idx[d] < shape[d]) break;
            idx[d] = 0;
        }
    }
    return std::pow(w * acc, 1.0 / p);
}

template <typename Pred>
double lp_masked(const TPField& u, double p, Pred&& keep) {
    return lp_masked_weighted(
        u, p, [&keep](const GroupGrid& g, const std::vector<int>& idx) {
            return keep(g, idx) ? 1.0 : 0.0;
        });
}

}  // namespace

double lp_norm(const TPField& u, double p) {
    return lp_masked(u, p, [](const GroupGrid&, const std::vector<int>&) { return true; });
}

double lp_norm_half(const TPField& u, double p) {
    if (!u.grid()->half_axis()) throw InvalidGrid("lp_norm_half: no half-space axis");
    const int axis = *u.grid()->half_axis();
    // trapezoid weight 1/2 at the x_n = 0 boundary node; the plain rectangle
    // sum is only first-order accurate on the half line and biases norms of
    // boundary-concentrated fields by O(h)
    return lp_masked_weighted(u, p, [axis](const GroupGrid& g, const std::vector<int>& idx) {
        if (idx[axis + 1] < g.axis(axis).count / 2) return 0.0;
        return idx[axis + 1] == g.axis(axis).count / 2 ? 0.5 : 1.0;
    });
}

double lp_norm_slab(const TPField& u, double p, double lo_frac, double hi_frac) {
    if (!u.grid()->half_axis()) throw InvalidGrid("lp_norm_slab: no half-space axis");
    const int axis = *u.grid()->half_axis();
    return lp_masked(u, p,
                     [axis, lo_frac, hi_frac](const GroupGrid& g, const std::vector<int>& idx) {
                         const double l = g.axis(axis).half_length;
                         const double x = g.space_node(axis, idx[axis + 1]);
                         return x >= lo_frac * l && x <= hi_frac * l;
                     });
}

namespace {

std::vector<MultiIndex> all_multi_indices(int n, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex alpha(n, 0);
    // enumerate all alpha with |alpha| <= max_order, lexicographic
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
        if (axis == n - 1) {
            for (int a = 0; a <= remaining; ++a) {
                alpha[axis] = a;
                out.push_back(alpha);
            }
            alpha[axis] = 0;
            return;
        }
        for (int a = 0; a <= remaining; ++a) {
            alpha[axis] = a;
            rec(axis + 1, remaining - a);
        }
        alpha[axis] = 0;
    };
    rec(0, max_order);
    return out;
}

double sobolev_impl(const TPField& u, double p, int m) {
    TPField w = u.state() == FieldState::spectral ? u : forward(u);
    auto measure = [&](const TPField& spectral_field) {
        TPField phys = inverse(spectral_field);
        return lp_norm(phys, p);
    };
    double acc = 0.0;
    // time derivative
    {
        TPField dt = apply_multiplier(
            w, [](double k, std::span<const double>) { return cplx(0.0, k); });
        acc += std::pow(measure(dt), p);
    }
    const int n = u.grid()->dim();
    for (const MultiIndex& alpha : all_multi_indices(n, 2 * m)) {
        TPField da = apply_multiplier(w, [&alpha](double, std::span<const double> xi) {
            cplx v = 1.0;
            for (std::size_t i = 0; i < xi.size(); ++i)
                for (int q = 0; q < alpha[i]; ++q) v *= cplx(0.0, xi[i]);
            return v;
        });
        acc += std::pow(measure(da), p);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace

double sobolev_norm(const TPField& u, double p, int m) { return sobolev_impl(u, p, m); }

double sobolev_norm_half(const TPField& u, double p, int m) {
    // normal derivatives by FD on the half segment; differentiating the
    // zero-extension spectrally across the boundary kink does not converge
    return half_sobolev_norm(u, p, m);
}

double bessel_norm(const TPField& u, double s, double p, int m) {
    if (mean_fraction(u) > 1e-12)
        throw MeanNotZero("bessel_norm: input has a nonzero time mean");
    TPField w = apply_multiplier(
        u,
        [s, m](double k, std::span<const double> xi) {
            return cplx(std::pow(parabolic_length(k, xi, m), s), 0.0);
        },
        /*osc_only=*/true);
    return lp_norm(w, p);
}

double trace_norm(const TPField& g, double kappa, double p, int m) {
    if (mean_fraction(g) > 1e-12)
        throw MeanNotZero("trace_norm: input has a nonzero time mean");
    const double s = 2.0 * m * kappa;
    TPField w = apply_multiplier(
        g,
        [s, m](double k, std::span<const double> xi) {
            return cplx(std::pow(parabolic_length(k, xi, m), s), 0.0);
        },
        /*osc_only=*/true);
    return lp_norm(g, p) + lp_norm(w, p);
}

TraceSpaceSpec::TraceSpaceSpec(int m_, double p_, std::vector<int> boundary_orders)
    : m(m_), p(p_), mj(std::move(boundary_orders)) {
    kappa.reserve(mj.size());
    iota.reserve(mj.size());
    for (std::size_t j = 0; j < mj.size(); ++j) {
        double k = 1.0 - double(mj[j]) / (2.0 * m) - 1.0 / (2.0 * m * p);
        double i = 1.0 - double(j) / (2.0 * m) - 1.0 / (2.0 * m * p);
        if (!(k > 0.0 && k < 1.0)) {
            std::ostringstream os;
            os << "kappa_" << (j + 1) << " = " << k << " outside (0,1)";
            throw DimensionMismatch(os.str());
        }
        if (!(i > 0.0 && i <= 1.0)) {
            std::ostringstream os;
            os << "iota_" << (j + 1) << " = " << i << " outside (0,1]";
            throw DimensionMismatch(os.str());
        }
        kappa.push_back(k);
        iota.push_back(i);
    }
}

}  // namespace tppar
