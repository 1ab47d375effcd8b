#include "tppar/polynomial.hpp"

#include <algorithm>

#include "tppar/errors.hpp"

namespace tppar {

cplx poly_eval(std::span<const cplx> p, cplx z) {
    if (p.empty()) return 0.0;
    cplx acc = p.back();
    for (std::size_t j = p.size() - 1; j-- > 0;) acc = acc * z + p[j];
    return acc;
}

std::vector<cplx> poly_derivative(std::span<const cplx> p) {
    if (p.size() <= 1) return {cplx(0.0)};
    std::vector<cplx> d(p.size() - 1);
    for (std::size_t j = 1; j < p.size(); ++j) d[j - 1] = double(j) * p[j];
    return d;
}

std::vector<cplx> poly_mul(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
    std::vector<cplx> p{cplx(1.0)};
    for (cplx r : roots) {
        std::vector<cplx> next(p.size() + 1, cplx(0.0));
        for (std::size_t j = 0; j < p.size(); ++j) {
            next[j + 1] += p[j];
            next[j] -= r * p[j];
        }
        p = std::move(next);
    }
    return p;
}

std::vector<cplx> half_symbol_coeffs(std::span<const cplx> roots) {
    std::vector<cplx> asc = poly_from_roots(roots);
    std::vector<cplx> c(asc.rbegin(), asc.rend());
    return c;  // c[0] = 1 leading
}

std::vector<cplx> descending_to_ascending(std::span<const cplx> c) {
    return std::vector<cplx>(c.rbegin(), c.rend());
}

std::vector<cplx> poly_mod(std::span<const cplx> p, std::span<const cplx> q,
                           std::vector<cplx>* quotient) {
    if (q.empty() || std::abs(q.back() - cplx(1.0)) > 1e-12)
        throw DimensionMismatch("poly_mod requires a monic divisor");
    const std::size_t m = q.size() - 1;
    std::vector<cplx> rem(p.begin(), p.end());
    if (quotient) quotient->assign(p.size() > m ? p.size() - m : 1, cplx(0.0));
    if (m == 0) {  // division by the constant 1
        if (quotient) quotient->assign(rem.begin(), rem.end());
        return {};
    }
    for (std::size_t j = rem.size(); j-- > m;) {
        cplx factor = rem[j];
        if (quotient) (*quotient)[j - m] = factor;
        rem[j] = 0.0;
        for (std::size_t l = 0; l < m; ++l) rem[j - m + l] -= factor * q[l];
    }
    rem.resize(m, cplx(0.0));
    return rem;
}

}  // namespace tppar
