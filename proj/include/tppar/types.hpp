#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tppar {

using cplx = std::complex<double>;

/// Multi-index alpha in N^n; lexicographic ordering via std::vector comparison.
using MultiIndex = std::vector<int>;

inline int multi_order(const MultiIndex& alpha) {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
}

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Fixed 17-significant-digit scientific formatting for all emitted reports.
std::string fmt_float(double x);
std::string fmt_cplx(cplx z);

}  // namespace tppar
