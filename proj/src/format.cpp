#include "tppar/types.hpp"

#include <cstdio>

namespace tppar {

std::string fmt_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

std::string fmt_cplx(cplx z) {
    return fmt_float(z.real()) + (z.imag() < 0 ? "" : "+") + fmt_float(z.imag()) + "i";
}

}  // namespace tppar
