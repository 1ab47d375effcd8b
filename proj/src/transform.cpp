#include "tppar/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "tppar/errors.hpp"

namespace tppar {

namespace {

/// Cached FFTW plans per line length; execution copies through an owned
/// buffer under a lock, which keeps results independent of caller alignment
/// and deterministic (FFTW_ESTIMATE plans only).
class FftEngine {
public:
    static FftEngine& instance() {
        static FftEngine engine;
        return engine;
    }

    void run(cplx* line, int count, bool forward_sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        Plans& p = plans(count);
        auto* buf = reinterpret_cast<cplx*>(p.buffer);
        for (int j = 0; j < count; ++j) buf[j] = line[j];
        fftw_execute(forward_sign ? p.fwd : p.bwd);
        for (int j = 0; j < count; ++j) line[j] = buf[j];
    }

private:
    struct Plans {
        fftw_complex* buffer = nullptr;
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    Plans& plans(int count) {
        auto it = cache_.find(count);
        if (it != cache_.end()) return it->second;
        Plans p;
        p.buffer = fftw_alloc_complex(count);
        p.fwd = fftw_plan_dft_1d(count, p.buffer, p.buffer, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_1d(count, p.buffer, p.buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
        return cache_.emplace(count, p).first->second;
    }

    ~FftEngine() {
        for (auto& [count, p] : cache_) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
            fftw_free(p.buffer);
        }
    }

    std::mutex mutex_;
    std::map<int, Plans> cache_;
};

template <typename LineFn>
void for_each_line(std::vector<cplx>& data, std::span<const long> shape, int axis,
                   LineFn&& fn) {
    long extent = shape[axis];
    long stride = 1;
    for (std::size_t d = axis + 1; d < shape.size(); ++d) stride *= shape[d];
    long block = stride * extent;
    long blocks = static_cast<long>(data.size()) / block;
    std::vector<cplx> line(extent);
    for (long b = 0; b < blocks; ++b) {
        for (long off = 0; off < stride; ++off) {
            cplx* base = data.data() + b * block + off;
            for (long j = 0; j < extent; ++j) line[j] = base[j * stride];
            fn(line.data(), static_cast<int>(extent));
            for (long j = 0; j < extent; ++j) base[j * stride] = line[j];
        }
    }
}

}  // namespace

void transform_axis(std::vector<cplx>& data, const GroupGrid& grid, int axis,
                    bool to_spectral) {
    auto shape = grid.shape();
    auto& engine = FftEngine::instance();
    if (axis == 0) {
        const double inv_nt = 1.0 / grid.time_count();
        for_each_line(data, shape, 0, [&](cplx* line, int count) {
            engine.run(line, count, to_spectral);
            if (to_spectral)
                for (int j = 0; j < count; ++j) line[j] *= inv_nt;
        });
        return;
    }
    const int i = axis - 1;
    const double h = grid.axis_spacing(i);
    const double two_l = 2.0 * grid.axis(i).half_length;
    if (to_spectral) {
        // hat(u)(xi_q) = h * (-1)^q * DFT_q, the quadrature of the integral
        // over [-L, L) with nodes starting at -L.
        for_each_line(data, shape, axis, [&](cplx* line, int count) {
            engine.run(line, count, true);
            for (int q = 0; q < count; ++q) line[q] *= (q % 2 == 0 ? h : -h);
        });
    } else {
        for_each_line(data, shape, axis, [&](cplx* line, int count) {
            for (int q = 0; q < count; ++q)
                line[q] *= (q % 2 == 0 ? 1.0 : -1.0) / two_l;
            engine.run(line, count, false);
        });
    }
}

TPField forward(const TPField& u) {
    TPField out = u;
    forward_in_place(out);
    return out;
}

TPField inverse(const TPField& w) {
    TPField out = w;
    inverse_in_place(out);
    return out;
}

void forward_in_place(TPField& u) {
    require_state(u, FieldState::physical, "forward");
    for (int axis = 0; axis <= u.grid()->dim(); ++axis)
        transform_axis(u.data(), *u.grid(), axis, true);
    u.set_state(FieldState::spectral);
}

void inverse_in_place(TPField& w) {
    require_state(w, FieldState::spectral, "inverse");
    for (int axis = 0; axis <= w.grid()->dim(); ++axis)
        transform_axis(w.data(), *w.grid(), axis, false);
    w.set_state(FieldState::physical);
}

}  // namespace tppar
