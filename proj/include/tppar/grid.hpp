#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tppar/types.hpp"

namespace tppar {

struct AxisSpec {
    double half_length;  // L_i: box is [-L_i, L_i)
    int count;           // N_i, even and >= 4
};

/// Discretization of T x R^n: N_t time nodes on [0, T), and per spatial axis
/// N_i nodes on [-L_i, L_i). Frequencies are stored in FFT (wrap-around)
/// order: index q maps to q for q < N/2 and q - N otherwise.
class GroupGrid {
public:
    GroupGrid(double period, int time_count, std::vector<AxisSpec> axes,
              std::optional<int> half_axis);

    double period() const { return period_; }
    int time_count() const { return time_count_; }
    int dim() const { return static_cast<int>(axes_.size()); }
    const AxisSpec& axis(int i) const { return axes_[i]; }
    double axis_spacing(int i) const { return 2.0 * axes_[i].half_length / axes_[i].count; }
    double time_step() const { return period_ / time_count_; }
    std::optional<int> half_axis() const { return half_axis_; }

    static int wrap(int idx, int count) { return idx < count / 2 ? idx : idx - count; }

    double time_freq(int idx) const { return 2.0 * kPi / period_ * wrap(idx, time_count_); }
    double space_freq(int i, int idx) const {
        return kPi / axes_[i].half_length * wrap(idx, axes_[i].count);
    }
    double time_node(int idx) const { return period_ * idx / time_count_; }
    double space_node(int i, int idx) const {
        return -axes_[i].half_length + axis_spacing(i) * idx;
    }

    bool is_time_nyquist(int idx) const { return idx == time_count_ / 2; }
    bool is_space_nyquist(int i, int idx) const { return idx == axes_[i].count / 2; }

    /// [N_t, N_1, ..., N_n]
    std::vector<long> shape() const;
    std::size_t size() const;

    /// Grid of the boundary group T x R^{n-1}: the half axis removed.
    std::shared_ptr<const GroupGrid> boundary() const;

    bool same_layout(const GroupGrid& other) const;

private:
    GroupGrid() = default;  // for boundary()
    double period_ = 0.0;
    int time_count_ = 0;
    std::vector<AxisSpec> axes_;
    std::optional<int> half_axis_;
};

using GridPtr = std::shared_ptr<const GroupGrid>;

/// Validated factory. half_axis is 0-based and must designate the last axis.
GridPtr make_grid(double period, int dimension, int time_count,
                  std::vector<AxisSpec> axes, std::optional<int> half_axis = {});

}  // namespace tppar
