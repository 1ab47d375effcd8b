#include "tppar/grid.hpp"

#include <sstream>

#include "tppar/errors.hpp"

namespace tppar {

GroupGrid::GroupGrid(double period, int time_count, std::vector<AxisSpec> axes,
                     std::optional<int> half_axis)
    : period_(period), time_count_(time_count), axes_(std::move(axes)), half_axis_(half_axis) {
    if (!(period_ > 0.0)) throw InvalidGrid("period must be positive");
    if (time_count_ < 4 || time_count_ % 2 != 0)
        throw InvalidGrid("time count must be even and >= 4");
    for (const auto& a : axes_) {
        if (!(a.half_length > 0.0)) throw InvalidGrid("axis half-length must be positive");
        if (a.count < 4 || a.count % 2 != 0)
            throw InvalidGrid("axis count must be even and >= 4");
    }
    if (half_axis_) {
        if (*half_axis_ != dim() - 1)
            throw InvalidGrid("half_space_axis must designate the last axis x_n");
    }
}

std::vector<long> GroupGrid::shape() const {
    std::vector<long> s;
    s.reserve(1 + axes_.size());
    s.push_back(time_count_);
    for (const auto& a : axes_) s.push_back(a.count);
    return s;
}

std::size_t GroupGrid::size() const {
    std::size_t total = time_count_;
    for (const auto& a : axes_) total *= a.count;
    return total;
}

GridPtr GroupGrid::boundary() const {
    if (!half_axis_) throw InvalidGrid("boundary grid requires a half-space axis");
    auto g = std::shared_ptr<GroupGrid>(new GroupGrid());
    g->period_ = period_;
    g->time_count_ = time_count_;
    g->axes_.assign(axes_.begin(), axes_.end() - 1);
    g->half_axis_ = std::nullopt;
    return g;
}

bool GroupGrid::same_layout(const GroupGrid& other) const {
    if (period_ != other.period_ || time_count_ != other.time_count_) return false;
    if (axes_.size() != other.axes_.size()) return false;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].count != other.axes_[i].count ||
            axes_[i].half_length != other.axes_[i].half_length)
            return false;
    return true;
}

GridPtr make_grid(double period, int dimension, int time_count, std::vector<AxisSpec> axes,
                  std::optional<int> half_axis) {
    if (dimension < 1) throw InvalidGrid("spatial dimension must be >= 1");
    if (static_cast<int>(axes.size()) != dimension) {
        std::ostringstream os;
        os << "expected " << dimension << " axis specs, got " << axes.size();
        throw InvalidGrid(os.str());
    }
    return std::make_shared<const GroupGrid>(period, time_count, std::move(axes), half_axis);
}

}  // namespace tppar
