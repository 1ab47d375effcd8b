#include "tppar/field.hpp"

#include "tppar/errors.hpp"

namespace tppar {

std::size_t TPField::flat(int t_idx, std::span<const int> sp) const {
    std::size_t off = t_idx;
    for (int i = 0; i < grid_->dim(); ++i) off = off * grid_->axis(i).count + sp[i];
    return off;
}

TPField& TPField::operator+=(const TPField& other) {
    require_same_layout(*this, other, "field addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

TPField& TPField::operator-=(const TPField& other) {
    require_same_layout(*this, other, "field subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

TPField& TPField::operator*=(cplx scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

void require_same_layout(const TPField& a, const TPField& b, const char* what) {
    if (!a.grid() || !b.grid() || !a.grid()->same_layout(*b.grid()))
        throw DimensionMismatch(std::string(what) + ": fields on different grids");
    if (a.state() != b.state())
        throw StateMismatch(std::string(what) + ": fields in different states");
}

void require_state(const TPField& u, FieldState s, const char* what) {
    if (u.state() != s)
        throw StateMismatch(std::string(what) + (s == FieldState::physical
                                                     ? ": expected physical state"
                                                     : ": expected spectral state"));
}

}  // namespace tppar
