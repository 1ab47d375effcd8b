#pragma once

#include <span>
#include <vector>

#include "tppar/grid.hpp"
#include "tppar/types.hpp"

namespace tppar {

enum class FieldState { physical, spectral };

/// Complex field on a GroupGrid, time-major row-major storage. Boundary
/// fields are TPFields on the grid's boundary() (one axis fewer).
class TPField {
public:
    TPField() = default;
    TPField(GridPtr grid, FieldState state = FieldState::physical)
        : grid_(std::move(grid)), state_(state), data_(grid_->size(), cplx(0.0)) {}

    const GridPtr& grid() const { return grid_; }
    FieldState state() const { return state_; }
    void set_state(FieldState s) { state_ = s; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator[](std::size_t i) { return data_[i]; }
    cplx operator[](std::size_t i) const { return data_[i]; }

    /// Flat offset of (time index, spatial indices).
    std::size_t flat(int t_idx, std::span<const int> sp) const;

    TPField& operator+=(const TPField& other);
    TPField& operator-=(const TPField& other);
    TPField& operator*=(cplx scale);

private:
    GridPtr grid_;
    FieldState state_ = FieldState::physical;
    std::vector<cplx> data_;
};

using BoundaryField = TPField;

/// Checks grid identity/layout and state agreement; throws on mismatch.
void require_same_layout(const TPField& a, const TPField& b, const char* what);
void require_state(const TPField& u, FieldState s, const char* what);

}  // namespace tppar
