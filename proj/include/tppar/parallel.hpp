#pragma once

#include <cstddef>
#include <functional>

namespace tppar {

/// Worker count: min(hardware_concurrency, TPPAR_THREADS) with a floor of 1.
int worker_count();

/// Runs fn(i) for i in [0, count). Work items must be independent and write to
/// disjoint locations; results are therefore identical to the serial order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tppar
