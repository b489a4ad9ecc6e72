#pragma once

#include <cstddef>
#include <functional>

namespace tsketch {

/// Worker count used by facewise loops. 0 selects hardware concurrency.
void set_num_threads(unsigned n);
unsigned num_threads() noexcept;

/// Runs body(i) for i in [0, count). Each index must write a disjoint output
/// region; results are then independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tsketch
