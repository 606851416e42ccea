#pragma once

#include <cstddef>
#include <functional>

namespace uls {

// 0 means hardware_concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, n). Work is split in contiguous chunks, so any
// result written to slot i is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace uls
