#pragma once

#include <atomic>
#include <cstddef>
#include <functional>

namespace wgql {

/// Worker budget shared by every parallel kernel. 0 restores the default
/// (std::thread::hardware_concurrency()).
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Iterations are claimed dynamically, so
/// callers must write results into per-index slots and reduce afterwards in
/// index order; that keeps floating-point results independent of the
/// worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wgql
