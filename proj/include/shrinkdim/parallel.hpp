// Minimal deterministic fork-join helper. Work is split into a fixed number of
// tasks that does not depend on the thread count; callers write per-task
// results into preallocated slots and reduce them in task order.
#pragma once

#include <cstddef>
#include <functional>

namespace shrinkdim {

void set_thread_count(int threads);
int thread_count();

// Runs body(i) for i in [0, tasks). Exceptions from any task are rethrown
// (the one with the smallest index wins).
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& body);

}  // namespace shrinkdim
