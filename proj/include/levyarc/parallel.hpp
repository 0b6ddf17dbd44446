#pragma once

#include <cstddef>
#include <functional>

namespace levyarc {

// Process-wide worker count for sample generation (CLI --workers).  Results
// never depend on it: every per-index draw comes from its own counter-based
// stream, so chunking is invisible.
void set_worker_count(unsigned n);
unsigned worker_count();

// Runs fn(i) for i in [0, n), split into contiguous chunks across workers.
// fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace levyarc
