#pragma once

#include <cstddef>
#include <functional>

namespace zsm {

/// Process-wide worker budget for the parallel sections (frontier expansion,
/// bounded sweeps). Defaults to 1; results are identical for every value.
unsigned worker_count();
void set_worker_count(unsigned n);

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) for each,
/// possibly on several threads. Chunk boundaries depend only on n and the
/// worker count. Nested calls run serially. Exceptions propagate; if several
/// chunks throw, the one with the lowest begin index wins.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace zsm
