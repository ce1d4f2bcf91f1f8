#pragma once

#include <cstddef>
#include <functional>

namespace landau {

// Worker count for independent row/column loops. Results never depend on it:
// every task writes its own slot and reductions happen afterwards in index order.
void set_thread_count(unsigned n);
unsigned thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace landau
