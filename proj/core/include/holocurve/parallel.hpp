#pragma once

#include <cstddef>
#include <functional>

namespace holocurve {

/// Worker cap: HOLOCURVE_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Every index writes only its own output
/// slot, so results do not depend on scheduling. If several indices throw,
/// the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace holocurve
