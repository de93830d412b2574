#ifndef DIGITOP_RUNTIME_HPP
#define DIGITOP_RUNTIME_HPP

#include <cstddef>

namespace digitop {

// Process-wide knobs. All kernels are schedule-independent, so flipping the
// parallel switch never changes results, only timing; tests rely on that.
bool parallel_enabled();
void set_parallel_enabled(bool on);

// Visited-state cap for witness searches. DIGITOP_STATE_CAP overrides the
// default at startup.
std::size_t state_cap();
void set_state_cap(std::size_t cap);

constexpr std::size_t kDefaultStateCap = 10'000'000;

// Connected-subset oracle cap: largest component size whose connected
// subsets are enumerated exhaustively.
std::size_t oracle_component_cap();
void set_oracle_component_cap(std::size_t cap);

}  // namespace digitop

#endif
