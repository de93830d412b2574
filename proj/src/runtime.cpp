#include "digitop/runtime.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace digitop {

namespace {

std::size_t initial_state_cap() {
  if (const char* env = std::getenv("DIGITOP_STATE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultStateCap;
}

bool initial_parallel() {
  if (const char* env = std::getenv("DIGITOP_SERIAL")) {
    return std::string(env) == "0";
  }
  return true;
}

std::atomic<bool> g_parallel{initial_parallel()};
std::atomic<std::size_t> g_state_cap{initial_state_cap()};
std::atomic<std::size_t> g_oracle_cap{16};

}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

std::size_t state_cap() { return g_state_cap.load(std::memory_order_relaxed); }
void set_state_cap(std::size_t cap) { g_state_cap.store(cap, std::memory_order_relaxed); }

std::size_t oracle_component_cap() { return g_oracle_cap.load(std::memory_order_relaxed); }
void set_oracle_component_cap(std::size_t cap) { g_oracle_cap.store(cap, std::memory_order_relaxed); }

}  // namespace digitop
