#include "torsionlab/log.hpp"

#include <atomic>
#include <iostream>

namespace torsionlab::log {

namespace {
std::atomic<Level> g_level{Level::warn};
}

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

void warn(std::string_view message) {
  if (g_level >= Level::warn) std::cerr << "warning: " << message << '\n';
}

void info(std::string_view message) {
  if (g_level >= Level::info) std::cerr << message << '\n';
}

}  // namespace torsionlab::log
