#include "twc/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace twc::log {
namespace {

std::atomic<Level> g_level{Level::kWarn};
std::mutex g_mu;

std::string_view tag(Level l) {
  switch (l) {
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarn: return "warn";
    case Level::kError: return "error";
    case Level::kOff: break;
  }
  return "";
}

}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

void write(Level l, std::string_view message) {
  if (l < g_level.load() || l == Level::kOff) return;
  std::lock_guard lock(g_mu);
  std::cerr << "[twcorpus " << tag(l) << "] " << message << '\n';
}

}  // namespace twc::log
