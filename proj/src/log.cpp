#include "tierplace/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace tierplace {

namespace {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("TIERPLACE_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

}  // namespace

bool log_enabled_debug() { return log_level() >= 2; }
bool log_enabled_info() { return log_level() >= 1; }

void log_debug(std::string_view message) {
  if (log_enabled_debug()) {
    std::fprintf(stderr, "[tierplace:debug] %.*s\n",
                 static_cast<int>(message.size()), message.data());
  }
}

void log_info(std::string_view message) {
  if (log_enabled_info()) {
    std::fprintf(stderr, "[tierplace:info] %.*s\n",
                 static_cast<int>(message.size()), message.data());
  }
}

}  // namespace tierplace
