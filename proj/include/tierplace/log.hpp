#pragma once

#include <string_view>

namespace tierplace {

// Verbosity comes from the TIERPLACE_LOG environment variable:
// "debug" > "info" > anything else (quiet). Messages go to stderr.
bool log_enabled_debug();
bool log_enabled_info();
void log_debug(std::string_view message);
void log_info(std::string_view message);

}  // namespace tierplace
