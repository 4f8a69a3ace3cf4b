#ifndef TSDFPP_LOG_H_
#define TSDFPP_LOG_H_

#include <iostream>
#include <sstream>

namespace tsdfpp {
namespace log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Current verbosity, initialized once from TSDFPP_LOG
/// (error|warn|info|debug); defaults to warn.
Level level();

inline bool enabled(Level lv) { return lv <= level(); }

template <typename... Args>
void emit(Level lv, const char* tag, Args&&... args) {
  if (!enabled(lv)) return;
  std::ostringstream ss;
  (ss << ... << std::forward<Args>(args));
  std::cerr << "[" << tag << "] " << ss.str() << "\n";
}

}  // namespace log

#define TSDFPP_ERROR(...) ::tsdfpp::log::emit(::tsdfpp::log::Level::kError, "error", __VA_ARGS__)
#define TSDFPP_WARN(...) ::tsdfpp::log::emit(::tsdfpp::log::Level::kWarn, "warn", __VA_ARGS__)
#define TSDFPP_INFO(...) ::tsdfpp::log::emit(::tsdfpp::log::Level::kInfo, "info", __VA_ARGS__)
#define TSDFPP_DEBUG(...) ::tsdfpp::log::emit(::tsdfpp::log::Level::kDebug, "debug", __VA_ARGS__)

}  // namespace tsdfpp

#endif  // TSDFPP_LOG_H_
