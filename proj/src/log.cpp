#include "tsdfpp/log.h"

#include <cstdlib>
#include <string>

namespace tsdfpp {
namespace log {

Level level() {
  static const Level lv = [] {
    const char* env = std::getenv("TSDFPP_LOG");
    if (!env) return Level::kWarn;
    const std::string s(env);
    if (s == "error") return Level::kError;
    if (s == "info") return Level::kInfo;
    if (s == "debug") return Level::kDebug;
    return Level::kWarn;
  }();
  return lv;
}

}  // namespace log
}  // namespace tsdfpp
