#pragma once

#include <spdlog/spdlog.h>

namespace lindloc {

/// Library logger writing to stderr. Level comes from LINDLOC_LOG
/// (error | warn | info | debug), default warn.
spdlog::logger& log();

}  // namespace lindloc
