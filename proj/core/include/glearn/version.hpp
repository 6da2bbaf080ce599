#pragma once

#define GLEARN_VERSION_MAJOR 0
#define GLEARN_VERSION_MINOR 1
#define GLEARN_VERSION_PATCH 0
#define GLEARN_VERSION "0.1.0"

namespace glearn {

inline constexpr const char* version() { return GLEARN_VERSION; }

}  // namespace glearn
