#pragma once

#define GRADMODE_VERSION_MAJOR 1
#define GRADMODE_VERSION_MINOR 0
#define GRADMODE_VERSION_PATCH 0
#define GRADMODE_VERSION "1.0.0"

namespace gradmode {

[[nodiscard]] constexpr const char* version() noexcept { return GRADMODE_VERSION; }

}  // namespace gradmode
