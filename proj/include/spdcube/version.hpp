#pragma once

namespace spdcube {

inline constexpr const char* version = "0.1.0";

}
