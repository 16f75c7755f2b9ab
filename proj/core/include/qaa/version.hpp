#pragma once

namespace qaa {

inline constexpr const char* version_string = "qaa 0.1.0";

}  // namespace qaa
