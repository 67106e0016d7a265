#pragma once

namespace nehari {

inline constexpr const char* version_string = "0.1.0";

} // namespace nehari
