#pragma once

namespace ddlab {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int report_format_version = 1;
inline constexpr int scenario_format_version = 1;

} // namespace ddlab
