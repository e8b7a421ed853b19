#pragma once

#include <string>

namespace srg {

// Incremental analysis uses SRGs; non-incremental analysis uses SGs at zero.
enum class Mode { Incremental, NonIncremental };

inline const char* to_string(Mode m) { return m == Mode::Incremental ? "incremental" : "non-incremental"; }
Mode parse_mode(const std::string& text);

}  // namespace srg
