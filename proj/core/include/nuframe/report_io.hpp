#pragma once

#include <string>

#include "nuframe/analysis.hpp"
#include "nuframe/setup.hpp"

namespace nuframe {

/// Pretty-printed JSON, keys in fixed order, no timestamps.
std::string to_json(const FrameReport& report);
std::string to_json(const ConditionReport& report);

/// CSV with header "ell,j,level_sum", one row per (ell, j).
std::string to_table(const FrameReport& report);

}  // namespace nuframe
