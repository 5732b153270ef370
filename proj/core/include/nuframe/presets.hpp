#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nuframe/setup.hpp"

namespace nuframe {

/// Parses a setup document:
///   {"N": 2, "r": 3, "psi0_hat": "...", "filters": ["H0", "H1", ...], "theta": "..."}
/// "theta" is optional; "psi0" is accepted in place of "psi0_hat". Any
/// structural problem throws InvalidArgument; lattice and expression errors
/// propagate with their own codes.
GeneralSetup setup_from_json(std::string_view text);

/// Names accepted by preset(): "ex5.1", "ex5.2".
std::vector<std::string> preset_names();

/// The embedded JSON document for a preset name.
std::string_view preset_source(std::string_view name);

GeneralSetup preset(std::string_view name);

}  // namespace nuframe
