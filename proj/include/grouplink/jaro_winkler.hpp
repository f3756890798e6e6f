#pragma once

#include <string_view>

namespace grouplink {

/// Jaro similarity of two strings in [0,1]. Two empty strings compare as 1,
/// one empty string as 0.
double jaro(std::string_view a, std::string_view b);

/// Jaro-Winkler similarity with the standard prefix bonus (scale 0.1,
/// at most 4 prefix characters). Symmetric; 1.0 iff the strings are equal.
double jaro_winkler(std::string_view a, std::string_view b);

} // namespace grouplink
