#pragma once

#include <string>
#include <optional>
#include <string_view>

#include "tscale/time_scale.hpp"

namespace tscale::cli {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double v);

/// Shortest text that reads back to the same double.
std::string format_shortest(double v);

/// Locale-independent double parse of the whole string; nullopt on junk.
std::optional<double> parse_double(std::string_view s);

/// "re" or "re,im".
std::optional<cplx> parse_complex(std::string_view s);

}  // namespace tscale::cli
