#pragma once

#include <string>

namespace dresslat {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

}  // namespace dresslat
