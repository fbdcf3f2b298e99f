#include "dresslat/format.hpp"

#include <cstdio>

namespace dresslat {

std::string format_double(double value)
{
    char buf[40];
    const int n = std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace dresslat
