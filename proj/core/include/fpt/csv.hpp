#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace fpt {

/// Shortest decimal with 17 significant digits, enough to round-trip a double.
inline std::string format_real(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc{})
        return "nan";
    return std::string(buf, res.ptr);
}

}  // namespace fpt
