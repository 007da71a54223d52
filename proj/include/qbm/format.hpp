// format.hpp — locale-independent number formatting (shortest round-trip)

#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace qbm {

inline std::string format_number(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string format_number(int x) {
    char buf[16];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace qbm
