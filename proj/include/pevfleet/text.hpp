#ifndef PEVFLEET_TEXT_HPP
#define PEVFLEET_TEXT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace pevfleet {

/// Shortest decimal form that parses back to the same double; keeps emitted
/// tables diff-stable across runs.
inline std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline bool parse_double(const std::string& text, double* out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    const auto res = std::from_chars(begin, end, *out);
    return res.ec == std::errc() && res.ptr == end;
}

}  // namespace pevfleet

#endif
