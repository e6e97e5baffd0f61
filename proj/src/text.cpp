#include "refill/text.hpp"

#include <charconv>

namespace refill {

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;  // 64 bytes always suffice for shortest form
    return std::string(buf, end);
}

}  // namespace refill
