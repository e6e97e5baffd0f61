#pragma once

#include <string>

namespace refill {

// Shortest decimal form that round-trips the exact double. Keeps every
// emitted number bit-reproducible across runs.
std::string format_double(double v);

}  // namespace refill
