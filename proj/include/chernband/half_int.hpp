#pragma once

#include <compare>
#include <string>

#include "chernband/errors.hpp"

namespace chernband {

// Exact half-integer spin label, stored as twice its value so j = 21/2 needs no floats.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt integer(int n) { return HalfInt(2 * n); }

    constexpr double value() const { return 0.5 * twice; }
    constexpr int dimension() const { return twice + 1; }  // 2j+1, for spin labels twice >= 0
    constexpr bool is_integer() const { return twice % 2 == 0; }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

// Accepts "10" (integer) or "21/2" (half-integer with odd numerator).
HalfInt parse_half_int(const std::string& text);

std::string to_string(HalfInt h);

}  // namespace chernband
