/*
 * Copyright 2026 The tailcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Hand-rolled decimal formatting used as a reference for locale handling.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tailcheck::testing {

struct RandomDecimal {
    std::uint64_t integer = 0;
    std::string fraction; // no trailing zeros
};

inline RandomDecimal random_decimal(std::mt19937_64& rng) {
    RandomDecimal d;
    // Spread magnitudes so that 0 to 3 group marks all occur.
    int digits = std::uniform_int_distribution<int>(1, 10)(rng);
    std::uint64_t hi = 1;
    for (int i = 0; i < digits; ++i) hi *= 10;
    d.integer = std::uniform_int_distribution<std::uint64_t>(0, hi - 1)(rng);
    int fd = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < fd; ++k) d.fraction += static_cast<char>('0' + std::uniform_int_distribution<int>(0, 9)(rng));
    while (!d.fraction.empty() && d.fraction.back() == '0') d.fraction.pop_back();
    return d;
}

// Every legal rendering: ungrouped, and grouped by thousands when that differs.
inline std::vector<std::string> render_all(const RandomDecimal& d, char decimal_mark, char group_mark) {
    std::string digits = std::to_string(d.integer);
    std::string grouped;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (digits.size() - i) % 3 == 0) grouped += group_mark;
        grouped += digits[i];
    }
    std::vector<std::string> out = {digits};
    if (grouped != digits) out.push_back(grouped);
    if (!d.fraction.empty()) {
        for (auto& s : out) s += decimal_mark + d.fraction;
    }
    return out;
}

} // namespace tailcheck::testing
