// Copyright 2026 The qsed authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace qsed {

/// Square 2^n x 2^n grid of gray values below 2^q, row-major. The plain
/// classical counterpart of a quantum image.
struct PixelGrid {
    unsigned side_exponent = 0;  // side length is 2^side_exponent
    unsigned gray_depth = 8;
    std::vector<std::uint16_t> values;

    static PixelGrid filled(unsigned side_exponent, unsigned gray_depth, std::uint16_t value) {
        PixelGrid g;
        g.side_exponent = side_exponent;
        g.gray_depth = gray_depth;
        g.values.assign(std::size_t{1} << (2 * side_exponent), value);
        return g;
    }

    unsigned side() const { return 1u << side_exponent; }

    std::uint16_t at(unsigned y, unsigned x) const { return values[(std::size_t{y} << side_exponent) | x]; }
    void set(unsigned y, unsigned x, std::uint16_t v) { values[(std::size_t{y} << side_exponent) | x] = v; }

    /// Wrapped accessor: indices taken modulo the side length.
    std::uint16_t wrapped(long long y, long long x) const {
        const unsigned mask = side() - 1;
        return at(static_cast<unsigned>(y) & mask, static_cast<unsigned>(x) & mask);
    }

    friend bool operator==(const PixelGrid&, const PixelGrid&) = default;
};

}  // namespace qsed
