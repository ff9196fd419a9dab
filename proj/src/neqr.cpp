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

#include "qsed/neqr.hpp"

#include <stdexcept>

#include "qsed/arith.hpp"

namespace qsed {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

constexpr Axis Y = Axis::Y;
constexpr Axis X = Axis::X;

// Offsets advance opposite to the applied shift: moving the image up by
// one leaves each position holding its lower neighbor's value.
constexpr ShiftStep kSchedule[24] = {
    {Y, -1, +1, +0}, {X, -1, +1, +1}, {Y, +1, +0, +1}, {Y, +1, -1, +1},
    {X, +1, -1, +0}, {X, +1, -1, -1}, {Y, -1, +0, -1}, {Y, -1, +1, -1},
    {Y, -1, +2, -1}, {X, -1, +2, +0}, {X, -1, +2, +1}, {X, -1, +2, +2},
    {Y, +1, +1, +2}, {Y, +1, +0, +2}, {Y, +1, -1, +2}, {Y, +1, -2, +2},
    {X, +1, -2, +1}, {X, +1, -2, +0}, {X, +1, -2, -1}, {X, +1, -2, -2},
    {Y, -1, -1, -2}, {Y, -1, +0, -2}, {Y, -1, +1, -2}, {Y, -1, +2, -2},
};

constexpr ShiftStep kScheduleReturn[4] = {
    {X, -1, +2, -1}, {X, -1, +2, +0}, {Y, +1, +1, +0}, {Y, +1, +0, +0},
};

}  // namespace

NeqrImage::NeqrImage(unsigned side_exponent, unsigned gray_depth)
    : n_(side_exponent), q_(gray_depth), gray_(std::size_t{1} << (2 * side_exponent), 0) {
    if (gray_depth == 0 || gray_depth > 16) {
        throw std::invalid_argument("gray depth must be in [1, 16]");
    }
    if (side_exponent > 15) throw std::invalid_argument("side exponent too large");
}

NeqrImage NeqrImage::encode(const PixelGrid& pixels) {
    const std::size_t count = pixels.values.size();
    const std::size_t expected = std::size_t{1} << (2 * pixels.side_exponent);
    if (count != expected || !is_power_of_two(pixels.side())) {
        throw std::invalid_argument("image must be square with a power-of-two side");
    }
    NeqrImage img(pixels.side_exponent, pixels.gray_depth);
    const std::uint32_t limit = 1u << pixels.gray_depth;
    for (std::size_t i = 0; i < count; ++i) {
        if (pixels.values[i] >= limit) {
            throw std::invalid_argument("gray value exceeds 2^q - 1");
        }
        img.gray_[i] = pixels.values[i];
    }
    return img;
}

PixelGrid NeqrImage::decode() const {
    PixelGrid out;
    out.side_exponent = n_;
    out.gray_depth = q_;
    out.values = gray_;
    return out;
}

void NeqrImage::set_gray(unsigned y, unsigned x, std::uint16_t value) {
    if (value >= (1u << q_)) throw std::invalid_argument("gray value exceeds 2^q - 1");
    gray_[(std::size_t{y} << n_) | x] = value;
}

NeqrImage cycle_shift(const NeqrImage& img, Axis axis, int delta) {
    if (delta != 1 && delta != -1) throw std::invalid_argument("cycle shift step must be +1 or -1");
    const unsigned side = img.side();
    const unsigned mask = side - 1;
    NeqrImage out(img.side_exponent(), img.gray_depth());
    for (unsigned y = 0; y < side; ++y) {
        for (unsigned x = 0; x < side; ++x) {
            const unsigned sy = axis == Axis::Y ? ((y - static_cast<unsigned>(delta)) & mask) : y;
            const unsigned sx = axis == Axis::X ? ((x - static_cast<unsigned>(delta)) & mask) : x;
            out.set_gray(y, x, img.gray(sy, sx));
        }
    }
    return out;
}

GateProgram ct_program(unsigned width, int delta) {
    if (width == 0) throw std::invalid_argument("ct: width must be positive");
    if (delta != 1 && delta != -1) throw std::invalid_argument("ct: step must be +1 or -1");
    GateProgram p;
    auto y = p.add_register("pos", width);
    if (delta == 1) {
        emit_increment(p, y.bits());
    } else {
        emit_decrement(p, y.bits());
    }
    return p;
}

std::span<const ShiftStep> shift_schedule() { return kSchedule; }

std::span<const ShiftStep> shift_schedule_return() { return kScheduleReturn; }

NeighborhoodBundle::NeighborhoodBundle(unsigned side_exponent, unsigned gray_depth)
    : n_(side_exponent), q_(gray_depth) {
    for (auto& plane : planes_) plane.assign(std::size_t{1} << (2 * n_), 0);
}

std::size_t NeighborhoodBundle::plane_index(int dy, int dx) {
    if (dy < -kRadius || dy > kRadius || dx < -kRadius || dx > kRadius) {
        throw std::invalid_argument("window offset out of range");
    }
    return static_cast<std::size_t>((dy + kRadius) * 5 + (dx + kRadius));
}

std::array<std::uint16_t, NeighborhoodBundle::kPlanes> NeighborhoodBundle::window(unsigned y,
                                                                                  unsigned x) const {
    std::array<std::uint16_t, kPlanes> out{};
    const std::size_t pos = (std::size_t{y} << n_) | x;
    for (std::size_t i = 0; i < kPlanes; ++i) out[i] = planes_[i][pos];
    return out;
}

NeighborhoodBundle neighborhood_bundle(const NeqrImage& img) {
    NeighborhoodBundle bundle(img.side_exponent(), img.gray_depth());
    bundle.plane(0, 0) = img.plane();
    NeqrImage working = img;
    for (const ShiftStep& step : shift_schedule()) {
        working = cycle_shift(working, step.axis, step.delta);
        bundle.plane(step.dy, step.dx) = working.plane();
    }
    for (const ShiftStep& step : shift_schedule_return()) {
        working = cycle_shift(working, step.axis, step.delta);
    }
    // The walk must end where it started.
    if (!(working == img)) throw std::logic_error("shift schedule failed to return to origin");
    return bundle;
}

}  // namespace qsed
