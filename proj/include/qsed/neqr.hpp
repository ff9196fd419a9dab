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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qsed/pixel_grid.hpp"
#include "qsed/revcore.hpp"

namespace qsed {

enum class Axis : std::uint8_t { Y, X };

/// Basis-state quantum image: a 2^n x 2^n grid of q-bit gray registers,
/// one per position. Position superposition is uniform and implicit, so
/// the state is fully described by the gray values themselves, which is
/// what makes exact register-level simulation of the whole pipeline
/// possible.
class NeqrImage {
public:
    NeqrImage(unsigned side_exponent, unsigned gray_depth);

    /// Encodes a classical grid; throws when values exceed the depth.
    static NeqrImage encode(const PixelGrid& pixels);

    /// Exact recovery of the gray grid (deterministic in this model).
    PixelGrid decode() const;

    unsigned side_exponent() const { return n_; }
    unsigned gray_depth() const { return q_; }
    unsigned side() const { return 1u << n_; }

    std::uint16_t gray(unsigned y, unsigned x) const { return gray_[(std::size_t{y} << n_) | x]; }
    void set_gray(unsigned y, unsigned x, std::uint16_t value);

    const std::vector<std::uint16_t>& plane() const { return gray_; }

    friend bool operator==(const NeqrImage&, const NeqrImage&) = default;

private:
    unsigned n_;
    unsigned q_;
    std::vector<std::uint16_t> gray_;
};

/// Whole-image cyclic shift: the output at (Y,X) is the input at
/// (Y - delta, X) for Axis::Y (respectively X), indices mod 2^n.
/// Only unit steps are defined; delta must be +1 or -1.
NeqrImage cycle_shift(const NeqrImage& img, Axis axis, int delta);

/// Position-register shift circuit: adds delta (+1 or -1) to a width-bit
/// register modulo 2^width, as a controlled-NOT cascade.
GateProgram ct_program(unsigned width, int delta);

/// One step of the neighborhood preparation walk: the shift applied and
/// the window offset (dy, dx) the working image holds afterwards.
struct ShiftStep {
    Axis axis;
    int delta;
    int dy;
    int dx;
};

/// The 24-step snake visiting every non-center offset of the 5x5 window
/// exactly once.
std::span<const ShiftStep> shift_schedule();
/// The four closing shifts that return the working image to offset (0,0).
std::span<const ShiftStep> shift_schedule_return();

/// The 25 gray planes of the 5x5 neighborhood: plane (dy,dx) holds, at
/// every position (Y,X), the source gray at (Y+dy, X+dx) wrapped. Plane
/// (0,0) is the source image itself.
class NeighborhoodBundle {
public:
    static constexpr int kRadius = 2;
    static constexpr int kPlanes = 25;

    NeighborhoodBundle(unsigned side_exponent, unsigned gray_depth);

    static std::size_t plane_index(int dy, int dx);

    unsigned side_exponent() const { return n_; }
    unsigned gray_depth() const { return q_; }
    unsigned side() const { return 1u << n_; }

    const std::vector<std::uint16_t>& plane(int dy, int dx) const {
        return planes_[plane_index(dy, dx)];
    }
    std::vector<std::uint16_t>& plane(int dy, int dx) { return planes_[plane_index(dy, dx)]; }

    std::uint16_t at(int dy, int dx, unsigned y, unsigned x) const {
        return plane(dy, dx)[(std::size_t{y} << n_) | x];
    }

    /// All 25 window values around one pixel, indexed by plane_index.
    std::array<std::uint16_t, kPlanes> window(unsigned y, unsigned x) const;

private:
    unsigned n_;
    unsigned q_;
    std::array<std::vector<std::uint16_t>, kPlanes> planes_;
};

/// Materializes the bundle by walking the shift schedule: after each
/// shift the working image is copied out as the plane for that step's
/// offset, and the closing shifts bring the working image back to the
/// original position. Sides smaller than the window (n < 2) are legal;
/// offsets then alias through the wrap, exactly as the cyclic shifts do.
NeighborhoodBundle neighborhood_bundle(const NeqrImage& img);

}  // namespace qsed
