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
#include <utility>
#include <vector>

#include "qsed/gradient.hpp"
#include "qsed/neqr.hpp"
#include "qsed/revcore.hpp"

namespace qsed {

/// Quantum mode executes the per-pixel gate programs; classical mode runs
/// the integer oracle. Both must agree bit for bit.
enum class Mode : std::uint8_t { Quantum, Classical };

/// High/low threshold pair with the fixed low = high / 3 relation.
struct Thresholds {
    std::uint32_t high = 0;
    std::uint32_t low = 0;

    static Thresholds from_high(std::uint32_t t_high);

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Per-pixel result of non-maximum suppression: the keep flag and the
/// magnitude, zeroed where suppressed.
struct SuppressedField {
    unsigned side_exponent = 0;
    unsigned gray_depth = 8;
    std::vector<std::uint8_t> keep;
    std::vector<std::uint32_t> magnitude;

    unsigned side() const { return 1u << side_exponent; }

    friend bool operator==(const SuppressedField&, const SuppressedField&) = default;
};

enum class EdgeLabel : std::uint8_t { None = 0, Weak = 1, Strong = 2 };

struct EdgeLabelMap {
    unsigned side_exponent = 0;
    std::vector<EdgeLabel> labels;

    unsigned side() const { return 1u << side_exponent; }
    EdgeLabel at(long long y, long long x) const {
        const unsigned mask = side() - 1;
        return labels[(std::size_t{static_cast<unsigned>(y) & mask} << side_exponent) |
                      (static_cast<unsigned>(x) & mask)];
    }

    friend bool operator==(const EdgeLabelMap&, const EdgeLabelMap&) = default;
};

struct EdgeMap {
    unsigned side_exponent = 0;
    std::vector<std::uint8_t> edge;  // 0 or 1

    unsigned side() const { return 1u << side_exponent; }

    friend bool operator==(const EdgeMap&, const EdgeMap&) = default;
};

/// The neighbor step compared against during suppression, per direction:
/// the radius-2 quantization (round(2 sin), round(2 cos)) of the
/// direction angle, keeping the eight directions distinct inside the 5x5
/// window. Returned as (dy, dx); the two neighbors sit at +- that step.
std::pair<int, int> nms_offset(unsigned direction);

/// The 24 non-center offsets of the 5x5 window in ascending (dy, dx)
/// order, the neighborhood sweep used by edge tracking.
std::span<const std::pair<int, int>> tracking_offsets();

// ---------------------------------------------------------------------------
// Circuit cores. Each appends one detection step to an existing program
// over caller-supplied input registers, and returns the fresh output
// registers it declared. Used both by the executable per-pixel circuits
// and by the assembled cost-model program.
// ---------------------------------------------------------------------------

struct NmsCore {
    RegisterHandle keep;
    RegisterHandle out;
};

/// Suppression over muxed neighbors: for each direction row, the forward
/// and backward neighbor magnitudes are selected by the direction
/// register, compared against the pixel's own magnitude, and the pixel
/// is kept only when it is not strictly below either neighbor.
NmsCore emit_nms_core(GateProgram& p, std::span<const unsigned> directions, RegisterHandle self,
                      RegisterHandle direction, const std::vector<RegisterHandle>& fwd,
                      const std::vector<RegisterHandle>& bwd);

struct ThresholdCore {
    RegisterHandle high;
    RegisterHandle low;
    RegisterHandle strong;
    RegisterHandle weak;
};

/// Double-threshold classification; the threshold registers are inputs
/// set by the driver. strong = magnitude > high, weak = neither strong
/// nor below low.
ThresholdCore emit_threshold_core(GateProgram& p, RegisterHandle magnitude);

/// Edge tracking: edge = strong OR (weak AND any neighbor strong bit).
RegisterHandle emit_tracking_core(GateProgram& p, RegisterHandle strong, RegisterHandle weak,
                                  std::span<const BitAddr> neighbor_strong);

// ---------------------------------------------------------------------------
// Reusable per-pixel circuits.
// ---------------------------------------------------------------------------

class NmsCircuit {
public:
    NmsCircuit(unsigned gray_depth, std::span<const unsigned> directions);

    struct PixelResult {
        bool keep = false;
        std::uint32_t magnitude = 0;
    };

    const GateProgram& program() const { return program_; }

    /// fwd/bwd are indexed by direction (only the wired rows are read).
    PixelResult run(std::uint32_t self, std::uint8_t direction,
                    const std::array<std::uint32_t, kNumDirections>& fwd,
                    const std::array<std::uint32_t, kNumDirections>& bwd) const;

private:
    struct Parts;
    explicit NmsCircuit(Parts&& parts);

    GateProgram program_;
    std::vector<unsigned> directions_;
    std::uint16_t self_reg_ = 0;
    std::uint16_t dir_reg_ = 0;
    std::vector<std::uint16_t> fwd_regs_;
    std::vector<std::uint16_t> bwd_regs_;
    std::uint16_t keep_reg_ = 0;
    std::uint16_t out_reg_ = 0;
    RegisterFile template_rf_;
};

class ThresholdCircuit {
public:
    explicit ThresholdCircuit(unsigned gray_depth);

    const GateProgram& program() const { return program_; }
    EdgeLabel run(std::uint32_t magnitude, Thresholds t) const;

private:
    struct Parts;
    explicit ThresholdCircuit(Parts&& parts);

    GateProgram program_;
    std::uint16_t mag_reg_ = 0;
    std::uint16_t high_reg_ = 0;
    std::uint16_t low_reg_ = 0;
    std::uint16_t strong_reg_ = 0;
    std::uint16_t weak_reg_ = 0;
    RegisterFile template_rf_;
};

class TrackingCircuit {
public:
    TrackingCircuit();

    const GateProgram& program() const { return program_; }
    bool run(EdgeLabel self, const std::array<EdgeLabel, 24>& neighbors) const;

private:
    struct Parts;
    explicit TrackingCircuit(Parts&& parts);

    GateProgram program_;
    std::uint16_t strong_reg_ = 0;
    std::uint16_t weak_reg_ = 0;
    std::uint16_t neighbors_reg_ = 0;
    std::uint16_t edge_reg_ = 0;
    RegisterFile template_rf_;
};

// ---------------------------------------------------------------------------
// Detection stages (quantum execution) and the end-to-end driver.
// ---------------------------------------------------------------------------

SuppressedField non_max_suppress(const GradientField& field);
SuppressedField non_max_suppress(const GradientField& field, std::span<const unsigned> directions);

EdgeLabelMap double_threshold(const SuppressedField& field, Thresholds t);

EdgeMap edge_track(const EdgeLabelMap& labels);

struct DetectionTrace {
    Thresholds thresholds;
    GradientField gradient;
    SuppressedField suppressed;
    EdgeLabelMap labels;
    EdgeMap edges;
};

EdgeMap detect_edges(const NeqrImage& img, std::uint32_t t_high, Mode mode,
                     unsigned directions = kNumDirections);
DetectionTrace detect_edges_traced(const NeqrImage& img, std::uint32_t t_high, Mode mode,
                                   unsigned directions = kNumDirections);

/// The reference per-pixel program for the whole detector on a 2^n x 2^n
/// image: neighborhood shift schedule, gradient units, suppression,
/// thresholding and tracking, as one program with one named section per
/// step. Image preparation is not part of it. Used for gate-cost
/// reporting and reversibility checks; it is not executed per pixel.
GateProgram assemble_pixel_program(unsigned side_exponent, unsigned gray_depth,
                                   unsigned directions);

}  // namespace qsed
