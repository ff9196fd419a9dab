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

#include "qsed/neqr.hpp"
#include "qsed/revcore.hpp"

namespace qsed {

inline constexpr unsigned kNumDirections = 8;

/// One mask term: add weight * gray(Y+dy, X+dx) to the response.
struct MaskEntry {
    int dy;
    int dx;
    int weight;  // in {+-1, +-2, +-4}
};

/// The ten terms of direction k's 5x5 mask, in ascending (dy,dx) order.
/// This offset/weight table is the single source of truth for all
/// gradient computation, quantum and classical alike; its row sums are
/// zero and its positive-coefficient sums lie in {10, 12, 13}.
std::span<const MaskEntry> direction_mask(unsigned k);

/// Direction angle in degrees (k * 22.5).
double direction_angle_deg(unsigned k);

/// Direction indices participating in a 2-, 4- or 8-direction run:
/// {0,4}, {0,2,4,6} or all eight.
std::vector<unsigned> direction_subset(unsigned count);

/// Register width holding gradient magnitudes: the largest one-sided
/// coefficient sum is 13 < 2^4, so q+4 bits never overflow.
inline unsigned magnitude_width(unsigned gray_depth) { return gray_depth + 4; }

/// Per-pixel gradient results: winning magnitude (q+4 bits), winning
/// direction index (smallest index on ties) and the nonzero flag.
struct GradientField {
    unsigned side_exponent = 0;
    unsigned gray_depth = 8;
    std::vector<std::uint32_t> magnitude;
    std::vector<std::uint8_t> direction;
    std::vector<std::uint8_t> nonzero;

    unsigned side() const { return 1u << side_exponent; }
    std::size_t index(unsigned y, unsigned x) const { return (std::size_t{y} << side_exponent) | x; }
    std::uint32_t magnitude_at(long long y, long long x) const {
        const unsigned mask = side() - 1;
        return magnitude[index(static_cast<unsigned>(y) & mask, static_cast<unsigned>(x) & mask)];
    }

    friend bool operator==(const GradientField&, const GradientField&) = default;
};

/// Appends one direction's magnitude computation to `p`: the positive and
/// negative mask sums are accumulated into pos_acc / neg_acc (doubling by
/// swap-chain shifts, term scratch uncomputed after each add), then
/// magnitude ^= |pos_acc - neg_acc|. All operand registers must be
/// magnitude_width(q) wide; `window` maps NeighborhoodBundle plane
/// indices to q-bit input registers.
void emit_direction_magnitude(GateProgram& p, unsigned gray_depth, unsigned direction,
                              const std::array<RegisterHandle, 25>& window, RegisterHandle pos_acc,
                              RegisterHandle neg_acc, RegisterHandle magnitude, RegisterHandle term,
                              RegisterHandle work, BitAddr carry);

/// Appends the maximum-selection cascade: `best` and `best_dir` collect
/// the winning magnitude/direction via comparator + controlled-swap
/// rounds (fresh flag bits per round), and `flag` becomes [best != 0].
void emit_max_select(GateProgram& p, std::span<const unsigned> directions,
                     const std::vector<RegisterHandle>& magnitudes, RegisterHandle best,
                     RegisterHandle best_dir, RegisterHandle flag);

/// Declares the 25 q-bit window input registers (c_<dy>_<dx>, ordered by
/// NeighborhoodBundle::plane_index).
std::array<RegisterHandle, 25> add_window_registers(GateProgram& p, unsigned gray_depth);

/// Whole gradient step over existing window registers: one magnitude
/// unit per requested direction followed by the maximum selection.
struct GradientStage {
    RegisterHandle best;
    RegisterHandle direction;
    RegisterHandle flag;
};
GradientStage emit_gradient_stage(GateProgram& p, unsigned gray_depth,
                                  std::span<const unsigned> directions,
                                  const std::array<RegisterHandle, 25>& window);

/// Reusable per-pixel circuit computing |G^k| for one direction.
class DirectionGradientCircuit {
public:
    DirectionGradientCircuit(unsigned gray_depth, unsigned direction);

    const GateProgram& program() const { return program_; }
    std::uint32_t run(const std::array<std::uint16_t, 25>& window) const;

private:
    struct Parts;
    explicit DirectionGradientCircuit(Parts&& parts);

    GateProgram program_;
    std::array<std::uint16_t, 25> window_regs_{};
    std::uint16_t out_reg_ = 0;
    RegisterFile template_rf_;
};

/// Reusable per-pixel circuit computing every requested direction's
/// magnitude plus the winning (magnitude, direction, nonzero) triple.
class GradientCircuit {
public:
    GradientCircuit(unsigned gray_depth, std::span<const unsigned> directions);

    struct PixelResult {
        std::uint32_t magnitude = 0;
        std::uint8_t direction = 0;
        bool nonzero = false;
    };

    const GateProgram& program() const { return program_; }
    PixelResult run(const std::array<std::uint16_t, 25>& window) const;

private:
    struct Parts;
    explicit GradientCircuit(Parts&& parts);

    GateProgram program_;
    std::array<std::uint16_t, 25> window_regs_{};
    std::uint16_t best_reg_ = 0;
    std::uint16_t dir_reg_ = 0;
    std::uint16_t flag_reg_ = 0;
    RegisterFile template_rf_;
};

/// |G^k| for every pixel, computed by gate programs over the bundle.
std::vector<std::uint32_t> direction_gradient(const NeighborhoodBundle& bundle, unsigned direction);

/// Full gradient field (all eight directions unless restricted).
GradientField max_gradient(const NeighborhoodBundle& bundle);
GradientField max_gradient(const NeighborhoodBundle& bundle, std::span<const unsigned> directions);

}  // namespace qsed
