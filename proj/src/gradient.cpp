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

#include "qsed/gradient.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qsed/arith.hpp"
#include "qsed/parallel.hpp"

namespace qsed {

namespace {

// Ten offset/weight terms per direction, ascending (dy, dx). Every row
// sums to zero; the positive halves sum to 10, 13, 12, 13, 10, 13, 12
// and 13 respectively.
constexpr MaskEntry kMasks[kNumDirections][10] = {
    // 0 degrees
    {{-2, -1, -1}, {-2, +1, +1}, {-1, -1, -2}, {-1, +1, +2}, {0, -1, -4},
     {0, +1, +4}, {+1, -1, -2}, {+1, +1, +2}, {+2, -1, -1}, {+2, +1, +1}},
    // 22.5 degrees
    {{-2, 0, -1}, {-1, -1, -2}, {-1, 0, -4}, {-1, +1, +2}, {0, -1, -4},
     {0, +1, +4}, {+1, -1, -2}, {+1, 0, +4}, {+1, +1, +2}, {+2, 0, +1}},
    // 45 degrees
    {{-2, +1, -1}, {-1, -1, -2}, {-1, 0, -4}, {-1, +2, +1}, {0, -1, -4},
     {0, +1, +4}, {+1, -2, -1}, {+1, 0, +4}, {+1, +1, +2}, {+2, -1, +1}},
    // 67.5 degrees
    {{-1, -1, -2}, {-1, 0, -4}, {-1, +1, -2}, {0, -2, -1}, {0, -1, -4},
     {0, +1, +4}, {0, +2, +1}, {+1, -1, +2}, {+1, 0, +4}, {+1, +1, +2}},
    // 90 degrees
    {{-1, -2, -1}, {-1, -1, -2}, {-1, 0, -4}, {-1, +1, -2}, {-1, +2, -1},
     {+1, -2, +1}, {+1, -1, +2}, {+1, 0, +4}, {+1, +1, +2}, {+1, +2, +1}},
    // 112.5 degrees
    {{-1, -1, -2}, {-1, 0, -4}, {-1, +1, -2}, {0, -2, +1}, {0, -1, +4},
     {0, +1, -4}, {0, +2, -1}, {+1, -1, +2}, {+1, 0, +4}, {+1, +1, +2}},
    // 135 degrees
    {{-2, -1, -1}, {-1, -2, +1}, {-1, 0, -4}, {-1, +1, -2}, {0, -1, +4},
     {0, +1, -4}, {+1, -1, +2}, {+1, 0, +4}, {+1, +1, +1}, {+1, +2, -1}},
    // 157.5 degrees
    {{-2, 0, -1}, {-1, -1, +2}, {-1, 0, -4}, {-1, +1, -2}, {0, -1, +4},
     {0, +1, -4}, {+1, -1, +2}, {+1, 0, +4}, {+1, +1, -2}, {+2, 0, +1}},
};

void check_direction(unsigned k) {
    if (k >= kNumDirections) throw std::invalid_argument("direction index must be below 8");
}

std::string offset_tag(int v) {
    if (v < 0) return "m" + std::to_string(-v);
    if (v > 0) return "p" + std::to_string(v);
    return "z";
}

std::string window_reg_name(std::size_t plane) {
    const int dy = static_cast<int>(plane / 5) - NeighborhoodBundle::kRadius;
    const int dx = static_cast<int>(plane % 5) - NeighborhoodBundle::kRadius;
    return "c_" + offset_tag(dy) + "_" + offset_tag(dx);
}

}  // namespace

std::array<RegisterHandle, 25> add_window_registers(GateProgram& p, unsigned gray_depth) {
    std::array<RegisterHandle, 25> window;
    for (std::size_t i = 0; i < window.size(); ++i) {
        window[i] = p.add_register(window_reg_name(i), gray_depth);
    }
    return window;
}

std::span<const MaskEntry> direction_mask(unsigned k) {
    check_direction(k);
    return kMasks[k];
}

double direction_angle_deg(unsigned k) {
    check_direction(k);
    return 22.5 * k;
}

std::vector<unsigned> direction_subset(unsigned count) {
    switch (count) {
        case 2: return {0, 4};
        case 4: return {0, 2, 4, 6};
        case 8: return {0, 1, 2, 3, 4, 5, 6, 7};
        default: throw std::invalid_argument("direction count must be 2, 4 or 8");
    }
}

void emit_direction_magnitude(GateProgram& p, unsigned gray_depth, unsigned direction,
                              const std::array<RegisterHandle, 25>& window, RegisterHandle pos_acc,
                              RegisterHandle neg_acc, RegisterHandle magnitude, RegisterHandle term,
                              RegisterHandle work, BitAddr carry) {
    check_direction(direction);
    const unsigned w = magnitude_width(gray_depth);
    if (pos_acc.width() != w || neg_acc.width() != w || magnitude.width() != w ||
        term.width() != w || work.width() != w + 1) {
        throw std::invalid_argument("gradient registers must be q+4 bits (work q+5)");
    }

    for (const MaskEntry& entry : direction_mask(direction)) {
        const RegisterHandle& src = window[NeighborhoodBundle::plane_index(entry.dy, entry.dx)];
        const RegisterHandle& acc = entry.weight > 0 ? pos_acc : neg_acc;
        const unsigned mag = static_cast<unsigned>(std::abs(entry.weight));

        // term <- weight * gray, add into the accumulator, then undo the
        // term preparation so the scratch register is clean for the next
        // mask entry.
        const std::size_t prep_begin = p.size();
        emit_copy(p, src.bits(), term.bits(0, gray_depth));
        if (mag >= 2) emit_shift_up(p, term.bits(0, gray_depth + 1));
        if (mag == 4) emit_shift_up(p, term.bits(0, gray_depth + 2));
        const std::size_t prep_end = p.size();
        emit_add(p, term.bits(), acc.bits(), carry, std::nullopt);
        p.append_inverted_range(prep_begin, prep_end);
    }

    emit_abs_diff(p, pos_acc.bits(), neg_acc.bits(), magnitude.bits(), work.bits(), carry);
}

void emit_max_select(GateProgram& p, std::span<const unsigned> directions,
                     const std::vector<RegisterHandle>& magnitudes, RegisterHandle best,
                     RegisterHandle best_dir, RegisterHandle flag) {
    if (directions.empty() || magnitudes.size() != directions.size()) {
        throw std::invalid_argument("max selection needs one magnitude per direction");
    }
    for (std::size_t i = 1; i < directions.size(); ++i) {
        // Ascending order makes "strictly greater swaps in" resolve ties
        // to the smallest direction index.
        if (directions[i] <= directions[i - 1]) {
            throw std::invalid_argument("directions must be strictly ascending");
        }
    }
    const unsigned w = best.width();

    // Seed with the first direction; later rounds swap in any strictly
    // larger candidate, so ties resolve to the smallest index.
    emit_copy(p, magnitudes[0].bits(), best.bits());
    for (unsigned j = 0; j < best_dir.width(); ++j) {
        if ((directions[0] >> j) & 1u) p.x(best_dir[j]);
    }

    RegisterHandle eq, pfx;
    if (w >= 2 && directions.size() > 1) {
        eq = p.add_register("max_eq", w - 1);
        pfx = p.add_register("max_pfx", w - 1);
    }
    for (std::size_t i = 1; i < directions.size(); ++i) {
        const unsigned k = directions[i];
        auto gt = p.add_register("gt_" + std::to_string(k), 1);
        auto lt = p.add_register("lt_" + std::to_string(k), 1);
        auto idx = p.add_register("idx_" + std::to_string(k), best_dir.width());
        emit_comparator(p, magnitudes[i].bits(), best.bits(), gt[0], lt[0], eq.bits(), pfx.bits());
        for (unsigned b = 0; b < w; ++b) emit_cswap(p, pos(gt[0]), best[b], magnitudes[i][b]);
        for (unsigned j = 0; j < idx.width(); ++j) {
            if ((k >> j) & 1u) p.x(idx[j]);
        }
        for (unsigned j = 0; j < idx.width(); ++j) emit_cswap(p, pos(gt[0]), best_dir[j], idx[j]);
    }

    std::vector<Control> zeros;
    for (unsigned b = 0; b < w; ++b) zeros.push_back(neg(best[b]));
    p.mcx(std::move(zeros), flag[0]);
    p.x(flag[0]);
}

GradientStage emit_gradient_stage(GateProgram& p, unsigned gray_depth,
                                  std::span<const unsigned> directions,
                                  const std::array<RegisterHandle, 25>& window) {
    if (directions.empty()) throw std::invalid_argument("need at least one direction");
    const unsigned w = magnitude_width(gray_depth);

    auto term = p.add_register("term", w);
    auto work = p.add_register("work", w + 1);
    auto carry = p.add_register("carry", 1);
    std::vector<RegisterHandle> magnitudes;
    for (unsigned k : directions) {
        auto pos_acc = p.add_register("pos_sum_" + std::to_string(k), w);
        auto neg_acc = p.add_register("neg_sum_" + std::to_string(k), w);
        auto magnitude = p.add_register("grad_" + std::to_string(k), w);
        emit_direction_magnitude(p, gray_depth, k, window, pos_acc, neg_acc, magnitude, term, work,
                                 carry[0]);
        magnitudes.push_back(magnitude);
    }

    GradientStage stage{p.add_register("best", w), p.add_register("dir", 3),
                        p.add_register("flag", 1)};
    emit_max_select(p, directions, magnitudes, stage.best, stage.direction, stage.flag);
    return stage;
}

// ---------------------------------------------------------------------------
// DirectionGradientCircuit
// ---------------------------------------------------------------------------

struct DirectionGradientCircuit::Parts {
    GateProgram program;
    std::array<std::uint16_t, 25> window_regs{};
    std::uint16_t out_reg = 0;
};

DirectionGradientCircuit::DirectionGradientCircuit(Parts&& parts)
    : program_(std::move(parts.program)),
      window_regs_(parts.window_regs),
      out_reg_(parts.out_reg),
      template_rf_(program_.make_register_file()) {}

DirectionGradientCircuit::DirectionGradientCircuit(unsigned gray_depth, unsigned direction)
    : DirectionGradientCircuit([&]() {
          Parts parts;
          GateProgram& p = parts.program;
          const unsigned w = magnitude_width(gray_depth);
          auto window = add_window_registers(p, gray_depth);
          for (std::size_t i = 0; i < window.size(); ++i) parts.window_regs[i] = window[i].index();
          auto pos_acc = p.add_register("pos_sum", w);
          auto neg_acc = p.add_register("neg_sum", w);
          auto magnitude = p.add_register("grad", w);
          auto term = p.add_register("term", w);
          auto work = p.add_register("work", w + 1);
          auto carry = p.add_register("carry", 1);
          emit_direction_magnitude(p, gray_depth, direction, window, pos_acc, neg_acc, magnitude,
                                   term, work, carry[0]);
          parts.out_reg = magnitude.index();
          return parts;
      }()) {}

std::uint32_t DirectionGradientCircuit::run(const std::array<std::uint16_t, 25>& window) const {
    RegisterFile rf = template_rf_;
    for (std::size_t i = 0; i < window.size(); ++i) rf.set(window_regs_[i], window[i]);
    program_.apply(rf);
    return static_cast<std::uint32_t>(rf.get(out_reg_));
}

// ---------------------------------------------------------------------------
// GradientCircuit
// ---------------------------------------------------------------------------

struct GradientCircuit::Parts {
    GateProgram program;
    std::array<std::uint16_t, 25> window_regs{};
    std::uint16_t best_reg = 0;
    std::uint16_t dir_reg = 0;
    std::uint16_t flag_reg = 0;
};

GradientCircuit::GradientCircuit(Parts&& parts)
    : program_(std::move(parts.program)),
      window_regs_(parts.window_regs),
      best_reg_(parts.best_reg),
      dir_reg_(parts.dir_reg),
      flag_reg_(parts.flag_reg),
      template_rf_(program_.make_register_file()) {}

GradientCircuit::GradientCircuit(unsigned gray_depth, std::span<const unsigned> directions)
    : GradientCircuit([&]() {
          Parts parts;
          GateProgram& p = parts.program;
          auto window = add_window_registers(p, gray_depth);
          for (std::size_t i = 0; i < window.size(); ++i) parts.window_regs[i] = window[i].index();
          const GradientStage stage = emit_gradient_stage(p, gray_depth, directions, window);
          parts.best_reg = stage.best.index();
          parts.dir_reg = stage.direction.index();
          parts.flag_reg = stage.flag.index();
          return parts;
      }()) {}

GradientCircuit::PixelResult GradientCircuit::run(const std::array<std::uint16_t, 25>& window) const {
    RegisterFile rf = template_rf_;
    for (std::size_t i = 0; i < window.size(); ++i) rf.set(window_regs_[i], window[i]);
    program_.apply(rf);
    PixelResult out;
    out.magnitude = static_cast<std::uint32_t>(rf.get(best_reg_));
    out.direction = static_cast<std::uint8_t>(rf.get(dir_reg_));
    out.nonzero = rf.get(flag_reg_) != 0;
    return out;
}

std::vector<std::uint32_t> direction_gradient(const NeighborhoodBundle& bundle, unsigned direction) {
    const DirectionGradientCircuit circuit(bundle.gray_depth(), direction);
    const unsigned side = bundle.side();
    std::vector<std::uint32_t> out(std::size_t{1} << (2 * bundle.side_exponent()));
    parallel_for(out.size(), [&](std::size_t i) {
        const unsigned y = static_cast<unsigned>(i >> bundle.side_exponent());
        const unsigned x = static_cast<unsigned>(i) & (side - 1);
        out[i] = circuit.run(bundle.window(y, x));
    });
    return out;
}

GradientField max_gradient(const NeighborhoodBundle& bundle) {
    const auto all = direction_subset(kNumDirections);
    return max_gradient(bundle, all);
}

GradientField max_gradient(const NeighborhoodBundle& bundle, std::span<const unsigned> directions) {
    const GradientCircuit circuit(bundle.gray_depth(), directions);
    GradientField field;
    field.side_exponent = bundle.side_exponent();
    field.gray_depth = bundle.gray_depth();
    const std::size_t count = std::size_t{1} << (2 * field.side_exponent);
    field.magnitude.resize(count);
    field.direction.resize(count);
    field.nonzero.resize(count);
    const unsigned side = bundle.side();
    parallel_for(count, [&](std::size_t i) {
        const unsigned y = static_cast<unsigned>(i >> bundle.side_exponent());
        const unsigned x = static_cast<unsigned>(i) & (side - 1);
        const auto res = circuit.run(bundle.window(y, x));
        field.magnitude[i] = res.magnitude;
        field.direction[i] = res.direction;
        field.nonzero[i] = res.nonzero ? 1 : 0;
    });
    return field;
}

}  // namespace qsed
