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

#include "qsed/pipeline.hpp"

#include <stdexcept>
#include <string>

#include "qsed/arith.hpp"
#include "qsed/oracle.hpp"
#include "qsed/parallel.hpp"

namespace qsed {

namespace {

constexpr std::pair<int, int> kNmsOffsets[kNumDirections] = {
    {0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}, {2, -1}, {1, -1}, {1, -2},
};

std::vector<std::pair<int, int>> make_tracking_offsets() {
    std::vector<std::pair<int, int>> out;
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            if (dy != 0 || dx != 0) out.emplace_back(dy, dx);
        }
    }
    return out;
}

std::string offset_tag(int v) {
    if (v < 0) return "m" + std::to_string(-v);
    if (v > 0) return "p" + std::to_string(v);
    return "z";
}

void check_threshold_fit(Thresholds t, unsigned gray_depth) {
    const unsigned w = magnitude_width(gray_depth);
    if (t.high == 0) throw std::invalid_argument("high threshold must be at least 1");
    if (t.low != t.high / 3) throw std::invalid_argument("low threshold must be high / 3");
    if (w < 32 && t.high >= (std::uint64_t{1} << w)) {
        throw std::invalid_argument("high threshold does not fit the q+4-bit magnitude register");
    }
}

}  // namespace

Thresholds Thresholds::from_high(std::uint32_t t_high) {
    if (t_high == 0) throw std::invalid_argument("high threshold must be at least 1");
    return Thresholds{t_high, t_high / 3};
}

std::pair<int, int> nms_offset(unsigned direction) {
    if (direction >= kNumDirections) throw std::invalid_argument("direction index must be below 8");
    return kNmsOffsets[direction];
}

std::span<const std::pair<int, int>> tracking_offsets() {
    static const std::vector<std::pair<int, int>> offsets = make_tracking_offsets();
    return offsets;
}

// ---------------------------------------------------------------------------
// Circuit cores
// ---------------------------------------------------------------------------

NmsCore emit_nms_core(GateProgram& p, std::span<const unsigned> directions, RegisterHandle self,
                      RegisterHandle direction, const std::vector<RegisterHandle>& fwd,
                      const std::vector<RegisterHandle>& bwd) {
    const unsigned w = self.width();
    if (fwd.size() != directions.size() || bwd.size() != directions.size()) {
        throw std::invalid_argument("suppression needs one neighbor pair per direction");
    }

    auto sel_f = p.add_register("nms_fwd", w);
    auto sel_b = p.add_register("nms_bwd", w);

    // Route the neighbor pair selected by the direction register into the
    // comparison operands.
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const unsigned k = directions[i];
        for (unsigned b = 0; b < w; ++b) {
            std::vector<Control> row;
            for (unsigned j = 0; j < direction.width(); ++j) {
                row.push_back(Control{direction[j], ((k >> j) & 1u) != 0});
            }
            auto row_b = row;
            row.push_back(pos(fwd[i][b]));
            p.mcx(std::move(row), sel_f[b]);
            row_b.push_back(pos(bwd[i][b]));
            p.mcx(std::move(row_b), sel_b[b]);
        }
    }

    RegisterHandle eq, pfx;
    if (w >= 2) {
        eq = p.add_register("nms_eq", w - 1);
        pfx = p.add_register("nms_pfx", w - 1);
    }
    auto gt_f = p.add_register("nms_gt_f", 1);
    auto lt_f = p.add_register("nms_lt_f", 1);
    auto gt_b = p.add_register("nms_gt_b", 1);
    auto lt_b = p.add_register("nms_lt_b", 1);
    emit_comparator(p, self.bits(), sel_f.bits(), gt_f[0], lt_f[0], eq.bits(), pfx.bits());
    emit_comparator(p, self.bits(), sel_b.bits(), gt_b[0], lt_b[0], eq.bits(), pfx.bits());

    NmsCore core{p.add_register("keep", 1), p.add_register("g_kept", w)};
    // Kept when not strictly below either neighbor along the winning
    // direction; the kept magnitude is the pixel's own, zero otherwise.
    p.ccx(neg(lt_f[0]), neg(lt_b[0]), core.keep[0]);
    for (unsigned b = 0; b < w; ++b) p.ccx(pos(core.keep[0]), pos(self[b]), core.out[b]);
    return core;
}

ThresholdCore emit_threshold_core(GateProgram& p, RegisterHandle magnitude) {
    const unsigned w = magnitude.width();
    ThresholdCore core{p.add_register("t_high", w), p.add_register("t_low", w),
                       p.add_register("strong", 1), p.add_register("weak", 1)};

    RegisterHandle eq, pfx;
    if (w >= 2) {
        eq = p.add_register("thr_eq", w - 1);
        pfx = p.add_register("thr_pfx", w - 1);
    }
    auto h_gt = p.add_register("thr_h_gt", 1);
    auto h_lt = p.add_register("thr_h_lt", 1);
    auto l_gt = p.add_register("thr_l_gt", 1);
    auto l_lt = p.add_register("thr_l_lt", 1);
    emit_comparator(p, magnitude.bits(), core.high.bits(), h_gt[0], h_lt[0], eq.bits(), pfx.bits());
    emit_comparator(p, magnitude.bits(), core.low.bits(), l_gt[0], l_lt[0], eq.bits(), pfx.bits());

    // Strong needs strictly above the high threshold; weak is anything
    // neither strong nor below the low threshold (both bounds inclusive).
    p.cx(h_gt[0], core.strong[0]);
    p.ccx(neg(h_gt[0]), neg(l_lt[0]), core.weak[0]);
    return core;
}

RegisterHandle emit_tracking_core(GateProgram& p, RegisterHandle strong, RegisterHandle weak,
                                  std::span<const BitAddr> neighbor_strong) {
    if (neighbor_strong.empty()) throw std::invalid_argument("tracking needs neighbor bits");
    auto any = p.add_register("any_strong", 1);
    auto edge = p.add_register("edge", 1);

    std::vector<Control> zeros;
    zeros.reserve(neighbor_strong.size());
    for (BitAddr bit : neighbor_strong) zeros.push_back(neg(bit));
    p.mcx(std::move(zeros), any[0]);
    p.x(any[0]);

    p.cx(strong[0], edge[0]);
    p.ccx(pos(weak[0]), pos(any[0]), edge[0]);
    return edge;
}

// ---------------------------------------------------------------------------
// NmsCircuit
// ---------------------------------------------------------------------------

struct NmsCircuit::Parts {
    GateProgram program;
    std::vector<unsigned> directions;
    std::uint16_t self_reg = 0;
    std::uint16_t dir_reg = 0;
    std::vector<std::uint16_t> fwd_regs;
    std::vector<std::uint16_t> bwd_regs;
    std::uint16_t keep_reg = 0;
    std::uint16_t out_reg = 0;
};

NmsCircuit::NmsCircuit(Parts&& parts)
    : program_(std::move(parts.program)),
      directions_(std::move(parts.directions)),
      self_reg_(parts.self_reg),
      dir_reg_(parts.dir_reg),
      fwd_regs_(std::move(parts.fwd_regs)),
      bwd_regs_(std::move(parts.bwd_regs)),
      keep_reg_(parts.keep_reg),
      out_reg_(parts.out_reg),
      template_rf_(program_.make_register_file()) {}

NmsCircuit::NmsCircuit(unsigned gray_depth, std::span<const unsigned> directions)
    : NmsCircuit([&]() {
          Parts parts;
          GateProgram& p = parts.program;
          const unsigned w = magnitude_width(gray_depth);
          parts.directions.assign(directions.begin(), directions.end());
          auto self = p.add_register("gc", w);
          auto dir = p.add_register("dir", 3);
          std::vector<RegisterHandle> fwd, bwd;
          for (unsigned k : directions) {
              fwd.push_back(p.add_register("np_" + std::to_string(k), w));
              bwd.push_back(p.add_register("nm_" + std::to_string(k), w));
          }
          const NmsCore core = emit_nms_core(p, directions, self, dir, fwd, bwd);
          parts.self_reg = self.index();
          parts.dir_reg = dir.index();
          for (const auto& h : fwd) parts.fwd_regs.push_back(h.index());
          for (const auto& h : bwd) parts.bwd_regs.push_back(h.index());
          parts.keep_reg = core.keep.index();
          parts.out_reg = core.out.index();
          return parts;
      }()) {}

NmsCircuit::PixelResult NmsCircuit::run(std::uint32_t self, std::uint8_t direction,
                                        const std::array<std::uint32_t, kNumDirections>& fwd,
                                        const std::array<std::uint32_t, kNumDirections>& bwd) const {
    RegisterFile rf = template_rf_;
    rf.set(self_reg_, self);
    rf.set(dir_reg_, direction);
    for (std::size_t i = 0; i < directions_.size(); ++i) {
        rf.set(fwd_regs_[i], fwd[directions_[i]]);
        rf.set(bwd_regs_[i], bwd[directions_[i]]);
    }
    program_.apply(rf);
    PixelResult out;
    out.keep = rf.get(keep_reg_) != 0;
    out.magnitude = static_cast<std::uint32_t>(rf.get(out_reg_));
    return out;
}

// ---------------------------------------------------------------------------
// ThresholdCircuit
// ---------------------------------------------------------------------------

struct ThresholdCircuit::Parts {
    GateProgram program;
    std::uint16_t mag_reg = 0;
    std::uint16_t high_reg = 0;
    std::uint16_t low_reg = 0;
    std::uint16_t strong_reg = 0;
    std::uint16_t weak_reg = 0;
};

ThresholdCircuit::ThresholdCircuit(Parts&& parts)
    : program_(std::move(parts.program)),
      mag_reg_(parts.mag_reg),
      high_reg_(parts.high_reg),
      low_reg_(parts.low_reg),
      strong_reg_(parts.strong_reg),
      weak_reg_(parts.weak_reg),
      template_rf_(program_.make_register_file()) {}

ThresholdCircuit::ThresholdCircuit(unsigned gray_depth)
    : ThresholdCircuit([&]() {
          Parts parts;
          GateProgram& p = parts.program;
          auto gs = p.add_register("gs", magnitude_width(gray_depth));
          const ThresholdCore core = emit_threshold_core(p, gs);
          parts.mag_reg = gs.index();
          parts.high_reg = core.high.index();
          parts.low_reg = core.low.index();
          parts.strong_reg = core.strong.index();
          parts.weak_reg = core.weak.index();
          return parts;
      }()) {}

EdgeLabel ThresholdCircuit::run(std::uint32_t magnitude, Thresholds t) const {
    RegisterFile rf = template_rf_;
    rf.set(mag_reg_, magnitude);
    rf.set(high_reg_, t.high);
    rf.set(low_reg_, t.low);
    program_.apply(rf);
    const bool strong = rf.get(strong_reg_) != 0;
    const bool weak = rf.get(weak_reg_) != 0;
    if (strong && weak) throw std::logic_error("threshold circuit produced label 11");
    return strong ? EdgeLabel::Strong : weak ? EdgeLabel::Weak : EdgeLabel::None;
}

// ---------------------------------------------------------------------------
// TrackingCircuit
// ---------------------------------------------------------------------------

struct TrackingCircuit::Parts {
    GateProgram program;
    std::uint16_t strong_reg = 0;
    std::uint16_t weak_reg = 0;
    std::uint16_t neighbors_reg = 0;
    std::uint16_t edge_reg = 0;
};

TrackingCircuit::TrackingCircuit(Parts&& parts)
    : program_(std::move(parts.program)),
      strong_reg_(parts.strong_reg),
      weak_reg_(parts.weak_reg),
      neighbors_reg_(parts.neighbors_reg),
      edge_reg_(parts.edge_reg),
      template_rf_(program_.make_register_file()) {}

TrackingCircuit::TrackingCircuit()
    : TrackingCircuit([&]() {
          Parts parts;
          GateProgram& p = parts.program;
          auto strong = p.add_register("strong", 1);
          auto weak = p.add_register("weak", 1);
          auto neighbors = p.add_register("nbr_strong", 24);
          const RegisterHandle edge = emit_tracking_core(p, strong, weak, neighbors.bits());
          parts.strong_reg = strong.index();
          parts.weak_reg = weak.index();
          parts.neighbors_reg = neighbors.index();
          parts.edge_reg = edge.index();
          return parts;
      }()) {}

bool TrackingCircuit::run(EdgeLabel self, const std::array<EdgeLabel, 24>& neighbors) const {
    RegisterFile rf = template_rf_;
    rf.set(strong_reg_, self == EdgeLabel::Strong ? 1 : 0);
    rf.set(weak_reg_, self == EdgeLabel::Weak ? 1 : 0);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        if (neighbors[i] == EdgeLabel::Strong) bits |= std::uint64_t{1} << i;
    }
    rf.set(neighbors_reg_, bits);
    program_.apply(rf);
    return rf.get(edge_reg_) != 0;
}

// ---------------------------------------------------------------------------
// Stage drivers
// ---------------------------------------------------------------------------

SuppressedField non_max_suppress(const GradientField& field) {
    const auto dirs = direction_subset(kNumDirections);
    return non_max_suppress(field, dirs);
}

SuppressedField non_max_suppress(const GradientField& field, std::span<const unsigned> directions) {
    const NmsCircuit circuit(field.gray_depth, directions);
    SuppressedField out;
    out.side_exponent = field.side_exponent;
    out.gray_depth = field.gray_depth;
    const std::size_t count = field.magnitude.size();
    out.keep.resize(count);
    out.magnitude.resize(count);
    const unsigned side = field.side();
    parallel_for(count, [&](std::size_t i) {
        const long long y = static_cast<long long>(i >> field.side_exponent);
        const long long x = static_cast<long long>(i & (side - 1));
        std::array<std::uint32_t, kNumDirections> fwd{};
        std::array<std::uint32_t, kNumDirections> bwd{};
        for (unsigned k : directions) {
            const auto [dy, dx] = nms_offset(k);
            fwd[k] = field.magnitude_at(y + dy, x + dx);
            bwd[k] = field.magnitude_at(y - dy, x - dx);
        }
        const auto res = circuit.run(field.magnitude[i], field.direction[i], fwd, bwd);
        out.keep[i] = res.keep ? 1 : 0;
        out.magnitude[i] = res.magnitude;
    });
    return out;
}

EdgeLabelMap double_threshold(const SuppressedField& field, Thresholds t) {
    check_threshold_fit(t, field.gray_depth);
    const ThresholdCircuit circuit(field.gray_depth);
    EdgeLabelMap out;
    out.side_exponent = field.side_exponent;
    out.labels.resize(field.magnitude.size());
    parallel_for(out.labels.size(), [&](std::size_t i) {
        out.labels[i] = circuit.run(field.magnitude[i], t);
    });
    return out;
}

EdgeMap edge_track(const EdgeLabelMap& labels) {
    const TrackingCircuit circuit;
    EdgeMap out;
    out.side_exponent = labels.side_exponent;
    out.edge.resize(labels.labels.size());
    const unsigned side = labels.side();
    const auto offsets = tracking_offsets();
    parallel_for(out.edge.size(), [&](std::size_t i) {
        const long long y = static_cast<long long>(i >> labels.side_exponent);
        const long long x = static_cast<long long>(i & (side - 1));
        std::array<EdgeLabel, 24> nbrs{};
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            nbrs[j] = labels.at(y + offsets[j].first, x + offsets[j].second);
        }
        out.edge[i] = circuit.run(labels.labels[i], nbrs) ? 1 : 0;
    });
    return out;
}

DetectionTrace detect_edges_traced(const NeqrImage& img, std::uint32_t t_high, Mode mode,
                                   unsigned directions) {
    const Thresholds t = Thresholds::from_high(t_high);
    check_threshold_fit(t, img.gray_depth());
    if (mode == Mode::Classical) {
        return oracle::classical_pipeline_traced(img.decode(), t_high, directions);
    }
    const auto dirs = direction_subset(directions);
    DetectionTrace trace;
    trace.thresholds = t;
    const NeighborhoodBundle bundle = neighborhood_bundle(img);
    trace.gradient = max_gradient(bundle, dirs);
    trace.suppressed = non_max_suppress(trace.gradient, dirs);
    trace.labels = double_threshold(trace.suppressed, t);
    trace.edges = edge_track(trace.labels);
    return trace;
}

EdgeMap detect_edges(const NeqrImage& img, std::uint32_t t_high, Mode mode, unsigned directions) {
    return detect_edges_traced(img, t_high, mode, directions).edges;
}

// ---------------------------------------------------------------------------
// Assembled per-pixel reference program
// ---------------------------------------------------------------------------

GateProgram assemble_pixel_program(unsigned side_exponent, unsigned gray_depth,
                                   unsigned directions) {
    if (side_exponent == 0) throw std::invalid_argument("side exponent must be at least 1");
    if (gray_depth == 0 || gray_depth > 16) throw std::invalid_argument("gray depth must be in [1, 16]");
    const auto dirs = direction_subset(directions);
    const unsigned w = magnitude_width(gray_depth);

    GateProgram p;
    auto pos_y = p.add_register("pos_y", side_exponent);
    auto pos_x = p.add_register("pos_x", side_exponent);
    auto window = add_window_registers(p, gray_depth);
    const RegisterHandle center = window[NeighborhoodBundle::plane_index(0, 0)];

    auto emit_ct = [&](Axis axis, int delta) {
        const auto bits = (axis == Axis::Y ? pos_y : pos_x).bits();
        if (delta == 1) {
            emit_increment(p, bits);
        } else {
            emit_decrement(p, bits);
        }
    };
    auto plane_name = [&](const char* prefix, int dy, int dx) {
        return std::string(prefix) + "_" + offset_tag(dy) + "_" + offset_tag(dx);
    };

    // Whole-window acquisition: walk the shift snake, copying the gray
    // register into a fresh plane after every step, then return home.
    p.begin_section("shift_schedule");
    for (const ShiftStep& step : shift_schedule()) {
        emit_ct(step.axis, step.delta);
        const auto plane = window[NeighborhoodBundle::plane_index(step.dy, step.dx)];
        emit_copy(p, center.bits(), plane.bits());
    }
    for (const ShiftStep& step : shift_schedule_return()) emit_ct(step.axis, step.delta);

    p.begin_section("gradient");
    const GradientStage grad = emit_gradient_stage(p, gray_depth, dirs, window);

    // Suppression re-runs the shift walk on the gradient image to gather
    // the neighbor magnitudes the direction mux selects from.
    p.begin_section("nms");
    std::array<RegisterHandle, 25> grad_planes{};
    for (const ShiftStep& step : shift_schedule()) {
        emit_ct(step.axis, step.delta);
        const auto idx = NeighborhoodBundle::plane_index(step.dy, step.dx);
        grad_planes[idx] = p.add_register(plane_name("gn", step.dy, step.dx), w);
        emit_copy(p, grad.best.bits(), grad_planes[idx].bits());
    }
    for (const ShiftStep& step : shift_schedule_return()) emit_ct(step.axis, step.delta);
    std::vector<RegisterHandle> fwd, bwd;
    for (unsigned k : dirs) {
        const auto [dy, dx] = nms_offset(k);
        fwd.push_back(grad_planes[NeighborhoodBundle::plane_index(dy, dx)]);
        bwd.push_back(grad_planes[NeighborhoodBundle::plane_index(-dy, -dx)]);
    }
    const NmsCore nms = emit_nms_core(p, dirs, grad.best, grad.direction, fwd, bwd);

    p.begin_section("threshold");
    const ThresholdCore thr = emit_threshold_core(p, nms.out);

    // Tracking gathers the 24 neighbor labels the same way, then tests
    // them for a strong bit.
    p.begin_section("tracking");
    std::vector<BitAddr> label_bits{thr.weak[0], thr.strong[0]};
    std::vector<BitAddr> neighbor_strong;
    for (const ShiftStep& step : shift_schedule()) {
        emit_ct(step.axis, step.delta);
        auto plane = p.add_register(plane_name("el", step.dy, step.dx), 2);
        emit_copy(p, label_bits, plane.bits());
        neighbor_strong.push_back(plane[1]);
    }
    for (const ShiftStep& step : shift_schedule_return()) emit_ct(step.axis, step.delta);
    emit_tracking_core(p, thr.strong, thr.weak, neighbor_strong);

    return p;
}

}  // namespace qsed
