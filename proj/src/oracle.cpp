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

#include "qsed/oracle.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace qsed::oracle {

std::vector<std::int64_t> classical_gradient(const PixelGrid& grid, unsigned direction) {
    const auto mask = direction_mask(direction);
    const unsigned side = grid.side();
    std::vector<std::int64_t> out(grid.values.size(), 0);
    for (unsigned y = 0; y < side; ++y) {
        for (unsigned x = 0; x < side; ++x) {
            std::int64_t sum = 0;
            for (const MaskEntry& e : mask) {
                sum += static_cast<std::int64_t>(e.weight) *
                       grid.wrapped(static_cast<long long>(y) + e.dy,
                                    static_cast<long long>(x) + e.dx);
            }
            out[(std::size_t{y} << grid.side_exponent) | x] = sum;
        }
    }
    return out;
}

GradientField max_gradient(const PixelGrid& grid) {
    const auto all = direction_subset(kNumDirections);
    return max_gradient(grid, all);
}

GradientField max_gradient(const PixelGrid& grid, std::span<const unsigned> directions) {
    if (directions.empty()) throw std::invalid_argument("need at least one direction");
    GradientField field;
    field.side_exponent = grid.side_exponent;
    field.gray_depth = grid.gray_depth;
    const std::size_t count = grid.values.size();
    field.magnitude.assign(count, 0);
    field.direction.assign(count, 0);
    field.nonzero.assign(count, 0);

    std::vector<std::vector<std::int64_t>> responses;
    responses.reserve(directions.size());
    for (unsigned k : directions) responses.push_back(classical_gradient(grid, k));

    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t best = 0;
        unsigned best_dir = directions[0];
        for (std::size_t d = 0; d < directions.size(); ++d) {
            const auto a = static_cast<std::uint32_t>(std::llabs(responses[d][i]));
            // Strictly-greater keeps the smallest direction index on ties.
            if (a > best) {
                best = a;
                best_dir = directions[d];
            }
        }
        field.magnitude[i] = best;
        field.direction[i] = static_cast<std::uint8_t>(best_dir);
        field.nonzero[i] = best > 0 ? 1 : 0;
    }
    return field;
}

SuppressedField non_max_suppress(const GradientField& field) {
    SuppressedField out;
    out.side_exponent = field.side_exponent;
    out.gray_depth = field.gray_depth;
    const std::size_t count = field.magnitude.size();
    out.keep.resize(count);
    out.magnitude.resize(count);
    const unsigned side = field.side();
    for (std::size_t i = 0; i < count; ++i) {
        const long long y = static_cast<long long>(i >> field.side_exponent);
        const long long x = static_cast<long long>(i & (side - 1));
        const auto [dy, dx] = nms_offset(field.direction[i]);
        const std::uint32_t m = field.magnitude[i];
        const bool keep =
            m >= field.magnitude_at(y + dy, x + dx) && m >= field.magnitude_at(y - dy, x - dx);
        out.keep[i] = keep ? 1 : 0;
        out.magnitude[i] = keep ? m : 0;
    }
    return out;
}

EdgeLabelMap double_threshold(const SuppressedField& field, Thresholds t) {
    if (t.high == 0) throw std::invalid_argument("high threshold must be at least 1");
    if (t.low != t.high / 3) throw std::invalid_argument("low threshold must be high / 3");
    EdgeLabelMap out;
    out.side_exponent = field.side_exponent;
    out.labels.resize(field.magnitude.size());
    for (std::size_t i = 0; i < out.labels.size(); ++i) {
        const std::uint32_t gs = field.magnitude[i];
        if (gs > t.high) {
            out.labels[i] = EdgeLabel::Strong;
        } else if (gs >= t.low) {
            out.labels[i] = EdgeLabel::Weak;
        } else {
            out.labels[i] = EdgeLabel::None;
        }
    }
    return out;
}

EdgeMap edge_track(const EdgeLabelMap& labels) {
    EdgeMap out;
    out.side_exponent = labels.side_exponent;
    out.edge.resize(labels.labels.size());
    const unsigned side = labels.side();
    const auto offsets = tracking_offsets();
    for (std::size_t i = 0; i < out.edge.size(); ++i) {
        const long long y = static_cast<long long>(i >> labels.side_exponent);
        const long long x = static_cast<long long>(i & (side - 1));
        bool edge = labels.labels[i] == EdgeLabel::Strong;
        if (!edge && labels.labels[i] == EdgeLabel::Weak) {
            for (const auto& [dy, dx] : offsets) {
                if (labels.at(y + dy, x + dx) == EdgeLabel::Strong) {
                    edge = true;
                    break;
                }
            }
        }
        out.edge[i] = edge ? 1 : 0;
    }
    return out;
}

DetectionTrace classical_pipeline_traced(const PixelGrid& grid, std::uint32_t t_high,
                                         unsigned directions) {
    const auto dirs = direction_subset(directions);
    DetectionTrace trace;
    trace.thresholds = Thresholds::from_high(t_high);
    trace.gradient = oracle::max_gradient(grid, dirs);
    trace.suppressed = oracle::non_max_suppress(trace.gradient);
    trace.labels = oracle::double_threshold(trace.suppressed, trace.thresholds);
    trace.edges = oracle::edge_track(trace.labels);
    return trace;
}

EdgeMap classical_pipeline(const PixelGrid& grid, std::uint32_t t_high, unsigned directions) {
    return classical_pipeline_traced(grid, t_high, directions).edges;
}

std::string Mse::to_string(unsigned decimals) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", static_cast<int>(decimals), value());
    return buf;
}

Mse mse(const PixelGrid& a, const PixelGrid& b) {
    if (a.side_exponent != b.side_exponent || a.values.size() != b.values.size()) {
        throw std::invalid_argument("mse: images must have identical dimensions");
    }
    Mse out;
    out.pixel_count = a.values.size();
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a.values[i]) - b.values[i];
        out.squared_error_sum += static_cast<std::uint64_t>(d * d);
    }
    return out;
}

}  // namespace qsed::oracle
