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
#include <span>
#include <string>
#include <vector>

#include "qsed/gradient.hpp"
#include "qsed/pipeline.hpp"
#include "qsed/pixel_grid.hpp"

// Straight-line integer reference for every stage of the detector: the
// independent ground truth the gate-level path is checked against. It
// indexes the source grid directly (wrapped, matching the cyclic shifts)
// and never touches gate programs.
namespace qsed::oracle {

/// Signed mask response per pixel for one direction, 64-bit exact.
std::vector<std::int64_t> classical_gradient(const PixelGrid& grid, unsigned direction);

GradientField max_gradient(const PixelGrid& grid);
GradientField max_gradient(const PixelGrid& grid, std::span<const unsigned> directions);

SuppressedField non_max_suppress(const GradientField& field);
EdgeLabelMap double_threshold(const SuppressedField& field, Thresholds t);
EdgeMap edge_track(const EdgeLabelMap& labels);

DetectionTrace classical_pipeline_traced(const PixelGrid& grid, std::uint32_t t_high,
                                         unsigned directions);
EdgeMap classical_pipeline(const PixelGrid& grid, std::uint32_t t_high, unsigned directions);

/// Mean squared error as an exact rational (sum of squared differences
/// over pixel count) plus a decimal rendering.
struct Mse {
    std::uint64_t squared_error_sum = 0;
    std::uint64_t pixel_count = 0;

    double value() const { return static_cast<double>(squared_error_sum) / static_cast<double>(pixel_count); }
    std::string to_string(unsigned decimals = 2) const;

    friend bool operator==(const Mse&, const Mse&) = default;
};

Mse mse(const PixelGrid& a, const PixelGrid& b);

}  // namespace qsed::oracle
