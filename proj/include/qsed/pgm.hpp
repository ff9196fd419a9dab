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

#include <iosfwd>
#include <string>

#include "qsed/gradient.hpp"
#include "qsed/pipeline.hpp"
#include "qsed/pixel_grid.hpp"

namespace qsed {

/// Reads an 8-bit PGM (ASCII "P2" or binary "P5", maxval <= 255). The
/// image must be square with a power-of-two side; with `center_crop` set,
/// oversized or non-square inputs are cropped to the largest centered
/// power-of-two square instead of rejected.
PixelGrid read_pgm(const std::string& path, bool center_crop = false);
PixelGrid read_pgm(std::istream& in, bool center_crop = false);

/// Writes binary "P5", maxval 255.
void write_pgm(const PixelGrid& grid, const std::string& path);
void write_pgm(const PixelGrid& grid, std::ostream& out);

/// Edge maps are written as 0 (background) / 255 (edge).
void write_pgm(const EdgeMap& edges, const std::string& path);
void write_pgm(const EdgeMap& edges, std::ostream& out);

/// Debug dump of gradient magnitudes as a 16-bit big-endian "P5".
void write_gradient_pgm(const GradientField& field, const std::string& path);

}  // namespace qsed
