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

#include "qsed/pgm.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsed {

namespace {

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

unsigned exponent_of(unsigned v) {
    unsigned e = 0;
    while ((1u << e) < v) ++e;
    return e;
}

// Skips whitespace and '#' comments, then reads one unsigned value.
unsigned read_header_value(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in.get();
            continue;
        }
        break;
    }
    unsigned value = 0;
    if (!(in >> value)) throw std::runtime_error("malformed PGM header");
    return value;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

PixelGrid read_pgm(const std::string& path, bool center_crop) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_pgm(in, center_crop);
}

PixelGrid read_pgm(std::istream& in, bool center_crop) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
        throw std::runtime_error("not a PGM file (expected P2 or P5)");
    }
    const bool binary = magic[1] == '5';

    const unsigned width = read_header_value(in);
    const unsigned height = read_header_value(in);
    const unsigned maxval = read_header_value(in);
    if (width == 0 || height == 0) throw std::runtime_error("PGM has zero dimension");
    if (maxval == 0 || maxval > 255) {
        throw std::runtime_error("unsupported PGM maxval " + std::to_string(maxval) +
                                 " (only 8-bit images are supported)");
    }

    std::vector<std::uint16_t> raw(static_cast<std::size_t>(width) * height);
    if (binary) {
        in.get();  // single whitespace byte after the header
        std::vector<unsigned char> bytes(raw.size());
        in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
            throw std::runtime_error("truncated PGM pixel data");
        }
        std::copy(bytes.begin(), bytes.end(), raw.begin());
    } else {
        for (auto& v : raw) {
            unsigned value = 0;
            if (!(in >> value)) throw std::runtime_error("truncated PGM pixel data");
            if (value > maxval) throw std::runtime_error("PGM sample exceeds maxval");
            v = static_cast<std::uint16_t>(value);
        }
    }

    unsigned side = width;
    unsigned off_x = 0;
    unsigned off_y = 0;
    if (width != height || !is_power_of_two(width)) {
        if (!center_crop) {
            throw std::runtime_error(
                "image must be square with a power-of-two side (got " + std::to_string(width) +
                "x" + std::to_string(height) + "); pass the crop option to center-crop");
        }
        unsigned target = 1;
        while (target * 2 <= std::min(width, height)) target *= 2;
        side = target;
        off_x = (width - side) / 2;
        off_y = (height - side) / 2;
    }

    PixelGrid grid;
    grid.side_exponent = exponent_of(side);
    grid.gray_depth = 8;
    grid.values.resize(static_cast<std::size_t>(side) * side);
    for (unsigned y = 0; y < side; ++y) {
        for (unsigned x = 0; x < side; ++x) {
            grid.set(y, x, raw[static_cast<std::size_t>(y + off_y) * width + (x + off_x)]);
        }
    }
    return grid;
}

void write_pgm(const PixelGrid& grid, std::ostream& out) {
    const unsigned side = grid.side();
    out << "P5\n" << side << ' ' << side << "\n255\n";
    for (std::uint16_t v : grid.values) {
        if (v > 255) throw std::invalid_argument("pixel value exceeds 8 bits");
        out.put(static_cast<char>(v));
    }
    if (!out) throw std::runtime_error("PGM write failed");
}

void write_pgm(const PixelGrid& grid, const std::string& path) {
    auto out = open_output(path);
    write_pgm(grid, out);
}

void write_pgm(const EdgeMap& edges, std::ostream& out) {
    const unsigned side = edges.side();
    out << "P5\n" << side << ' ' << side << "\n255\n";
    for (std::uint8_t e : edges.edge) out.put(static_cast<char>(e ? 255 : 0));
    if (!out) throw std::runtime_error("PGM write failed");
}

void write_pgm(const EdgeMap& edges, const std::string& path) {
    auto out = open_output(path);
    write_pgm(edges, out);
}

void write_gradient_pgm(const GradientField& field, const std::string& path) {
    auto out = open_output(path);
    const unsigned side = field.side();
    out << "P5\n" << side << ' ' << side << "\n65535\n";
    for (std::uint32_t m : field.magnitude) {
        const std::uint16_t v = static_cast<std::uint16_t>(std::min<std::uint32_t>(m, 65535));
        out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xFF));
    }
    if (!out) throw std::runtime_error("PGM write failed");
}

}  // namespace qsed
