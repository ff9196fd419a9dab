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

#include <doctest.h>

#include <random>
#include <set>

#include "qsed/oracle.hpp"
#include "qsed/pipeline.hpp"
#include "test_util.hpp"

using namespace qsed;

namespace {

GradientField random_field(std::mt19937& rng, unsigned n, unsigned q = 8) {
    GradientField f;
    f.side_exponent = n;
    f.gray_depth = q;
    const std::size_t count = std::size_t{1} << (2 * n);
    const std::uint32_t limit = 13u * ((1u << q) - 1);
    f.magnitude.resize(count);
    f.direction.resize(count);
    f.nonzero.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        f.magnitude[i] = rng() % (limit + 1);
        f.direction[i] = static_cast<std::uint8_t>(rng() % kNumDirections);
        f.nonzero[i] = f.magnitude[i] > 0 ? 1 : 0;
    }
    return f;
}

std::size_t count_strong(const EdgeLabelMap& m) {
    std::size_t n = 0;
    for (EdgeLabel label : m.labels) {
        if (label == EdgeLabel::Strong) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("suppression neighbor steps") {
    CHECK(nms_offset(0) == std::pair<int, int>{0, 2});
    CHECK(nms_offset(1) == std::pair<int, int>{1, 2});
    CHECK(nms_offset(2) == std::pair<int, int>{1, 1});
    CHECK(nms_offset(3) == std::pair<int, int>{2, 1});
    CHECK(nms_offset(4) == std::pair<int, int>{2, 0});
    CHECK(nms_offset(5) == std::pair<int, int>{2, -1});
    CHECK(nms_offset(6) == std::pair<int, int>{1, -1});
    CHECK(nms_offset(7) == std::pair<int, int>{1, -2});
    CHECK_THROWS_AS(nms_offset(8), std::invalid_argument);

    const auto offsets = tracking_offsets();
    CHECK(offsets.size() == 24);
    std::set<std::pair<int, int>> unique(offsets.begin(), offsets.end());
    CHECK(unique.size() == 24);
    CHECK(unique.count({0, 0}) == 0);
}

TEST_CASE("threshold pair construction") {
    const Thresholds t = Thresholds::from_high(90);
    CHECK(t.high == 90);
    CHECK(t.low == 30);
    CHECK(Thresholds::from_high(1).low == 0);
    CHECK_THROWS_AS(Thresholds::from_high(0), std::invalid_argument);
}

TEST_CASE("suppression keeps ties and equals the oracle rule") {
    SUBCASE("constant positive field keeps everything") {
        GradientField f;
        f.side_exponent = 2;
        f.gray_depth = 8;
        f.magnitude.assign(16, 500);
        f.direction.assign(16, 3);
        f.nonzero.assign(16, 1);
        const SuppressedField s = non_max_suppress(f);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(s.keep[i] == 1);
            CHECK(s.magnitude[i] == 500);
        }
    }

    SUBCASE("single nonzero pixel is kept") {
        GradientField f;
        f.side_exponent = 3;
        f.gray_depth = 8;
        f.magnitude.assign(64, 0);
        f.direction.assign(64, 0);
        f.nonzero.assign(64, 0);
        f.magnitude[27] = 1000;
        f.direction[27] = 5;
        f.nonzero[27] = 1;
        const SuppressedField s = non_max_suppress(f);
        CHECK(s.keep[27] == 1);
        CHECK(s.magnitude[27] == 1000);
    }

    SUBCASE("random fields match the oracle") {
        std::mt19937 rng(61);
        for (int trial = 0; trial < 5; ++trial) {
            const GradientField f = random_field(rng, 3);
            CHECK(non_max_suppress(f) == oracle::non_max_suppress(f));
        }
    }
}

TEST_CASE("double threshold classification") {
    SuppressedField s;
    s.side_exponent = 1;
    s.gray_depth = 8;
    s.magnitude = {100, 50, 20, 0};
    s.keep = {1, 1, 1, 0};
    const Thresholds t = Thresholds::from_high(90);

    const EdgeLabelMap labels = double_threshold(s, t);
    CHECK(labels.labels[0] == EdgeLabel::Strong);  // 100 > 90
    CHECK(labels.labels[1] == EdgeLabel::Weak);    // 30 <= 50 <= 90
    CHECK(labels.labels[2] == EdgeLabel::None);    // 20 < 30
    CHECK(labels.labels[3] == EdgeLabel::None);

    SUBCASE("boundaries sit on the weak side") {
        s.magnitude = {90, 30, 91, 29};
        const EdgeLabelMap b = double_threshold(s, t);
        CHECK(b.labels[0] == EdgeLabel::Weak);    // exactly high
        CHECK(b.labels[1] == EdgeLabel::Weak);    // exactly low
        CHECK(b.labels[2] == EdgeLabel::Strong);
        CHECK(b.labels[3] == EdgeLabel::None);
    }

    SUBCASE("degenerate and malformed thresholds are rejected") {
        CHECK_THROWS_AS(double_threshold(s, Thresholds{0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(double_threshold(s, Thresholds{90, 31}), std::invalid_argument);
        CHECK_THROWS_AS(double_threshold(s, Thresholds{100000, 33333}), std::invalid_argument);
    }

    SUBCASE("matches oracle over random magnitudes") {
        std::mt19937 rng(73);
        SuppressedField r;
        r.side_exponent = 3;
        r.gray_depth = 8;
        r.magnitude.resize(64);
        r.keep.resize(64);
        for (std::size_t i = 0; i < 64; ++i) {
            r.magnitude[i] = rng() % 3316;
            r.keep[i] = r.magnitude[i] > 0;
        }
        for (const std::uint32_t th : {1u, 30u, 90u, 150u, 3315u}) {
            const Thresholds tt = Thresholds::from_high(th);
            CHECK(double_threshold(r, tt) == oracle::double_threshold(r, tt));
        }
    }
}

TEST_CASE("edge tracking promotes weak pixels near strong ones") {
    EdgeLabelMap m;
    m.side_exponent = 3;
    m.labels.assign(64, EdgeLabel::None);

    // weak at (4,4), strong at (2,3): inside the 5x5 window
    m.labels[4 * 8 + 4] = EdgeLabel::Weak;
    m.labels[2 * 8 + 3] = EdgeLabel::Strong;
    // isolated weak at (7,0): no strong pixel within range (wrapping included)
    m.labels[7 * 8 + 0] = EdgeLabel::Weak;

    const EdgeMap e = edge_track(m);
    CHECK(e.edge[4 * 8 + 4] == 1);
    CHECK(e.edge[2 * 8 + 3] == 1);  // strong pixels are always edges
    CHECK(e.edge[7 * 8 + 0] == 0);
    CHECK(e.edge[0] == 0);

    SUBCASE("all strong maps to all edges") {
        EdgeLabelMap all;
        all.side_exponent = 2;
        all.labels.assign(16, EdgeLabel::Strong);
        const EdgeMap every = edge_track(all);
        for (std::uint8_t b : every.edge) CHECK(b == 1);
    }

    SUBCASE("matches oracle on random labels") {
        std::mt19937 rng(83);
        EdgeLabelMap r;
        r.side_exponent = 3;
        r.labels.resize(64);
        for (auto& label : r.labels) {
            const unsigned v = rng() % 4;
            label = v == 3 ? EdgeLabel::Strong : static_cast<EdgeLabel>(v % 3);
        }
        CHECK(edge_track(r) == oracle::edge_track(r));
    }
}

TEST_CASE("tracking is idempotent on its own output") {
    std::mt19937 rng(89);
    EdgeLabelMap m;
    m.side_exponent = 3;
    m.labels.resize(64);
    for (auto& label : m.labels) label = static_cast<EdgeLabel>(rng() % 3);
    const EdgeMap first = edge_track(m);

    EdgeLabelMap relabeled;
    relabeled.side_exponent = m.side_exponent;
    relabeled.labels.resize(first.edge.size());
    for (std::size_t i = 0; i < first.edge.size(); ++i) {
        relabeled.labels[i] = first.edge[i] ? EdgeLabel::Strong : EdgeLabel::None;
    }
    CHECK(edge_track(relabeled) == first);
}

TEST_CASE("detection on constant images is empty") {
    for (const std::uint16_t v : {0, 128}) {
        const NeqrImage img = NeqrImage::encode(PixelGrid::filled(3, 8, v));
        for (const std::uint32_t th : {1u, 50u}) {
            for (const Mode mode : {Mode::Quantum, Mode::Classical}) {
                const EdgeMap edges = detect_edges(img, th, mode);
                for (std::uint8_t b : edges.edge) CHECK(b == 0);
            }
        }
    }
}

TEST_CASE("quantum and classical traces agree stage by stage") {
    std::mt19937 rng(97);
    for (int trial = 0; trial < 3; ++trial) {
        const PixelGrid g = testutil::random_grid(rng, 3);
        const NeqrImage img = NeqrImage::encode(g);
        for (const unsigned dirs : {2u, 8u}) {
            const DetectionTrace quantum = detect_edges_traced(img, 90, Mode::Quantum, dirs);
            const DetectionTrace classical = detect_edges_traced(img, 90, Mode::Classical, dirs);
            CHECK(quantum.gradient == classical.gradient);
            CHECK(quantum.suppressed == classical.suppressed);
            CHECK(quantum.labels == classical.labels);
            CHECK(quantum.edges == classical.edges);
        }
    }
}

TEST_CASE("raising the high threshold never adds strong pixels") {
    std::mt19937 rng(101);
    const PixelGrid g = testutil::random_grid(rng, 3);
    const NeqrImage img = NeqrImage::encode(g);
    std::size_t prev = SIZE_MAX;
    for (const std::uint32_t th : {10u, 40u, 90u, 200u, 1000u}) {
        const DetectionTrace trace = detect_edges_traced(img, th, Mode::Classical);
        const std::size_t strong = count_strong(trace.labels);
        CHECK(strong <= prev);
        prev = strong;

        // Strong pixels always survive into the final edge map.
        for (std::size_t i = 0; i < trace.labels.labels.size(); ++i) {
            if (trace.labels.labels[i] == EdgeLabel::Strong) CHECK(trace.edges.edge[i] == 1);
        }
    }
}

TEST_CASE("suppressed pixels cannot label when the low threshold is positive") {
    std::mt19937 rng(103);
    const PixelGrid g = testutil::random_grid(rng, 3);
    const DetectionTrace trace =
        detect_edges_traced(NeqrImage::encode(g), 90, Mode::Quantum);
    for (std::size_t i = 0; i < trace.suppressed.keep.size(); ++i) {
        if (!trace.suppressed.keep[i]) {
            CHECK(trace.suppressed.magnitude[i] == 0);
            CHECK(trace.labels.labels[i] == EdgeLabel::None);
        }
    }
}

TEST_CASE("assembled per-pixel program") {
    const GateProgram p = assemble_pixel_program(4, 8, 8);
    const CostReport report = cost(p);

    REQUIRE(report.sub_programs.size() == 5);
    CHECK(report.sub_programs[0].first == "shift_schedule");
    CHECK(report.sub_programs[1].first == "gradient");
    CHECK(report.sub_programs[2].first == "nms");
    CHECK(report.sub_programs[3].first == "threshold");
    CHECK(report.sub_programs[4].first == "tracking");

    std::uint64_t sum = 0;
    for (const auto& [name, subtotal] : report.sub_programs) sum += subtotal;
    CHECK(sum == report.total);
    CHECK(report.total > 0);

    SUBCASE("reversible") {
        std::mt19937 rng(107);
        const GateProgram inv = invert_program(p);
        RegisterFile rf = testutil::random_state(rng, p);
        const RegisterFile original = rf;
        p.apply(rf);
        inv.apply(rf);
        CHECK(rf == original);
    }

    SUBCASE("fewer directions cost less") {
        CHECK(cost(assemble_pixel_program(4, 8, 2)).total < report.total);
    }

    CHECK_THROWS_AS(assemble_pixel_program(0, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(assemble_pixel_program(4, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(assemble_pixel_program(4, 8, 5), std::invalid_argument);
}

TEST_CASE("pixel-program cost growth") {
    auto total = [](unsigned n, unsigned q) {
        return cost(assemble_pixel_program(n, q, 8)).total;
    };

    // Sub-quadratic growth in the side exponent.
    CHECK(static_cast<double>(total(6, 8)) / static_cast<double>(total(3, 8)) <= 4.5);

    // Strictly more gates at every deeper gray depth.
    std::uint64_t prev = 0;
    for (unsigned q = 1; q <= 10; ++q) {
        const std::uint64_t t = total(4, q);
        CHECK(t > prev);
        prev = t;
    }
}
