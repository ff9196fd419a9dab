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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qsed/arith.hpp"
#include "qsed/gradient.hpp"
#include "qsed/neqr.hpp"
#include "qsed/oracle.hpp"
#include "qsed/pipeline.hpp"
#include "qsed/revcore.hpp"
#include "test_util.hpp"

using namespace qsed;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------
// 1. Arithmetic exhaustiveness
// ---------------------------------------------------------------------
void criterion_arithmetic() {
    const auto start = Clock::now();

    for (unsigned n = 1; n <= 5; ++n) {
        const GateProgram cmp = comparator_unit(n);
        const GateProgram avd = abs_diff_unit(n);
        const GateProgram cpy = copy_unit(n);
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                RegisterFile rc = cmp.make_register_file();
                rc.set("a", a);
                rc.set("b", b);
                cmp.apply(rc);
                require(rc.get("c1") == (a > b ? 1u : 0u), "comparator c1 mismatch");
                require(rc.get("c0") == (a < b ? 1u : 0u), "comparator c0 mismatch");
                require(rc.get("a") == a && rc.get("b") == b, "comparator operands not preserved");
                if (n >= 2) {
                    require(rc.get("eq") == 0 && rc.get("pfx") == 0,
                            "comparator ancillae not restored");
                }

                RegisterFile ra = avd.make_register_file();
                ra.set("a", a);
                ra.set("b", b);
                avd.apply(ra);
                require(ra.get("d") == (a > b ? a - b : b - a), "abs-diff value mismatch");
                require(ra.get("a") == a && ra.get("b") == b, "abs-diff operands not preserved");
                require(ra.get("work") == 0 && ra.get("carry") == 0,
                        "abs-diff ancillae not restored");
            }
            RegisterFile rk = cpy.make_register_file();
            rk.set("x", a);
            cpy.apply(rk);
            require(rk.get("anc") == a && rk.get("x") == a, "copy mismatch");
        }
    }

    for (unsigned m = 1; m <= 6; ++m) {
        const GateProgram dbl = double_unit(m);
        for (std::uint64_t x = 0; x < (1u << m); ++x) {
            RegisterFile rf = dbl.make_register_file();
            rf.set("x", x);
            dbl.apply(rf);
            require(rf.get("result") == 2 * x, "double mismatch");
        }
    }

    for (unsigned n = 1; n <= 4; ++n) {
        const GateProgram add = adder_unit(n);
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << (n + 1)); ++b) {
                RegisterFile rf = add.make_register_file();
                rf.set("a", a);
                rf.set("b", b);
                add.apply(rf);
                require(rf.get("b") == ((a + b) & ((1u << (n + 1)) - 1)), "adder sum mismatch");
                require(rf.get("a") == a, "adder operand not preserved");
                require(rf.get("carry") == 0, "adder ancilla not restored");
            }
        }
    }

    const double elapsed = seconds_since(start);
    require(elapsed < 10.0, "exhaustive sweep took " + std::to_string(elapsed) + "s (limit 10s)");
}

// ---------------------------------------------------------------------
// 2. Reversibility of every emitted program
// ---------------------------------------------------------------------
void criterion_reversibility() {
    std::vector<std::pair<std::string, GateProgram>> programs;
    for (unsigned n = 1; n <= 5; ++n) {
        programs.emplace_back("comparator(" + std::to_string(n) + ")", comparator_unit(n));
        programs.emplace_back("complement(" + std::to_string(n) + ")", complement_unit(n));
        programs.emplace_back("abs_diff(" + std::to_string(n) + ")", abs_diff_unit(n));
        programs.emplace_back("copy(" + std::to_string(n) + ")", copy_unit(n));
    }
    for (unsigned n = 1; n <= 4; ++n) {
        programs.emplace_back("adder(" + std::to_string(n) + ")", adder_unit(n));
    }
    for (unsigned m = 1; m <= 6; ++m) {
        programs.emplace_back("double(" + std::to_string(m) + ")", double_unit(m));
        programs.emplace_back("ct+(" + std::to_string(m) + ")", ct_program(m, +1));
        programs.emplace_back("ct-(" + std::to_string(m) + ")", ct_program(m, -1));
    }
    {
        const auto dirs = direction_subset(8);
        programs.emplace_back("direction_gradient(q=8,k=3)",
                              DirectionGradientCircuit(8, 3).program());
        programs.emplace_back("gradient(q=8)", GradientCircuit(8, dirs).program());
        programs.emplace_back("nms(q=8)", NmsCircuit(8, dirs).program());
        programs.emplace_back("threshold(q=8)", ThresholdCircuit(8).program());
        programs.emplace_back("tracking", TrackingCircuit().program());
        programs.emplace_back("pixel_program(n=4,q=8,d=8)", assemble_pixel_program(4, 8, 8));
        programs.emplace_back("pixel_program(n=3,q=4,d=2)", assemble_pixel_program(3, 4, 2));
    }

    std::mt19937 rng(20260809);
    for (const auto& [name, program] : programs) {
        const GateProgram inverse = invert_program(program);
        for (int trial = 0; trial < 1000; ++trial) {
            RegisterFile rf = testutil::random_state(rng, program);
            const RegisterFile original = rf;
            program.apply(rf);
            inverse.apply(rf);
            if (!(rf == original)) {
                throw Failure("forward-then-inverse drifted for " + name);
            }
        }
    }
}

// ---------------------------------------------------------------------
// 3. Image model fixture and round trips
// ---------------------------------------------------------------------
void criterion_image_model() {
    PixelGrid fixture = PixelGrid::filled(1, 8, 0);
    fixture.set(0, 0, 0);
    fixture.set(0, 1, 100);
    fixture.set(1, 0, 200);
    fixture.set(1, 1, 255);
    const NeqrImage img = NeqrImage::encode(fixture);
    require(img.gray(0, 0) == 0 && img.gray(0, 1) == 100 && img.gray(1, 0) == 200 &&
                img.gray(1, 1) == 255,
            "2x2 fixture gray values wrong");

    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned n = 1 + trial % 6;
        const PixelGrid g = testutil::random_grid(rng, n, 8);
        if (!(NeqrImage::encode(g).decode() == g)) throw Failure("decode round trip failed");
    }
}

// ---------------------------------------------------------------------
// 4. Shift schedule and neighborhood bundle
// ---------------------------------------------------------------------
void criterion_shift_schedule() {
    std::set<std::pair<int, int>> seen;
    int dy = 0, dx = 0;
    for (const ShiftStep& step : shift_schedule()) {
        if (step.axis == Axis::Y) {
            dy -= step.delta;
        } else {
            dx -= step.delta;
        }
        require(dy == step.dy && dx == step.dx, "schedule trace inconsistent with shifts");
        require(!(dy == 0 && dx == 0), "schedule revisits the origin early");
        require(seen.insert({dy, dx}).second, "schedule revisits an offset");
    }
    require(seen.size() == 24, "schedule missed offsets");
    for (const ShiftStep& step : shift_schedule_return()) {
        if (step.axis == Axis::Y) {
            dy -= step.delta;
        } else {
            dx -= step.delta;
        }
    }
    require(dy == 0 && dx == 0, "schedule does not return to the origin");

    std::mt19937 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const unsigned n = 1 + trial % 6;
        const PixelGrid g = testutil::random_grid(rng, n, 8);
        const NeighborhoodBundle bundle = neighborhood_bundle(NeqrImage::encode(g));
        const unsigned side = g.side();
        for (int a = -2; a <= 2; ++a) {
            for (int b = -2; b <= 2; ++b) {
                for (unsigned y = 0; y < side; ++y) {
                    for (unsigned x = 0; x < side; ++x) {
                        if (bundle.at(a, b, y, x) !=
                            g.wrapped(static_cast<long long>(y) + a,
                                      static_cast<long long>(x) + b)) {
                            throw Failure("bundle disagrees with direct wrapped indexing");
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------
// 5. Cross-mode equivalence
// ---------------------------------------------------------------------
void criterion_cross_mode() {
    const auto start = Clock::now();
    std::mt19937 rng(5);
    const std::uint32_t thresholds[] = {30, 90, 150};

    for (int trial = 0; trial < 50; ++trial) {
        const PixelGrid g = testutil::random_grid(rng, 4, 8);
        const NeqrImage img = NeqrImage::encode(g);
        for (std::uint32_t th : thresholds) {
            const EdgeMap quantum = detect_edges(img, th, Mode::Quantum);
            const EdgeMap classical = detect_edges(img, th, Mode::Classical);
            if (!(quantum == classical)) {
                throw Failure("16x16 image #" + std::to_string(trial) + " diverged at T_H=" +
                              std::to_string(th));
            }
        }
    }
    for (int trial = 0; trial < 5; ++trial) {
        const PixelGrid g = testutil::random_grid(rng, 6, 8);
        const NeqrImage img = NeqrImage::encode(g);
        for (std::uint32_t th : thresholds) {
            const EdgeMap quantum = detect_edges(img, th, Mode::Quantum);
            const EdgeMap classical = detect_edges(img, th, Mode::Classical);
            if (!(quantum == classical)) {
                throw Failure("64x64 image #" + std::to_string(trial) + " diverged at T_H=" +
                              std::to_string(th));
            }
        }
    }

    const double elapsed = seconds_since(start);
    require(elapsed < 300.0,
            "cross-mode sweep took " + std::to_string(elapsed) + "s (limit 300s)");
}

// ---------------------------------------------------------------------
// 6. Cost model
// ---------------------------------------------------------------------
void criterion_cost_model() {
    {
        GateProgram p;
        auto r = p.add_register("r", 4);
        p.ccx(r[0], r[1], r[2]);
        require(cost(p).total == 5, "a single Toffoli must cost 5");
    }
    {
        GateProgram p;
        auto r = p.add_register("r", 4);
        p.mcx({pos(r[0]), pos(r[1]), pos(r[2])}, r[3]);
        require(cost(p).total == 31, "a 3-control gate must cost 31");
    }

    auto total = [](unsigned n, unsigned q) { return cost(assemble_pixel_program(n, q, 8)).total; };

    for (unsigned n : {3u, 4u, 5u, 6u}) {
        const double ratio = static_cast<double>(total(2 * n, 8)) / static_cast<double>(total(n, 8));
        require(ratio <= 4.5, "pixel-program cost ratio total(2n)/total(n) = " +
                                  std::to_string(ratio) + " at n=" + std::to_string(n));
    }
    for (unsigned n : {4u, 6u}) {
        for (unsigned q : {4u, 8u}) {
            const double ratio =
                static_cast<double>(total(n, 2 * q)) / static_cast<double>(total(n, q));
            require(ratio <= 4.5, "pixel-program cost ratio total(n,2q)/total(n,q) = " +
                                      std::to_string(ratio) + " at n=" + std::to_string(n) +
                                      ", q=" + std::to_string(q));
        }
    }
}

// ---------------------------------------------------------------------
// 7. Direction count on an oblique line + MSE checks
// ---------------------------------------------------------------------
PixelGrid line_fixture(unsigned intercept) {
    PixelGrid g = PixelGrid::filled(6, 8, 0);
    const double slope = std::tan(22.5 * std::acos(-1.0) / 180.0);
    for (unsigned x = 0; x < g.side(); ++x) {
        const long long y = intercept + std::llround(slope * x);
        if (y >= 0 && y < g.side()) g.set(static_cast<unsigned>(y), x, 255);
    }
    return g;
}

PixelGrid edges_to_grid(const EdgeMap& edges) {
    PixelGrid g = PixelGrid::filled(edges.side_exponent, 8, 0);
    for (std::size_t i = 0; i < edges.edge.size(); ++i) g.values[i] = edges.edge[i] ? 255 : 0;
    return g;
}

void criterion_direction_count() {
    bool strictly_more = false;
    for (unsigned intercept : {0u, 8u, 16u, 24u, 32u}) {
        const PixelGrid g = line_fixture(intercept);
        const NeqrImage img = NeqrImage::encode(g);

        const EdgeMap eight_q = detect_edges(img, 90, Mode::Quantum, 8);
        const EdgeMap eight_c = detect_edges(img, 90, Mode::Classical, 8);
        const EdgeMap two_q = detect_edges(img, 90, Mode::Quantum, 2);
        const EdgeMap two_c = detect_edges(img, 90, Mode::Classical, 2);
        require(oracle::mse(edges_to_grid(eight_q), edges_to_grid(eight_c)).squared_error_sum == 0,
                "mse(quantum, classical) != 0 for the 8-direction run");
        require(oracle::mse(edges_to_grid(two_q), edges_to_grid(two_c)).squared_error_sum == 0,
                "mse(quantum, classical) != 0 for the 2-direction run");

        std::size_t marked8 = 0, marked2 = 0;
        for (std::size_t i = 0; i < g.values.size(); ++i) {
            if (g.values[i] == 0) continue;  // count only true line pixels
            marked8 += eight_c.edge[i];
            marked2 += two_c.edge[i];
        }
        require(marked8 >= marked2, "8-direction run marked fewer line pixels (intercept " +
                                        std::to_string(intercept) + ")");
        if (marked8 > marked2) strictly_more = true;
    }
    require(strictly_more, "8-direction run never marked strictly more line pixels");

    // MSE utility fixture: the 2x2 sample against an all-zero image.
    PixelGrid sample = PixelGrid::filled(1, 8, 0);
    sample.set(0, 1, 100);
    sample.set(1, 0, 200);
    sample.set(1, 1, 255);
    const auto m = oracle::mse(sample, PixelGrid::filled(1, 8, 0));
    require(m.to_string(2) == "28756.25", "mse fixture rendered " + m.to_string(2));
}

// ---------------------------------------------------------------------
// 8. Degenerate images and threshold boundaries
// ---------------------------------------------------------------------
void criterion_boundaries() {
    for (const std::uint16_t v : {0, 7, 255}) {
        const NeqrImage img = NeqrImage::encode(PixelGrid::filled(4, 8, v));
        for (const std::uint32_t th : {1u, 50u}) {
            for (const Mode mode : {Mode::Quantum, Mode::Classical}) {
                const EdgeMap edges = detect_edges(img, th, mode);
                for (std::uint8_t b : edges.edge) {
                    require(b == 0, "constant image produced an edge pixel");
                }
            }
        }
    }

    const Thresholds t = Thresholds::from_high(90);
    SuppressedField s;
    s.side_exponent = 1;
    s.gray_depth = 8;
    s.magnitude = {90, 30, 91, 29};
    s.keep = {1, 1, 1, 1};

    const EdgeLabelMap quantum = double_threshold(s, t);
    const EdgeLabelMap classical = oracle::double_threshold(s, t);
    require(quantum == classical, "threshold boundary labels diverge between modes");
    require(quantum.labels[0] == EdgeLabel::Weak, "magnitude == T_H must label weak");
    require(quantum.labels[1] == EdgeLabel::Weak, "magnitude == T_L must label weak");
    require(quantum.labels[2] == EdgeLabel::Strong, "magnitude > T_H must label strong");
    require(quantum.labels[3] == EdgeLabel::None, "magnitude < T_L must label none");
}

}  // namespace

int main() {
    const std::pair<std::string, std::function<void()>> criteria[] = {
        {"1. arithmetic units match integer oracles exhaustively", criterion_arithmetic},
        {"2. every emitted program is reversible on 1000 random states", criterion_reversibility},
        {"3. image encode fixture and decode round trips", criterion_image_model},
        {"4. shift schedule trace and bundle equal direct indexing", criterion_shift_schedule},
        {"5. quantum and classical modes produce identical edge maps", criterion_cross_mode},
        {"6. gate-cost model values and growth ratios", criterion_cost_model},
        {"7. eight directions mark at least as many oblique line pixels", criterion_direction_count},
        {"8. degenerate images and threshold boundary cases", criterion_boundaries},
    };

    int failures = 0;
    for (const auto& [name, body] : criteria) {
        const auto start = Clock::now();
        try {
            body();
            std::cout << "[PASS] " << name << " (" << seconds_since(start) << "s)\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] " << name << ": " << e.what() << "\n";
        }
    }
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
