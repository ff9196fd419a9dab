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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsed/neqr.hpp"
#include "qsed/oracle.hpp"
#include "qsed/pgm.hpp"
#include "qsed/pipeline.hpp"
#include "qsed/revcore.hpp"

namespace {

struct DetectOptions {
    std::string input;
    std::string output;
    std::uint32_t t_high = 0;
    std::string mode = "classical";
    unsigned directions = 8;
    std::string report_path;
    std::string gradient_dump_path;
    bool crop = false;
};

nlohmann::json cost_json(const qsed::CostReport& report) {
    return nlohmann::json::parse(qsed::to_json(report));
}

int run_detect(const DetectOptions& opt) {
    const qsed::PixelGrid grid = qsed::read_pgm(opt.input, opt.crop);
    const qsed::NeqrImage image = qsed::NeqrImage::encode(grid);
    const qsed::Mode mode =
        opt.mode == "quantum" ? qsed::Mode::Quantum : qsed::Mode::Classical;

    const qsed::DetectionTrace trace =
        qsed::detect_edges_traced(image, opt.t_high, mode, opt.directions);
    qsed::write_pgm(trace.edges, opt.output);

    if (!opt.gradient_dump_path.empty()) {
        qsed::write_gradient_pgm(trace.gradient, opt.gradient_dump_path);
    }

    if (!opt.report_path.empty()) {
        const qsed::GateProgram program =
            qsed::assemble_pixel_program(image.side_exponent(), image.gray_depth(), opt.directions);
        const qsed::CostReport report = qsed::cost(program);

        nlohmann::json j;
        j["n"] = image.side_exponent();
        j["q"] = image.gray_depth();
        j["directions"] = opt.directions;
        j["mode"] = opt.mode;
        j["T_H"] = trace.thresholds.high;
        j["T_L"] = trace.thresholds.low;
        j["pixel_count"] = std::uint64_t{1} << (2 * image.side_exponent());
        nlohmann::json gc = cost_json(report);
        gc["aggregate_total"] = report.total * (std::uint64_t{1} << (2 * image.side_exponent()));
        j["gate_cost"] = gc;

        std::ofstream out(opt.report_path);
        if (!out) throw std::runtime_error("cannot open '" + opt.report_path + "' for writing");
        out << j.dump(2) << '\n';
    }
    return 0;
}

int run_mse(const std::string& path_a, const std::string& path_b) {
    const qsed::PixelGrid a = qsed::read_pgm(path_a);
    const qsed::PixelGrid b = qsed::read_pgm(path_b);
    std::cout << qsed::oracle::mse(a, b).to_string(2) << '\n';
    return 0;
}

int run_gates(unsigned n, unsigned q, unsigned directions) {
    const qsed::GateProgram program = qsed::assemble_pixel_program(n, q, directions);
    const qsed::CostReport report = qsed::cost(program);

    nlohmann::json j;
    j["n"] = n;
    j["q"] = q;
    j["directions"] = directions;
    j["per_pixel"] = cost_json(report);
    j["aggregate_total"] = report.total * (std::uint64_t{1} << (2 * n));
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NEQR eight-direction Sobel edge detection simulator"};
    app.require_subcommand(1);

    DetectOptions detect_opt;
    auto* detect = app.add_subcommand("detect", "Detect edges in a PGM image");
    detect->add_option("--input", detect_opt.input, "input PGM (P2 or P5)")->required();
    detect->add_option("--output", detect_opt.output, "output edge-map PGM")->required();
    detect->add_option("--t-high", detect_opt.t_high, "high threshold (low is high/3)")
        ->required()
        ->check(CLI::PositiveNumber);
    detect->add_option("--mode", detect_opt.mode, "execution mode (default classical)")
        ->check(CLI::IsMember({"quantum", "classical"}));
    detect->add_option("--directions", detect_opt.directions, "mask directions (default 8)")
        ->check(CLI::IsMember({2, 4, 8}));
    detect->add_option("--report", detect_opt.report_path, "write a JSON run/gate-cost report");
    detect->add_option("--dump-gradient", detect_opt.gradient_dump_path,
                       "write gradient magnitudes as 16-bit PGM");
    detect->add_flag("--crop", detect_opt.crop, "center-crop to a power-of-two square");

    std::string mse_a, mse_b;
    auto* mse = app.add_subcommand("mse", "Mean squared error between two PGM images");
    mse->add_option("a", mse_a, "first image")->required();
    mse->add_option("b", mse_b, "second image")->required();

    unsigned gates_n = 0, gates_q = 0, gates_directions = 8;
    auto* gates = app.add_subcommand("gates", "Gate-cost report for the per-pixel program");
    gates->add_option("--n", gates_n, "side exponent (image is 2^n x 2^n)")
        ->required()
        ->check(CLI::Range(2u, 15u));
    gates->add_option("--q", gates_q, "gray bit depth")->required()->check(CLI::Range(1u, 16u));
    gates->add_option("--directions", gates_directions, "mask directions (default 8)")
        ->check(CLI::IsMember({2, 4, 8}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed()) return run_detect(detect_opt);
        if (mse->parsed()) return run_mse(mse_a, mse_b);
        if (gates->parsed()) return run_gates(gates_n, gates_q, gates_directions);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
