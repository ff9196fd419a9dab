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

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "qsed/pgm.hpp"
#include "test_util.hpp"

using namespace qsed;

TEST_CASE("ascii pgm parsing") {
    std::istringstream in("P2 2 2 255 0 100 200 255");
    const PixelGrid g = read_pgm(in);
    CHECK(g.side() == 2);
    CHECK(g.at(0, 0) == 0);
    CHECK(g.at(0, 1) == 100);
    CHECK(g.at(1, 0) == 200);
    CHECK(g.at(1, 1) == 255);
}

TEST_CASE("header comments are skipped") {
    std::istringstream in("P2\n# a comment\n2 2\n# another\n255\n1 2 3 4\n");
    const PixelGrid g = read_pgm(in);
    CHECK(g.at(1, 1) == 4);
}

TEST_CASE("binary round trip") {
    std::mt19937 rng(11);
    const PixelGrid g = testutil::random_grid(rng, 3);
    std::stringstream buf;
    write_pgm(g, buf);
    CHECK(read_pgm(buf) == g);
}

TEST_CASE("malformed inputs are rejected") {
    {
        std::istringstream in("P6 2 2 255 ....");
        CHECK_THROWS_AS(read_pgm(in), std::runtime_error);
    }
    {
        std::istringstream in("P2 3 3 255 0 0 0 0 0 0 0 0 0");
        CHECK_THROWS_AS(read_pgm(in), std::runtime_error);  // not a power of two
    }
    {
        std::istringstream in("P2 2 2 65535 0 0 0 0");
        CHECK_THROWS_AS(read_pgm(in), std::runtime_error);  // 16-bit input
    }
    {
        std::istringstream in("P2 2 2 255 0 0 0");
        CHECK_THROWS_AS(read_pgm(in), std::runtime_error);  // missing sample
    }
    {
        std::istringstream in("P5 2 2 255 ");
        CHECK_THROWS_AS(read_pgm(in), std::runtime_error);  // truncated raster
    }
}

TEST_CASE("center crop to a power-of-two square") {
    std::ostringstream body;
    body << "P2 6 4 255";
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 6; ++x) body << ' ' << (10 * y + x);
    }
    {
        std::istringstream in(body.str());
        CHECK_THROWS_AS(read_pgm(in, false), std::runtime_error);
    }
    std::istringstream in(body.str());
    const PixelGrid g = read_pgm(in, true);
    CHECK(g.side() == 4);
    CHECK(g.at(0, 0) == 1);  // one column trimmed from the left
    CHECK(g.at(3, 3) == 34);
}

TEST_CASE("edge maps serialize as 0/255") {
    EdgeMap edges;
    edges.side_exponent = 1;
    edges.edge = {1, 0, 0, 1};
    std::stringstream buf;
    write_pgm(edges, buf);
    const std::string data = buf.str();
    CHECK(data.substr(0, 11) == "P5\n2 2\n255\n");
    CHECK(static_cast<unsigned char>(data[11]) == 255);
    CHECK(static_cast<unsigned char>(data[12]) == 0);
    CHECK(static_cast<unsigned char>(data[13]) == 0);
    CHECK(static_cast<unsigned char>(data[14]) == 255);

    // All-background map writes all zero bytes.
    EdgeMap blank;
    blank.side_exponent = 1;
    blank.edge = {0, 0, 0, 0};
    std::stringstream none;
    write_pgm(blank, none);
    for (int i = 11; i < 15; ++i) CHECK(none.str()[i] == 0);
}

TEST_CASE("pixel values above 8 bits are rejected on write") {
    PixelGrid g = PixelGrid::filled(1, 16, 300);
    std::stringstream buf;
    CHECK_THROWS_AS(write_pgm(g, buf), std::invalid_argument);
}

TEST_CASE("gradient dump is 16-bit big-endian") {
    GradientField f;
    f.side_exponent = 1;
    f.gray_depth = 8;
    f.magnitude = {0, 2550, 258, 65536};  // last one saturates
    f.direction = {0, 0, 0, 0};
    f.nonzero = {0, 1, 1, 1};

    char tmpl[] = "/tmp/qsed_grad_XXXXXX";
    const int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    close(fd);
    write_gradient_pgm(f, tmpl);

    std::ifstream in(tmpl, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    REQUIRE(data.substr(0, 13) == "P5\n2 2\n65535\n");
    auto sample = [&](std::size_t i) {
        return (static_cast<unsigned>(static_cast<unsigned char>(data[13 + 2 * i])) << 8) |
               static_cast<unsigned char>(data[14 + 2 * i]);
    };
    CHECK(sample(0) == 0);
    CHECK(sample(1) == 2550);
    CHECK(sample(2) == 258);
    CHECK(sample(3) == 65535);
    std::remove(tmpl);
}
