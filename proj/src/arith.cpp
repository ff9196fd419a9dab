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

#include "qsed/arith.hpp"

#include <stdexcept>

namespace qsed {

namespace {

void require_width(unsigned width, const char* unit) {
    if (width == 0) throw std::invalid_argument(std::string(unit) + ": width must be positive");
}

}  // namespace

void emit_copy(GateProgram& p, std::span<const BitAddr> src, std::span<const BitAddr> dst) {
    if (src.size() != dst.size()) throw std::invalid_argument("copy: operand widths differ");
    for (std::size_t k = 0; k < src.size(); ++k) p.cx(src[k], dst[k]);
}

void emit_not_all(GateProgram& p, std::span<const BitAddr> bits) {
    for (BitAddr b : bits) p.x(b);
}

void emit_shift_up(GateProgram& p, std::span<const BitAddr> bits) {
    for (std::size_t k = bits.size(); k > 1; --k) p.swap(bits[k - 1], bits[k - 2]);
}

// Carry ripple via majority/unmajority blocks: MAJ computes the running
// carry into a[i] (with the previous carry sitting in a[i-1], seeded by
// the ancilla), UMA unwinds it while depositing sum bits into b.
void emit_add(GateProgram& p, std::span<const BitAddr> a, std::span<const BitAddr> b,
              BitAddr carry, std::optional<BitAddr> carry_out) {
    if (a.size() != b.size()) throw std::invalid_argument("add: operand widths differ");
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("add: width must be positive");

    auto maj = [&](BitAddr c, BitAddr y, BitAddr z) {
        p.cx(z, y);
        p.cx(z, c);
        p.ccx(c, y, z);
    };
    auto uma = [&](BitAddr c, BitAddr y, BitAddr z) {
        p.ccx(c, y, z);
        p.cx(z, c);
        p.cx(c, y);
    };

    maj(carry, b[0], a[0]);
    for (std::size_t i = 1; i < n; ++i) maj(a[i - 1], b[i], a[i]);
    if (carry_out) p.cx(a[n - 1], *carry_out);
    for (std::size_t i = n; i-- > 1;) uma(a[i - 1], b[i], a[i]);
    uma(carry, b[0], a[0]);
}

void emit_increment(GateProgram& p, std::span<const BitAddr> bits,
                    std::span<const Control> extra_controls) {
    for (std::size_t k = bits.size(); k-- > 0;) {
        std::vector<Control> controls(extra_controls.begin(), extra_controls.end());
        for (std::size_t j = 0; j < k; ++j) controls.push_back(pos(bits[j]));
        p.mcx(std::move(controls), bits[k]);
    }
}

void emit_decrement(GateProgram& p, std::span<const BitAddr> bits) {
    for (std::size_t k = 0; k < bits.size(); ++k) {
        std::vector<Control> controls;
        for (std::size_t j = 0; j < k; ++j) controls.push_back(pos(bits[j]));
        p.mcx(std::move(controls), bits[k]);
    }
}

// Scans from the most significant bit: prefix_anc[k] records "all bits
// above position k are equal", and each position injects its verdict
// into the flags through a pair of 3-control gates. At most one pair
// fires per operand assignment, so XORing into the flags is exact.
void emit_comparator(GateProgram& p, std::span<const BitAddr> a, std::span<const BitAddr> b,
                     BitAddr gt, BitAddr lt, std::span<const BitAddr> eq_anc,
                     std::span<const BitAddr> prefix_anc) {
    if (a.size() != b.size()) throw std::invalid_argument("comparator: operand widths differ");
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("comparator: width must be positive");
    if (n >= 2 && (eq_anc.size() < n - 1 || prefix_anc.size() < n - 1)) {
        throw std::invalid_argument("comparator: needs width-1 ancilla bits");
    }

    const std::size_t mark = p.size();
    if (n >= 2) {
        // eq_anc[j-1] <- [a[j] == b[j]] for j = 1..n-1.
        for (std::size_t j = 1; j < n; ++j) {
            p.cx(a[j], eq_anc[j - 1]);
            p.cx(b[j], eq_anc[j - 1]);
            p.x(eq_anc[j - 1]);
        }
        // prefix_anc[k] <- AND of eq_anc above position k.
        p.cx(eq_anc[n - 2], prefix_anc[n - 2]);
        for (std::size_t k = n - 2; k-- > 0;) {
            p.ccx(prefix_anc[k + 1], eq_anc[k], prefix_anc[k]);
        }
    }
    const std::size_t prep_end = p.size();

    p.ccx(pos(a[n - 1]), neg(b[n - 1]), gt);
    p.ccx(neg(a[n - 1]), pos(b[n - 1]), lt);
    for (std::size_t k = n - 1; k-- > 0;) {
        p.mcx({pos(prefix_anc[k]), pos(a[k]), neg(b[k])}, gt);
        p.mcx({pos(prefix_anc[k]), neg(a[k]), pos(b[k])}, lt);
    }

    // Restore the ancillae.
    p.append_inverted_range(mark, prep_end);
}

void emit_abs_diff(GateProgram& p, std::span<const BitAddr> a, std::span<const BitAddr> b,
                   std::span<const BitAddr> d, std::span<const BitAddr> work, BitAddr carry) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("abs_diff: width must be positive");
    if (b.size() != n || d.size() != n) throw std::invalid_argument("abs_diff: operand widths differ");
    if (work.size() < n + 1) throw std::invalid_argument("abs_diff: work needs width+1 bits");

    const BitAddr sign = work[n];
    const std::size_t mark = p.size();

    // work <- complement of b over n+1 bits (the inverted zero above b
    // seeds the sign slot with 1), then ripple a into the low bits with a
    // hot carry and fold the carry-out into the sign slot. That leaves
    // work holding the n+1-bit two's-complement difference a - b, sign
    // bit set exactly when a < b.
    emit_copy(p, b, work.first(n));
    emit_not_all(p, work.first(n + 1));
    p.x(carry);
    emit_add(p, a, work.first(n), carry, sign);
    p.x(carry);

    // Fold the two's-complement sign back to a magnitude: conditional
    // bitwise complement plus a sign-controlled increment.
    for (std::size_t k = 0; k < n; ++k) p.cx(sign, work[k]);
    const Control sign_ctl[] = {pos(sign)};
    emit_increment(p, work.first(n), sign_ctl);

    const std::size_t conv_end = p.size();
    emit_copy(p, work.first(n), d);

    // Uncompute everything except the output copy.
    p.append_inverted_range(mark, conv_end);
}

void emit_cswap(GateProgram& p, Control control, BitAddr a, BitAddr b) {
    p.cx(b, a);
    p.ccx(control, pos(a), b);
    p.cx(b, a);
}

GateProgram comparator_unit(unsigned width) {
    require_width(width, "comparator");
    GateProgram p;
    auto a = p.add_register("a", width);
    auto b = p.add_register("b", width);
    auto c1 = p.add_register("c1", 1);
    auto c0 = p.add_register("c0", 1);
    std::vector<BitAddr> eq, pfx;
    if (width >= 2) {
        eq = p.add_register("eq", width - 1).bits();
        pfx = p.add_register("pfx", width - 1).bits();
    }
    emit_comparator(p, a.bits(), b.bits(), c1[0], c0[0], eq, pfx);
    return p;
}

GateProgram adder_unit(unsigned width) {
    require_width(width, "adder");
    GateProgram p;
    auto a = p.add_register("a", width);
    auto b = p.add_register("b", width + 1);
    auto carry = p.add_register("carry", 1);
    emit_add(p, a.bits(), b.bits(0, width), carry[0], b[width]);
    return p;
}

GateProgram complement_unit(unsigned value_width) {
    require_width(value_width, "complement");
    GateProgram p;
    auto x = p.add_register("x", value_width + 1);
    for (unsigned k = 0; k < value_width; ++k) p.cx(x[value_width], x[k]);
    return p;
}

GateProgram abs_diff_unit(unsigned width) {
    require_width(width, "abs_diff");
    GateProgram p;
    auto a = p.add_register("a", width);
    auto b = p.add_register("b", width);
    auto d = p.add_register("d", width);
    auto work = p.add_register("work", width + 1);
    auto carry = p.add_register("carry", 1);
    emit_abs_diff(p, a.bits(), b.bits(), d.bits(), work.bits(), carry[0]);
    return p;
}

GateProgram double_unit(unsigned width) {
    require_width(width, "double");
    GateProgram p;
    auto x = p.add_register("x", width);
    auto result = p.add_register("result", width + 1);
    for (unsigned k = width; k-- > 0;) p.swap(x[k], result[k + 1]);
    return p;
}

GateProgram copy_unit(unsigned width) {
    require_width(width, "copy");
    GateProgram p;
    auto x = p.add_register("x", width);
    auto anc = p.add_register("anc", width);
    emit_copy(p, x.bits(), anc.bits());
    return p;
}

}  // namespace qsed
