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

#include <optional>
#include <span>
#include <vector>

#include "qsed/revcore.hpp"

namespace qsed {

// ---------------------------------------------------------------------------
// Low-level emitters. These append gates to an existing program over
// caller-chosen bits (least significant first), so larger circuits can
// wire units onto shared registers. Each one is its own inverse-friendly
// building block: every emitted gate is self-inverse.
// ---------------------------------------------------------------------------

/// dst ^= src, bit for bit (CNOT fan; exact copy when dst starts at 0).
void emit_copy(GateProgram& p, std::span<const BitAddr> src, std::span<const BitAddr> dst);

/// Flips every bit.
void emit_not_all(GateProgram& p, std::span<const BitAddr> bits);

/// Swap-chain left shift: bits[k] <- bits[k-1] for k from the top down,
/// bits[0] <- old top bit. Doubles the held value when the top bit is 0.
void emit_shift_up(GateProgram& p, std::span<const BitAddr> bits);

/// Carry-ripple in-place adder: b <- (a + b + carry) mod 2^len, where
/// `carry` is an ancilla whose value is added and restored (so a 1 there
/// yields a + b + 1). `a` is preserved. When `carry_out` is given it
/// receives (XOR) the top carry, extending the sum to len + 1 bits.
void emit_add(GateProgram& p, std::span<const BitAddr> a, std::span<const BitAddr> b,
              BitAddr carry, std::optional<BitAddr> carry_out);

/// +1 mod 2^len as a controlled-NOT cascade, gated on `extra_controls`.
void emit_increment(GateProgram& p, std::span<const BitAddr> bits,
                    std::span<const Control> extra_controls = {});

/// -1 mod 2^len: the increment cascade in reverse gate order.
void emit_decrement(GateProgram& p, std::span<const BitAddr> bits);

/// Magnitude comparison: gt ^= [a > b], lt ^= [a < b]; equal values touch
/// neither flag. `eq_anc` and `prefix_anc` must each provide len-1 zeroed
/// bits (unused for len == 1) and are restored. a and b are preserved.
void emit_comparator(GateProgram& p, std::span<const BitAddr> a, std::span<const BitAddr> b,
                     BitAddr gt, BitAddr lt, std::span<const BitAddr> eq_anc,
                     std::span<const BitAddr> prefix_anc);

/// d ^= |a - b| for unsigned a, b of equal width. `work` provides
/// len + 1 zeroed bits (signed difference scratch) and `carry` one more;
/// both are restored. a and b are preserved.
void emit_abs_diff(GateProgram& p, std::span<const BitAddr> a, std::span<const BitAddr> b,
                   std::span<const BitAddr> d, std::span<const BitAddr> work, BitAddr carry);

/// Controlled swap decomposed as CNOT / TOFFOLI / CNOT.
void emit_cswap(GateProgram& p, Control control, BitAddr a, BitAddr b);

// ---------------------------------------------------------------------------
// Standalone units. Each returns a complete program with its own register
// declarations, matching the integer-level contract stated at the builder.
// ---------------------------------------------------------------------------

/// Registers a:n, b:n, c1:1, c0:1 (+ restored ancillae eq/pfx for n >= 2).
/// With c1 = c0 = 0 on entry: a > b gives (c1,c0) = (1,0), a < b gives
/// (0,1), a = b gives (0,0). a and b are preserved.
GateProgram comparator_unit(unsigned width);

/// Registers a:n, b:n+1, carry:1. b <- a + b (full n+1-bit value, carry
/// kept in b's top bit); a preserved, carry ancilla restored.
GateProgram adder_unit(unsigned width);

/// Register x: value_width + 1 bits, top bit the sign. Sign 1 inverts
/// every value bit, sign 0 leaves them; the sign itself never changes.
GateProgram complement_unit(unsigned value_width);

/// Registers a:q, b:q, d:q, work:q+1, carry:1. d <- |a - b|; a and b
/// preserved, work and carry restored to zero.
GateProgram abs_diff_unit(unsigned width);

/// Registers x:m, result:m+1. With result = 0 on entry the swap chain
/// moves the operand: result <- 2x and x <- 0.
GateProgram double_unit(unsigned width);

/// Registers x:m, anc:m. anc ^= x (exact copy when anc starts at 0;
/// applying it twice restores anc). x preserved.
GateProgram copy_unit(unsigned width);

}  // namespace qsed
