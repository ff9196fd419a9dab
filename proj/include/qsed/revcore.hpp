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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qsed {

/// Reversible gate set. Every circuit in this project is expressed with
/// these five kinds; all of them are self-inverse, so inverting a program
/// is just reversing its gate order.
enum class GateKind : std::uint8_t { Not, Cnot, Toffoli, Mcx, Swap };

std::string_view gate_kind_name(GateKind kind);

/// Address of one bit inside a register file: register index plus bit
/// position (bit 0 = least significant).
struct BitAddr {
    std::uint16_t reg = 0;
    std::uint16_t bit = 0;

    friend bool operator==(const BitAddr&, const BitAddr&) = default;
};

/// A control line: the addressed bit must equal `positive` for the gate
/// to fire. Negative-polarity controls are allowed in the IR and priced
/// like their positive counterparts.
struct Control {
    BitAddr addr;
    bool positive = true;

    friend bool operator==(const Control&, const Control&) = default;
};

inline Control pos(BitAddr a) { return Control{a, true}; }
inline Control neg(BitAddr a) { return Control{a, false}; }

/// One reversible gate. NOT/CNOT/TOFFOLI/MCX flip `target` when all
/// controls match their polarity (0/1/2/3+ controls respectively);
/// SWAP exchanges `target` and `target2` unconditionally.
struct Gate {
    GateKind kind = GateKind::Not;
    BitAddr target;
    BitAddr target2;  // SWAP only
    std::vector<Control> controls;
};

/// Immutable name/width table shared between a program and the register
/// files it executes on. Sharing makes the compatibility check in
/// apply() a pointer comparison on the hot path.
struct RegisterLayout {
    std::vector<std::string> names;
    std::vector<unsigned> widths;
    std::unordered_map<std::string, std::uint16_t> index;

    bool same_shape(const RegisterLayout& other) const;
};

/// Exact bit-state of all named registers for one execution thread.
/// Widths are fixed at construction; every value stays below 2^width.
class RegisterFile {
public:
    struct Declaration {
        std::string name;
        unsigned width = 0;
        std::uint64_t value = 0;
    };

    explicit RegisterFile(const std::vector<Declaration>& decls);
    explicit RegisterFile(std::shared_ptr<const RegisterLayout> layout);

    std::size_t register_count() const { return values_.size(); }
    const std::string& name(std::size_t i) const { return layout_->names[i]; }
    unsigned width(std::size_t i) const { return layout_->widths[i]; }

    /// Index of a register by name, or -1 when absent.
    int find(std::string_view name) const;

    std::uint64_t get(std::size_t index) const { return values_[index]; }
    std::uint64_t get(std::string_view name) const;
    void set(std::size_t index, std::uint64_t value);
    void set(std::string_view name, std::uint64_t value);

    const RegisterLayout& layout() const { return *layout_; }
    const std::shared_ptr<const RegisterLayout>& layout_ptr() const { return layout_; }

    // Bit-level primitives used by the executor.
    bool test(BitAddr a) const { return (values_[a.reg] >> a.bit) & 1u; }
    void flip(BitAddr a) { values_[a.reg] ^= std::uint64_t{1} << a.bit; }
    void swap_bits(BitAddr a, BitAddr b) {
        const bool va = test(a);
        if (va != test(b)) {
            flip(a);
            flip(b);
        }
    }

    friend bool operator==(const RegisterFile& a, const RegisterFile& b);

private:
    std::shared_ptr<const RegisterLayout> layout_;
    std::vector<std::uint64_t> values_;
};

class GateProgram;

/// Handle to one register of a program under construction; resolves bit
/// indices to addresses with range checking.
class RegisterHandle {
public:
    RegisterHandle() = default;

    BitAddr operator[](unsigned bit) const;
    unsigned width() const { return width_; }
    std::uint16_t index() const { return index_; }

    /// All bits, least significant first.
    std::vector<BitAddr> bits() const;
    /// `count` bits starting at `lo`.
    std::vector<BitAddr> bits(unsigned lo, unsigned count) const;

private:
    friend class GateProgram;
    RegisterHandle(std::uint16_t index, unsigned width) : index_(index), width_(width) {}

    std::uint16_t index_ = 0;
    unsigned width_ = 0;
};

/// Ordered list of reversible gates over named registers, the
/// executable form of every circuit in this repository. Programs are
/// immutable once built and safe to share across threads; execution
/// mutates only the RegisterFile it is given.
class GateProgram {
public:
    struct Section {
        std::string name;
        std::size_t first_gate = 0;
    };

    /// Declares a register; width must be in [1, 64] and the name unused.
    RegisterHandle add_register(std::string name, unsigned width);
    RegisterHandle handle(std::string_view name) const;

    /// Marks the start of a named sub-program for cost breakdowns.
    void begin_section(std::string name);

    // Gate emitters. All addresses are validated against the declared
    // registers; a target may never appear among the controls.
    void x(BitAddr target);
    void cx(Control control, BitAddr target);
    void cx(BitAddr control, BitAddr target) { cx(pos(control), target); }
    void ccx(Control c1, Control c2, BitAddr target);
    void ccx(BitAddr c1, BitAddr c2, BitAddr target) { ccx(pos(c1), pos(c2), target); }
    /// Multi-controlled NOT; dispatches to x/cx/ccx below three controls.
    void mcx(std::vector<Control> controls, BitAddr target);
    void swap(BitAddr a, BitAddr b);
    void append(Gate gate);

    /// Appends another program's gates; register declarations must match.
    void append_program(const GateProgram& other);
    /// Re-emits gates [from, size()) in reverse order, undoing that tail.
    void append_inverted_tail(std::size_t from);
    /// Re-emits gates [from, end) in reverse order.
    void append_inverted_range(std::size_t from, std::size_t end);

    std::size_t size() const { return gates_.size(); }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<Section>& sections() const { return sections_; }

    std::size_t register_count() const { return widths_.size(); }
    const std::string& register_name(std::size_t i) const { return names_[i]; }
    unsigned register_width(std::size_t i) const { return widths_[i]; }

    /// Zero-initialized register file matching this program's declarations.
    RegisterFile make_register_file() const;
    bool matches(const RegisterFile& rf) const;

    /// Executes every gate in order, in place. Throws on register mismatch.
    void apply(RegisterFile& rf) const;

    /// Gates in reverse order (each gate is self-inverse). Sections are
    /// not carried over.
    GateProgram inverted() const;

    /// One gate per line: KIND ctrl-list target ("!" marks a negative
    /// control), preceded by a register declaration line.
    std::string dump() const;

private:
    void validate_gate(const Gate& gate) const;
    void check_addr(BitAddr a) const;

    std::vector<std::string> names_;
    std::vector<unsigned> widths_;
    std::unordered_map<std::string, std::uint16_t> index_;
    std::vector<Gate> gates_;
    std::vector<Section> sections_;
    mutable std::shared_ptr<const RegisterLayout> frozen_layout_;
};

/// Free-function forms of GateProgram::apply / inverted.
RegisterFile run_program(RegisterFile rf, const GateProgram& program);
GateProgram invert_program(const GateProgram& program);

/// Gate-cost accounting. Unit costs: NOT = CNOT = 1, TOFFOLI = 5,
/// SWAP = 3 (three CNOTs), MCX with m >= 3 controls = 10(m+1) - 9.
std::uint64_t unit_cost(GateKind kind, unsigned num_controls);

struct CostReport {
    std::uint64_t not_count = 0;
    std::uint64_t cnot_count = 0;
    std::uint64_t toffoli_count = 0;
    std::uint64_t swap_count = 0;
    std::map<unsigned, std::uint64_t> mcx_counts;  // controls -> count
    std::uint64_t total = 0;
    std::vector<std::pair<std::string, std::uint64_t>> sub_programs;

    std::uint64_t gate_count() const;
};

CostReport cost(const GateProgram& program);
std::string to_json(const CostReport& report);

}  // namespace qsed
