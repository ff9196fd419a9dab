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

#include "qsed/revcore.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsed {

namespace {

std::uint64_t width_mask(unsigned width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return "NOT";
        case GateKind::Cnot: return "CNOT";
        case GateKind::Toffoli: return "TOFFOLI";
        case GateKind::Mcx: return "MCX";
        case GateKind::Swap: return "SWAP";
    }
    return "?";
}

bool RegisterLayout::same_shape(const RegisterLayout& other) const {
    return names == other.names && widths == other.widths;
}

RegisterFile::RegisterFile(const std::vector<Declaration>& decls) {
    auto layout = std::make_shared<RegisterLayout>();
    values_.reserve(decls.size());
    for (const auto& d : decls) {
        if (d.width == 0 || d.width > 64) {
            throw std::invalid_argument("register '" + d.name + "': width must be in [1, 64]");
        }
        if (layout->index.count(d.name) != 0) {
            throw std::invalid_argument("duplicate register name '" + d.name + "'");
        }
        if (d.value > width_mask(d.width)) {
            throw std::invalid_argument("register '" + d.name + "': initial value overflows " +
                                        std::to_string(d.width) + " bits");
        }
        layout->index.emplace(d.name, static_cast<std::uint16_t>(layout->names.size()));
        layout->names.push_back(d.name);
        layout->widths.push_back(d.width);
        values_.push_back(d.value);
    }
    layout_ = std::move(layout);
}

RegisterFile::RegisterFile(std::shared_ptr<const RegisterLayout> layout)
    : layout_(std::move(layout)), values_(layout_->names.size(), 0) {}

int RegisterFile::find(std::string_view name) const {
    auto it = layout_->index.find(std::string(name));
    return it == layout_->index.end() ? -1 : static_cast<int>(it->second);
}

std::uint64_t RegisterFile::get(std::string_view name) const {
    const int i = find(name);
    if (i < 0) throw std::invalid_argument("no register named '" + std::string(name) + "'");
    return values_[static_cast<std::size_t>(i)];
}

void RegisterFile::set(std::size_t index, std::uint64_t value) {
    if (value > width_mask(layout_->widths[index])) {
        throw std::invalid_argument("value overflows register '" + layout_->names[index] + "'");
    }
    values_[index] = value;
}

void RegisterFile::set(std::string_view name, std::uint64_t value) {
    const int i = find(name);
    if (i < 0) throw std::invalid_argument("no register named '" + std::string(name) + "'");
    set(static_cast<std::size_t>(i), value);
}

bool operator==(const RegisterFile& a, const RegisterFile& b) {
    if (a.layout_ != b.layout_ && !a.layout_->same_shape(*b.layout_)) return false;
    return a.values_ == b.values_;
}

BitAddr RegisterHandle::operator[](unsigned bit) const {
    if (bit >= width_) {
        throw std::invalid_argument("bit index " + std::to_string(bit) + " out of range");
    }
    return BitAddr{index_, static_cast<std::uint16_t>(bit)};
}

std::vector<BitAddr> RegisterHandle::bits() const { return bits(0, width_); }

std::vector<BitAddr> RegisterHandle::bits(unsigned lo, unsigned count) const {
    if (lo + count > width_) throw std::invalid_argument("bit range out of register bounds");
    std::vector<BitAddr> out;
    out.reserve(count);
    for (unsigned k = 0; k < count; ++k) {
        out.push_back(BitAddr{index_, static_cast<std::uint16_t>(lo + k)});
    }
    return out;
}

RegisterHandle GateProgram::add_register(std::string name, unsigned width) {
    if (width == 0 || width > 64) {
        throw std::invalid_argument("register '" + name + "': width must be in [1, 64]");
    }
    if (index_.count(name) != 0) {
        throw std::invalid_argument("duplicate register name '" + name + "'");
    }
    if (names_.size() >= 0xFFFF) throw std::invalid_argument("too many registers");
    const auto idx = static_cast<std::uint16_t>(names_.size());
    index_.emplace(name, idx);
    names_.push_back(std::move(name));
    widths_.push_back(width);
    frozen_layout_.reset();
    return RegisterHandle(idx, width);
}

RegisterHandle GateProgram::handle(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        throw std::invalid_argument("no register named '" + std::string(name) + "'");
    }
    return RegisterHandle(it->second, widths_[it->second]);
}

void GateProgram::begin_section(std::string name) {
    sections_.push_back(Section{std::move(name), gates_.size()});
}

void GateProgram::check_addr(BitAddr a) const {
    if (a.reg >= widths_.size() || a.bit >= widths_[a.reg]) {
        throw std::invalid_argument("gate address does not resolve to a declared register bit");
    }
}

void GateProgram::validate_gate(const Gate& gate) const {
    check_addr(gate.target);
    switch (gate.kind) {
        case GateKind::Not:
            if (!gate.controls.empty()) throw std::invalid_argument("NOT takes no controls");
            break;
        case GateKind::Cnot:
            if (gate.controls.size() != 1) throw std::invalid_argument("CNOT takes one control");
            break;
        case GateKind::Toffoli:
            if (gate.controls.size() != 2) throw std::invalid_argument("TOFFOLI takes two controls");
            break;
        case GateKind::Mcx:
            if (gate.controls.size() < 3) throw std::invalid_argument("MCX takes three or more controls");
            break;
        case GateKind::Swap:
            if (!gate.controls.empty()) throw std::invalid_argument("SWAP takes no controls");
            check_addr(gate.target2);
            if (gate.target == gate.target2) throw std::invalid_argument("SWAP operands must differ");
            return;
    }
    for (std::size_t i = 0; i < gate.controls.size(); ++i) {
        check_addr(gate.controls[i].addr);
        if (gate.controls[i].addr == gate.target) {
            throw std::invalid_argument("gate target appears among its controls");
        }
        for (std::size_t j = i + 1; j < gate.controls.size(); ++j) {
            if (gate.controls[i].addr == gate.controls[j].addr) {
                throw std::invalid_argument("duplicate control bit");
            }
        }
    }
}

void GateProgram::x(BitAddr target) { append(Gate{GateKind::Not, target, {}, {}}); }

void GateProgram::cx(Control control, BitAddr target) {
    append(Gate{GateKind::Cnot, target, {}, {control}});
}

void GateProgram::ccx(Control c1, Control c2, BitAddr target) {
    append(Gate{GateKind::Toffoli, target, {}, {c1, c2}});
}

void GateProgram::mcx(std::vector<Control> controls, BitAddr target) {
    switch (controls.size()) {
        case 0: x(target); return;
        case 1: cx(controls[0], target); return;
        case 2: ccx(controls[0], controls[1], target); return;
        default: append(Gate{GateKind::Mcx, target, {}, std::move(controls)});
    }
}

void GateProgram::swap(BitAddr a, BitAddr b) { append(Gate{GateKind::Swap, a, b, {}}); }

void GateProgram::append(Gate gate) {
    validate_gate(gate);
    gates_.push_back(std::move(gate));
}

void GateProgram::append_program(const GateProgram& other) {
    if (names_ != other.names_ || widths_ != other.widths_) {
        throw std::invalid_argument("cannot concatenate programs with different register declarations");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void GateProgram::append_inverted_tail(std::size_t from) {
    append_inverted_range(from, gates_.size());
}

void GateProgram::append_inverted_range(std::size_t from, std::size_t end) {
    if (from > end || end > gates_.size()) throw std::invalid_argument("inverted range out of bounds");
    gates_.reserve(gates_.size() + (end - from));
    for (std::size_t i = end; i > from; --i) {
        gates_.push_back(gates_[i - 1]);
    }
}

RegisterFile GateProgram::make_register_file() const {
    if (!frozen_layout_) {
        auto layout = std::make_shared<RegisterLayout>();
        layout->names = names_;
        layout->widths = widths_;
        layout->index = index_;
        frozen_layout_ = std::move(layout);
    }
    return RegisterFile(frozen_layout_);
}

bool GateProgram::matches(const RegisterFile& rf) const {
    if (frozen_layout_ && rf.layout_ptr() == frozen_layout_) return true;
    return rf.layout().names == names_ && rf.layout().widths == widths_;
}

void GateProgram::apply(RegisterFile& rf) const {
    if (!matches(rf)) {
        throw std::invalid_argument("register file does not match program declarations");
    }
    for (const Gate& g : gates_) {
        if (g.kind == GateKind::Swap) {
            rf.swap_bits(g.target, g.target2);
            continue;
        }
        bool fire = true;
        for (const Control& c : g.controls) {
            if (rf.test(c.addr) != c.positive) {
                fire = false;
                break;
            }
        }
        if (fire) rf.flip(g.target);
    }
}

GateProgram GateProgram::inverted() const {
    GateProgram out;
    out.names_ = names_;
    out.widths_ = widths_;
    out.index_ = index_;
    out.gates_.assign(gates_.rbegin(), gates_.rend());
    return out;
}

std::string GateProgram::dump() const {
    std::ostringstream os;
    os << "registers:";
    for (std::size_t i = 0; i < names_.size(); ++i) {
        os << ' ' << names_[i] << ':' << widths_[i];
    }
    os << '\n';
    auto put_bit = [&](BitAddr a) { os << names_[a.reg] << '[' << a.bit << ']'; };
    for (const Gate& g : gates_) {
        os << gate_kind_name(g.kind);
        for (const Control& c : g.controls) {
            os << ' ';
            if (!c.positive) os << '!';
            put_bit(c.addr);
        }
        os << ' ';
        put_bit(g.target);
        if (g.kind == GateKind::Swap) {
            os << ' ';
            put_bit(g.target2);
        }
        os << '\n';
    }
    return os.str();
}

RegisterFile run_program(RegisterFile rf, const GateProgram& program) {
    program.apply(rf);
    return rf;
}

GateProgram invert_program(const GateProgram& program) { return program.inverted(); }

std::uint64_t unit_cost(GateKind kind, unsigned num_controls) {
    switch (kind) {
        case GateKind::Not: return 1;
        case GateKind::Cnot: return 1;
        case GateKind::Toffoli: return 5;
        case GateKind::Swap: return 3;
        case GateKind::Mcx: return 10ull * (num_controls + 1) - 9;
    }
    return 0;
}

std::uint64_t CostReport::gate_count() const {
    std::uint64_t n = not_count + cnot_count + toffoli_count + swap_count;
    for (const auto& [m, c] : mcx_counts) n += c;
    return n;
}

CostReport cost(const GateProgram& program) {
    CostReport report;
    const auto& gates = program.gates();
    const auto& sections = program.sections();

    std::size_t next_section = 0;
    std::uint64_t section_cost = 0;
    auto close_section = [&]() {
        if (next_section > 0) {
            report.sub_programs.emplace_back(sections[next_section - 1].name, section_cost);
        }
        section_cost = 0;
    };

    for (std::size_t i = 0; i < gates.size(); ++i) {
        while (next_section < sections.size() && sections[next_section].first_gate == i) {
            close_section();
            ++next_section;
        }
        const Gate& g = gates[i];
        const auto c = unit_cost(g.kind, static_cast<unsigned>(g.controls.size()));
        report.total += c;
        section_cost += c;
        switch (g.kind) {
            case GateKind::Not: ++report.not_count; break;
            case GateKind::Cnot: ++report.cnot_count; break;
            case GateKind::Toffoli: ++report.toffoli_count; break;
            case GateKind::Swap: ++report.swap_count; break;
            case GateKind::Mcx: ++report.mcx_counts[static_cast<unsigned>(g.controls.size())]; break;
        }
    }
    while (next_section < sections.size()) {
        close_section();
        ++next_section;
    }
    close_section();
    return report;
}

std::string to_json(const CostReport& report) {
    nlohmann::json counts;
    counts["not"] = report.not_count;
    counts["cnot"] = report.cnot_count;
    counts["toffoli"] = report.toffoli_count;
    counts["swap"] = report.swap_count;
    nlohmann::json mcx = nlohmann::json::object();
    nlohmann::json mcx_costs = nlohmann::json::object();
    for (const auto& [m, c] : report.mcx_counts) {
        mcx[std::to_string(m)] = c;
        mcx_costs[std::to_string(m)] = unit_cost(GateKind::Mcx, m);
    }
    counts["mcx"] = mcx;

    nlohmann::json unit_costs;
    unit_costs["not"] = unit_cost(GateKind::Not, 0);
    unit_costs["cnot"] = unit_cost(GateKind::Cnot, 1);
    unit_costs["toffoli"] = unit_cost(GateKind::Toffoli, 2);
    unit_costs["swap"] = unit_cost(GateKind::Swap, 0);
    unit_costs["mcx"] = mcx_costs;

    nlohmann::json subs = nlohmann::json::object();
    for (const auto& [name, total] : report.sub_programs) subs[name] = total;

    nlohmann::json j;
    j["counts"] = counts;
    j["unit_costs"] = unit_costs;
    j["total"] = report.total;
    j["sub_programs"] = subs;
    return j.dump(2);
}

}  // namespace qsed
