// Copyright 2026 The wirelab Authors
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

// Build programs for the virtual wire machine. A program is a header (input,
// kind, plan) plus a topologically ordered list of ADD_WIRE instructions;
// replaying it reproduces the network exactly.
//
// Text form:
//   INPUT 5,2,1,3,4
//   KIND standard
//   PLAN 0
//   ADD_WIRE id=0 len=5 attach=ROOT:0 elem=0
//   ADD_WIRE id=5 len=2 attach=0 elem=1
// Blank lines and lines starting with '#' are ignored.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wirelab/core.hpp"

namespace wirelab::rwm {

struct AddWire {
  WireId id{};
  Value length = 0;
  Attachment attach = RootAttach{0};
  ElementIndex element_index = 0;

  bool operator==(const AddWire&) const = default;
};

struct Program {
  InputMultiset input;
  BuilderKind kind = BuilderKind::standard;
  MeasurementPlan plan;
  std::vector<AddWire> instructions;

  bool operator==(const Program&) const = default;
};

/// One ADD_WIRE per wire, parents before children. Wires keep their
/// construction order unless a child precedes its parent, in which case the
/// missing ancestors are emitted first.
inline Program compile(const WireNetwork& net) {
  require_valid(net);
  Program prog{net.input, net.kind, net.plan, {}};
  prog.instructions.reserve(net.wires.size());

  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < net.wires.size(); ++i) index.emplace(to_underlying(net.wires[i].id), i);
  std::vector<char> emitted(net.wires.size(), 0);
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < net.wires.size(); ++i) {
    std::size_t cur = i;
    while (!emitted[cur]) {
      pending.push_back(cur);
      const auto* parent = std::get_if<WireId>(&net.wires[cur].parent);
      if (parent == nullptr) break;
      cur = index.at(to_underlying(*parent));
    }
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      if (emitted[*it]) continue;
      const Wire& w = net.wires[*it];
      prog.instructions.push_back(AddWire{w.id, w.length, w.parent, w.element_index});
      emitted[*it] = 1;
    }
    pending.clear();
  }
  return prog;
}

/// Replays a program on an empty board.
inline WireNetwork execute(const Program& prog) {
  if (prog.input.empty()) throw Error(ErrorCode::header_mismatch, "program/header mismatch: empty input");
  if (prog.instructions.empty()) {
    throw Error(ErrorCode::header_mismatch,
                "program/header mismatch: no instructions for a nonempty input");
  }

  std::vector<Wire> wires;
  wires.reserve(prog.instructions.size());
  std::unordered_map<std::uint64_t, std::size_t> defined;
  for (std::size_t pc = 0; pc < prog.instructions.size(); ++pc) {
    const AddWire& ins = prog.instructions[pc];
    const std::string where = "instruction " + std::to_string(pc) + ": ";
    if (ins.length == 0) throw Error(ErrorCode::bad_length, where + "bad length 0");
    if (defined.contains(to_underlying(ins.id))) {
      throw Error(ErrorCode::duplicate_id,
                  where + "duplicate id " + std::to_string(to_underlying(ins.id)));
    }
    if (ins.element_index >= prog.input.size() || prog.input[ins.element_index] != ins.length) {
      throw Error(ErrorCode::header_mismatch,
                  where + "program/header mismatch: length does not match element " +
                      std::to_string(ins.element_index));
    }
    Row start = 0;
    if (const auto* root = std::get_if<RootAttach>(&ins.attach)) {
      start = root->row;
    } else {
      auto it = defined.find(to_underlying(std::get<WireId>(ins.attach)));
      if (it == defined.end()) {
        throw Error(ErrorCode::undefined_attachment,
                    where + "undefined attachment " +
                        std::to_string(to_underlying(std::get<WireId>(ins.attach))));
      }
      start = wires[it->second].end_row;
    }
    wires.push_back(Wire{ins.id, ins.element_index, ins.length, start, start + ins.length, ins.attach});
    defined.emplace(to_underlying(ins.id), wires.size() - 1);
  }

  WireNetwork net = make_network(prog.input, prog.kind, std::move(wires));
  if (net.plan != prog.plan) {
    throw Error(ErrorCode::header_mismatch, "program/header mismatch: plan does not match kind");
  }
  require_valid(net);
  return net;
}

inline std::string format_attachment(const Attachment& a) {
  if (const auto* root = std::get_if<RootAttach>(&a)) return "ROOT:" + std::to_string(root->row);
  return std::to_string(to_underlying(std::get<WireId>(a)));
}

inline std::string format_instruction(const AddWire& ins) {
  return "ADD_WIRE id=" + std::to_string(to_underlying(ins.id)) +
         " len=" + std::to_string(ins.length) + " attach=" + format_attachment(ins.attach) +
         " elem=" + std::to_string(ins.element_index);
}

inline std::string to_text(const Program& prog) {
  std::string out = "INPUT ";
  for (std::size_t i = 0; i < prog.input.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(prog.input[i]);
  }
  out += "\nKIND ";
  out += to_string(prog.kind);
  out += "\nPLAN";
  for (Row b : prog.plan.bases) out += ' ' + std::to_string(b);
  out += '\n';
  for (const AddWire& ins : prog.instructions) {
    out += format_instruction(ins);
    out += '\n';
  }
  return out;
}

namespace detail {

template <typename T>
T parse_number(std::string_view text, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": bad number '" +
                                      std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

inline std::string_view field(std::string_view token, std::string_view key, std::size_t line) {
  if (!token.starts_with(key) || token.size() <= key.size() || token[key.size()] != '=') {
    throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": expected " +
                                      std::string(key) + "=..., got '" + std::string(token) + "'");
  }
  return token.substr(key.size() + 1);
}

}  // namespace detail

inline AddWire parse_instruction(std::string_view text, std::size_t line = 1) {
  std::vector<std::string_view> tokens;
  for (auto t : detail::split(text, ' ')) {
    if (!t.empty()) tokens.push_back(t);
  }
  if (tokens.size() != 5 || tokens[0] != "ADD_WIRE") {
    throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": expected ADD_WIRE id= len= attach= elem=");
  }
  AddWire ins;
  ins.id = WireId{detail::parse_number<std::uint64_t>(detail::field(tokens[1], "id", line), line)};
  ins.length = detail::parse_number<Value>(detail::field(tokens[2], "len", line), line);
  const auto attach = detail::field(tokens[3], "attach", line);
  if (attach.starts_with("ROOT:")) {
    ins.attach = RootAttach{detail::parse_number<Row>(attach.substr(5), line)};
  } else {
    ins.attach = WireId{detail::parse_number<std::uint64_t>(attach, line)};
  }
  ins.element_index = detail::parse_number<ElementIndex>(detail::field(tokens[4], "elem", line), line);
  return ins;
}

inline Program parse_program(std::string_view text) {
  Program prog;
  bool have_input = false;
  bool have_kind = false;
  bool have_plan = false;
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("INPUT ")) {
      std::vector<Value> values;
      for (auto v : detail::split(line.substr(6), ',')) {
        values.push_back(detail::parse_number<Value>(v, line_no));
      }
      prog.input = InputMultiset(std::move(values));
      have_input = true;
    } else if (line.starts_with("KIND ")) {
      auto kind = parse_builder_kind(line.substr(5));
      if (!kind) throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": unknown kind");
      prog.kind = *kind;
      have_kind = true;
    } else if (line.starts_with("PLAN")) {
      for (auto b : detail::split(line.substr(4), ' ')) {
        if (!b.empty()) prog.plan.bases.push_back(detail::parse_number<Row>(b, line_no));
      }
      have_plan = true;
    } else {
      prog.instructions.push_back(parse_instruction(line, line_no));
    }
  }
  if (!have_input || !have_kind || !have_plan) {
    throw Error(ErrorCode::parse, "program header needs INPUT, KIND and PLAN lines");
  }
  return prog;
}

}  // namespace wirelab::rwm
