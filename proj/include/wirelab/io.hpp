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

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "wirelab/core.hpp"
#include "wirelab/rwm.hpp"

namespace wirelab::io {

inline constexpr int schema_version = 1;

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json attachment_json(const Attachment& a) {
  ordered_json j = ordered_json::object();
  if (const auto* root = std::get_if<RootAttach>(&a)) {
    j["root"] = root->row;
  } else {
    j["wire"] = to_underlying(std::get<WireId>(a));
  }
  return j;
}

inline Attachment attachment_from(const ordered_json& j) {
  if (j.contains("root")) return RootAttach{j.at("root").get<Row>()};
  if (j.contains("wire")) return WireId{j.at("wire").get<std::uint64_t>()};
  throw Error(ErrorCode::parse, "parent must have a 'root' or 'wire' key");
}

}  // namespace detail

/// Network file: a versioned JSON document holding the input, kind, plan and
/// wires, plus the equivalent build program. Wire "slot" values are
/// horizontal render positions and carry no meaning for queries.
inline std::string save(const WireNetwork& net) {
  ordered_json doc;
  doc["schema_version"] = schema_version;
  doc["input"] = std::vector<Value>(net.input.values().begin(), net.input.values().end());
  doc["kind"] = std::string(to_string(net.kind));
  doc["plan"] = net.plan.bases;
  doc["max_row"] = net.max_row;
  doc["counting_supported"] = net.counting_supported;
  ordered_json wires = ordered_json::array();
  for (std::size_t slot = 0; slot < net.wires.size(); ++slot) {
    const Wire& w = net.wires[slot];
    ordered_json jw;
    jw["id"] = to_underlying(w.id);
    jw["element_index"] = w.element_index;
    jw["length"] = w.length;
    jw["start_row"] = w.start_row;
    jw["end_row"] = w.end_row;
    jw["parent"] = detail::attachment_json(w.parent);
    jw["slot"] = slot;
    wires.push_back(std::move(jw));
  }
  doc["wires"] = std::move(wires);
  doc["program"] = rwm::to_text(rwm::compile(net));
  return doc.dump(2) + "\n";
}

inline WireNetwork load(std::string_view bytes) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, "parse error at offset " + std::to_string(e.byte) + ": " + e.what());
  }

  try {
    if (!doc.is_object() || !doc.contains("schema_version")) {
      throw Error(ErrorCode::schema_version, "missing schema_version");
    }
    const int version = doc.at("schema_version").get<int>();
    if (version != schema_version) {
      throw Error(ErrorCode::schema_version,
                  "unknown schema_version " + std::to_string(version) + " (supported: " +
                      std::to_string(schema_version) + ")");
    }
    const auto kind_text = doc.at("kind").get<std::string>();
    const auto kind = parse_builder_kind(kind_text);
    if (!kind) throw Error(ErrorCode::parse, "unknown kind '" + kind_text + "'");

    WireNetwork net;
    net.input = InputMultiset(doc.at("input").get<std::vector<Value>>());
    net.kind = *kind;
    net.plan.bases = doc.at("plan").get<std::vector<Row>>();
    for (const auto& jw : doc.at("wires")) {
      Wire w;
      w.id = WireId{jw.at("id").get<std::uint64_t>()};
      w.element_index = jw.at("element_index").get<ElementIndex>();
      w.length = jw.at("length").get<Value>();
      w.start_row = jw.at("start_row").get<Row>();
      w.end_row = jw.at("end_row").get<Row>();
      w.parent = detail::attachment_from(jw.at("parent"));
      net.wires.push_back(w);
    }
    net.max_row = doc.contains("max_row") ? doc.at("max_row").get<Row>() : compute_max_row(net.wires);
    net.counting_supported = doc.contains("counting_supported")
                                 ? doc.at("counting_supported").get<bool>()
                                 : net.kind != BuilderKind::multiset_optimized;
    require_valid(net);
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed network file: ") + e.what());
  }
}

enum class DiagramFormat { dot, svg };

inline std::optional<DiagramFormat> parse_diagram_format(std::string_view text) {
  if (text == "dot") return DiagramFormat::dot;
  if (text == "svg") return DiagramFormat::svg;
  return std::nullopt;
}

/// Graphviz rendering: one node per board row, one edge per wire.
inline std::string export_dot(const WireNetwork& net) {
  std::ostringstream out;
  out << "graph wire_network {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  std::vector<Row> rows;
  for (const Wire& w : net.wires) {
    rows.push_back(w.start_row);
    rows.push_back(w.end_row);
  }
  rows.insert(rows.end(), net.plan.bases.begin(), net.plan.bases.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (Row r : rows) {
    const bool base = std::find(net.plan.bases.begin(), net.plan.bases.end(), r) != net.plan.bases.end();
    out << "  r" << r << " [label=\"row " << r << "\"" << (base ? ", style=bold" : "") << "];\n";
  }
  for (const Wire& w : net.wires) {
    out << "  r" << w.start_row << " -- r" << w.end_row << " [id=\"w" << to_underlying(w.id)
        << "\", label=\"" << w.length << "\", elem=\"" << w.element_index << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

/// Board drawing: rows are horizontal lines at y = row, wires are vertical
/// segments, one x slot per wire in construction order.
inline std::string export_svg(const WireNetwork& net) {
  constexpr int unit = 20;
  constexpr int margin = 40;
  const std::size_t slots = std::max<std::size_t>(net.wires.size(), 1);
  const auto width = static_cast<std::uint64_t>(2 * margin + unit * slots);
  const std::uint64_t height = 2 * margin + unit * net.max_row;
  auto y_of = [&](Row r) { return margin + unit * (net.max_row - r); };  // row 0 at the bottom

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "  <g class=\"rows\" stroke=\"#999999\" stroke-width=\"1\">\n";
  for (Row r = 0; r <= net.max_row; ++r) {
    out << "    <line class=\"row\" data-row=\"" << r << "\" x1=\"" << margin / 2 << "\" y1=\""
        << y_of(r) << "\" x2=\"" << width - margin / 2 << "\" y2=\"" << y_of(r) << "\"/>\n";
  }
  out << "  </g>\n";
  out << "  <g class=\"wires\" stroke=\"#1f4e9c\" stroke-width=\"3\">\n";
  for (std::size_t slot = 0; slot < net.wires.size(); ++slot) {
    const Wire& w = net.wires[slot];
    const auto x = margin + unit * slot + unit / 2;
    out << "    <line class=\"wire\" data-id=\"" << to_underlying(w.id) << "\" data-length=\""
        << w.length << "\" x1=\"" << x << "\" y1=\"" << y_of(w.start_row) << "\" x2=\"" << x
        << "\" y2=\"" << y_of(w.end_row) << "\"/>\n";
  }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

inline std::string export_diagram(const WireNetwork& net, DiagramFormat format) {
  return format == DiagramFormat::dot ? export_dot(net) : export_svg(net);
}

}  // namespace wirelab::io
