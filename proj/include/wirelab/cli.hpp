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

// Command-line front end. `run` takes the argument vector and output streams
// so it can be driven in-process by tests; tools/wirelab.cpp is a thin main.
//
// Exit codes: 0 success, 1 usage error, 2 domain error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wirelab/constructors.hpp"
#include "wirelab/core.hpp"
#include "wirelab/io.hpp"
#include "wirelab/measurement.hpp"
#include "wirelab/oracle.hpp"
#include "wirelab/rwm.hpp"

namespace wirelab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_domain = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::usage, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::usage, "cannot write '" + path + "'");
  file << bytes;
}

inline InputMultiset parse_input(const std::string& csv) {
  std::vector<Value> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1 || v > 0xFFFFFFFFLL) throw std::invalid_argument(item);
      values.push_back(static_cast<Value>(v));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::usage, "--input expects comma-separated positive integers, got '" +
                                        item + "'");
    }
  }
  if (values.empty()) throw Error(ErrorCode::usage, "--input is empty");
  return InputMultiset(std::move(values));
}

inline nlohmann::ordered_json result_json(const QueryResult& r, const std::string& model) {
  nlohmann::ordered_json j;
  j["target"] = r.query;
  const bool all = model == "all";
  if (all || model == "decision") j["decision"] = r.decision;
  if ((all || model == "count") && r.exact_count) j["exact_count"] = *r.exact_count;
  if (all) j["row_path_count"] = r.row_path_count;
  if (all || model == "physical") {
    j["currents"] = r.currents;
    j["estimated_count"] = r.estimated_count.value_or(0.0);
  }
  return j;
}

inline void print_result(const nlohmann::ordered_json& j, std::ostream& out) {
  for (const auto& [key, value] : j.items()) out << key << ": " << value.dump() << '\n';
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Build, query and export subset-sum wire networks", "wirelab"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json follow the subcommand
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON on stdout");

  std::string input_csv;
  std::string algorithm = "standard";
  std::string out_path;
  std::string net_path;
  std::string program_path;
  std::string model = "all";
  std::string format;
  Row target = 0;
  Value element = 0;
  std::size_t max_elements = BuildOptions{}.max_elements;
  bool witnesses = false;
  ElectricalConfig cfg;

  auto* build_cmd = app.add_subcommand("build", "Build a network from an input multiset");
  build_cmd->add_option("--input", input_csv, "Comma-separated positive integers")->required();
  build_cmd->add_option("--algorithm", algorithm, "standard | reduced | multiset-opt")
      ->check(CLI::IsMember({"standard", "reduced", "multiset-opt"}));
  build_cmd->add_option("--out", out_path, "Network file (stdout when omitted)");
  build_cmd->add_option("--max-elements", max_elements, "Input size guard");

  auto* query_cmd = app.add_subcommand("query", "Query a network for a target sum");
  query_cmd->add_option("--net", net_path, "Network file")->required();
  query_cmd->add_option("--target", target, "Target sum q >= 1")->required();
  query_cmd->add_option("--model", model, "decision | count | physical | all")
      ->check(CLI::IsMember({"decision", "count", "physical", "all"}));
  query_cmd->add_option("--voltage", cfg.voltage, "Applied voltage (V)")->envname("WIRELAB_VOLTAGE");
  query_cmd->add_option("--unit-resistance", cfg.unit_resistance, "Ohms per unit length")
      ->envname("WIRELAB_RU");
  query_cmd->add_option("--eps", cfg.detection_threshold, "Detection threshold (A)");

  auto* grow_cmd = app.add_subcommand("grow", "Add a new last element to a network");
  grow_cmd->add_option("--net", net_path, "Network file")->required();
  grow_cmd->add_option("--element", element, "New positive element")->required();
  grow_cmd->add_option("--out", out_path, "Output network file (stdout when omitted)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force subset-sum reference");
  oracle_cmd->add_option("--input", input_csv, "Comma-separated positive integers")->required();
  oracle_cmd->add_option("--target", target, "Target sum q >= 1")->required();
  oracle_cmd->add_flag("--witnesses", witnesses, "List the index subsets");

  auto* export_cmd = app.add_subcommand("export", "Render a network as SVG or DOT");
  export_cmd->add_option("--net", net_path, "Network file")->required();
  export_cmd->add_option("--format", format, "svg | dot")->required();
  export_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");

  auto* stats_cmd = app.add_subcommand("stats", "Summarise a network");
  stats_cmd->add_option("--net", net_path, "Network file")->required();

  auto* compile_cmd = app.add_subcommand("compile", "Emit the build program for a network");
  compile_cmd->add_option("--net", net_path, "Network file")->required();
  compile_cmd->add_option("--out", out_path, "Program file (stdout when omitted)");

  auto* run_cmd = app.add_subcommand("run", "Execute a build program into a network");
  run_cmd->add_option("--program", program_path, "Program file")->required();
  run_cmd->add_option("--out", out_path, "Network file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (build_cmd->parsed()) {
      const auto kind = parse_builder_kind(algorithm);
      const auto net = build(*kind, detail::parse_input(input_csv), BuildOptions{max_elements});
      detail::write_output(out_path, io::save(net), out);
    } else if (query_cmd->parsed()) {
      cfg.check();
      const auto net = io::load(detail::read_file(net_path));
      if (target < 1) throw Error(ErrorCode::usage, "--target must be >= 1");
      if (model == "count" && !net.counting_supported) {
        throw Error(ErrorCode::counting_unsupported,
                    "counting unsupported: multiset-opt networks answer decisions only");
      }
      const auto result = query(net, target, cfg);
      const auto j = detail::result_json(result, model);
      if (json) {
        out << j.dump() << '\n';
      } else {
        detail::print_result(j, out);
      }
    } else if (grow_cmd->parsed()) {
      const auto net = io::load(detail::read_file(net_path));
      detail::write_output(out_path, io::save(grow(net, element)), out);
    } else if (oracle_cmd->parsed()) {
      const auto input = detail::parse_input(input_csv);
      if (target < 1) throw Error(ErrorCode::usage, "--target must be >= 1");
      nlohmann::ordered_json j;
      j["target"] = target;
      j["decision"] = oracle::decide_subset_sum(input, target);
      if (input.size() <= oracle::max_enumeration_size) {
        const auto found = oracle::subsets_summing_to(input, target);
        j["count"] = found.size();
        if (witnesses) {
          auto list = nlohmann::ordered_json::array();
          for (const auto& w : found) list.push_back(w.indexes);
          j["witnesses"] = list;
        }
      }
      if (json) {
        out << j.dump() << '\n';
      } else {
        detail::print_result(j, out);
      }
    } else if (export_cmd->parsed()) {
      const auto fmt = io::parse_diagram_format(format);
      if (!fmt) throw Error(ErrorCode::usage, "--format must be svg or dot");
      const auto net = io::load(detail::read_file(net_path));
      detail::write_output(out_path, io::export_diagram(net, *fmt), out);
    } else if (stats_cmd->parsed()) {
      const auto net = io::load(detail::read_file(net_path));
      const auto s = network_stats(net);
      nlohmann::ordered_json j;
      j["kind"] = std::string(to_string(net.kind));
      j["wire_count"] = s.wire_count;
      j["max_row"] = s.max_row;
      j["rows_touched"] = s.rows_touched;
      j["depth"] = s.depth;
      j["plan"] = net.plan.bases;
      if (json) {
        out << j.dump() << '\n';
      } else {
        detail::print_result(j, out);
      }
    } else if (compile_cmd->parsed()) {
      const auto net = io::load(detail::read_file(net_path));
      detail::write_output(out_path, rwm::to_text(rwm::compile(net)), out);
    } else if (run_cmd->parsed()) {
      const auto prog = rwm::parse_program(detail::read_file(program_path));
      detail::write_output(out_path, io::save(rwm::execute(prog)), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::usage ? exit_usage : exit_domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  }
  return exit_ok;
}

}  // namespace wirelab::cli
