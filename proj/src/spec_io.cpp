// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dnc/spec_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace dnc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw SpecError("field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string field_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) fail(field_path(path, key), "expected a string");
  return v.get<std::string>();
}

std::int64_t get_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) fail(field_path(path, key), "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t get_index(const json& obj, const std::string& key, const std::string& path) {
  const std::int64_t v = get_int(obj, key, path);
  if (v < 0) fail(field_path(path, key), "must be nonnegative");
  return static_cast<std::size_t>(v);
}

Rational get_weight(const json& obj, const std::string& key, const std::string& path) {
  const std::string text = get_string(obj, key, path);
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    fail(field_path(path, key), e.what());
  }
}

const json& get_array(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array()) fail(field_path(path, key), "expected an array");
  return v;
}

Alphabet parse_symbols(const json& doc) {
  Alphabet symbols;
  const json& list = get_array(doc, "symbols", "");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "symbols[" + std::to_string(i) + "]";
    Symbol symbol{get_string(list[i], "label", path), get_weight(list[i], "weight", path)};
    if (symbol.weight.value() <= 0) fail(path + ".weight", "must be positive");
    symbols.push_back(std::move(symbol));
  }
  return symbols;
}

BranchSystem parse_fsm(const json& doc) {
  std::map<std::string, Rational> symbol_weights;
  if (doc.contains("symbols")) {
    for (auto& s : parse_symbols(doc)) symbol_weights.emplace(s.label, *s.weight.exact());
  }
  const std::size_t states = get_index(doc, "states", "");
  const std::size_t start = get_index(doc, "start", "");
  const json& list = get_array(doc, "transitions", "");
  std::vector<WeightedFsm::Transition> transitions;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "transitions[" + std::to_string(i) + "]";
    const json& t = list[i];
    std::string label = get_string(t, "label", path);
    Rational weight;
    if (t.is_object() && t.contains("weight")) {
      weight = get_weight(t, "weight", path);
    } else if (auto it = symbol_weights.find(label); it != symbol_weights.end()) {
      weight = it->second;
    } else {
      fail(path + ".weight", "missing and label not listed in symbols");
    }
    if (weight <= 0) fail(path + ".weight", "must be positive");
    transitions.push_back({get_index(t, "from", path), Symbol{std::move(label), weight}, get_index(t, "to", path)});
  }
  return fsm_to_branch_system(WeightedFsm(states, start, std::move(transitions)));
}

BranchSystem parse_builtin(const json& doc) {
  const std::string name = get_string(doc, "name", "");
  if (name == "dyck_prefix") return make_dyck_prefix();
  if (name == "golden_mean") return fsm_to_branch_system(make_golden_mean(), "golden_mean");
  if (name == "rll") {
    const auto d = get_int(doc, "d", "");
    const auto k = get_int(doc, "k", "");
    if (d < 0 || k <= d || k > 1'000'000) fail("k", "rll requires 0 <= d < k");
    return fsm_to_branch_system(make_rll(static_cast<int>(d), static_cast<int>(k)), "rll");
  }
  fail("name", "unknown builtin '" + name + "'");
}

}  // namespace

SystemSpec parse_system_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec document must be a JSON object");
  const std::string kind = get_string(doc, "kind", "");
  if (kind == "memoryless") return {make_memoryless(parse_symbols(doc)), doc};
  if (kind == "fsm") return {parse_fsm(doc), doc};
  if (kind == "builtin") return {parse_builtin(doc), doc};
  fail("kind", "expected memoryless, fsm or builtin, got '" + kind + "'");
}

SystemSpec parse_system_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SpecError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                    e.what());
  }
  return parse_system_spec(doc);
}

SystemSpec load_system_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_spec_text(buf.str());
}

}  // namespace dnc
