// Copyright 2026 The carshare Authors.
//
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

#include "carshare/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace carshare {

using nlohmann::json;

namespace {

Count read_count(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) {
    throw ModelError(where + ": missing field '" + field + "'");
  }
  const json& v = obj.at(field);
  if (!v.is_number_integer()) {
    throw ModelError(where + ": field '" + field + "' must be an integer");
  }
  const Count c = v.get<Count>();
  if (c < 0) {
    throw ModelError(where + ": field '" + field + "' must be non-negative");
  }
  return c;
}

RequestSeq read_seq(const json& stage, const std::string& where) {
  if (!stage.contains("seq") || !stage.at("seq").is_string()) {
    throw ModelError(where + ": F-model stage needs a string field 'seq'");
  }
  RequestSeq seq;
  for (char c : stage.at("seq").get<std::string>()) {
    if (c == 'L') {
      seq.push_back(Direction::L);
    } else if (c == 'R') {
      seq.push_back(Direction::R);
    } else {
      throw ModelError(where + ": field 'seq' contains '" + std::string(1, c) +
                       "', expected only L or R");
    }
  }
  return seq;
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed instance JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ModelError("instance JSON must be an object");
  }
  if (!doc.contains("k") || !doc.at("k").is_number_integer()) {
    throw ModelError("field 'k' must be an integer");
  }
  const Count k = doc.at("k").get<Count>();
  if (k < 2) {
    throw ModelError("field 'k' must be at least 2");
  }
  std::string model = "S";
  if (doc.contains("model")) {
    if (!doc.at("model").is_string()) {
      throw ModelError("field 'model' must be \"S\" or \"F\"");
    }
    model = doc.at("model").get<std::string>();
  }
  if (model != "S" && model != "F") {
    throw ModelError("field 'model' must be \"S\" or \"F\", got \"" + model + "\"");
  }
  if (!doc.contains("stages") || !doc.at("stages").is_array()) {
    throw ModelError("field 'stages' must be an array");
  }
  const json& stages = doc.at("stages");
  if (stages.empty()) {
    throw ModelError("field 'stages' must not be empty");
  }

  if (model == "S") {
    std::vector<StageDemand> demands;
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const std::string where = "stages[" + std::to_string(i) + "]";
      if (!stages[i].is_object()) throw ModelError(where + " must be an object");
      demands.push_back({read_count(stages[i], "il", where), read_count(stages[i], "ir", where)});
    }
    return Instance::stage_model(k, std::move(demands));
  }
  std::vector<RequestSeq> streams;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string where = "stages[" + std::to_string(i) + "]";
    if (!stages[i].is_object()) throw ModelError(where + " must be an object");
    streams.push_back(read_seq(stages[i], where));
  }
  return Instance::request_model(k, std::move(streams));
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ModelError("cannot open instance file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  // Built by hand to pin the key order.
  std::string out = "{\"k\":" + std::to_string(inst.k()) + ",\"model\":\"" +
                    std::string(1, static_cast<char>(inst.model())) + "\",\"stages\":[";
  for (std::size_t i = 0; i < inst.num_stages(); ++i) {
    if (i > 0) out += ',';
    if (inst.model() == Model::S) {
      out += "{\"il\":" + std::to_string(inst.demand(i).il) +
             ",\"ir\":" + std::to_string(inst.demand(i).ir) + "}";
    } else {
      out += "{\"seq\":\"";
      for (Direction r : inst.streams()[i]) out += static_cast<char>(r);
      out += "\"}";
    }
  }
  out += "]}";
  return out;
}

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : instance_to_json(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace carshare
