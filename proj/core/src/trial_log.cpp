// Copyright 2026 The Quadbench Authors
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

#include "quadbench/trial_log.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "quadbench/errors.hpp"

namespace quadbench {

using nlohmann::json;

LogParseError::LogParseError(std::size_t line, const std::string& what)
    : Error("trial log line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view task_name(Task task) {
  switch (task) {
    case Task::Sprint: return "sprint";
    case Task::Scramble: return "scramble";
    case Task::Custom: return "custom";
  }
  return "custom";
}

Task parse_task(std::string_view name) {
  if (name == "sprint") return Task::Sprint;
  if (name == "scramble") return Task::Scramble;
  if (name == "custom") return Task::Custom;
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

namespace {

json header_json(const TrialMeta& m) {
  return json{{"type", "header"},
              {"schema_version", kTrialLogSchemaVersion},
              {"tool_version", m.tool_version},
              {"task", std::string(task_name(m.task))},
              {"config_hash", m.config_hash},
              {"seed", m.seed},
              {"controller", m.controller},
              {"dt", m.dt},
              {"body_mass", m.body_mass},
              {"k_t", m.k_t},
              {"gear_ratio", m.gear_ratio},
              {"winding_resistance", m.winding_resistance},
              {"course_length", m.course_length},
              {"finish_x", m.finish_x}};
}

json tick_json(const TickRecord& r) {
  return json{{"type", "tick"},
              {"t", r.t},
              {"pos", r.pos},
              {"quat", r.quat},
              {"vel", r.vel},
              {"omega", r.omega},
              {"q", r.q},
              {"qd", r.qd},
              {"current", r.current},
              {"power", r.power},
              {"contact", r.contact},
              {"contact_force", r.contact_force},
              {"target", r.target}};
}

json outcome_json(const TrialLog& log) {
  json j{{"type", "outcome"},
         {"completed", log.outcome.completed},
         {"t_finish", log.outcome.t_finish},
         {"reason", log.outcome.reason},
         {"sim_energy_j", log.sim_energy_j}};
  j["score"] = log.score ? json(*log.score) : json(nullptr);
  return j;
}

template <typename T>
void read_field(const json& j, const char* key, T& out, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw LogParseError(line, std::string("missing field '") + key + "'");
  try {
    it->get_to(out);
  } catch (const json::exception& e) {
    throw LogParseError(line, std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

void write_jsonl(const TrialLog& log, std::ostream& out) {
  out << header_json(log.meta).dump() << '\n';
  for (const TickRecord& r : log.ticks) out << tick_json(r).dump() << '\n';
  out << outcome_json(log).dump() << '\n';
}

std::string to_jsonl(const TrialLog& log) {
  std::ostringstream os;
  write_jsonl(log, os);
  return os.str();
}

TrialLog read_jsonl(std::istream& in) {
  TrialLog log;
  std::string text;
  std::size_t line = 0;
  bool have_header = false;
  bool have_outcome = false;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    if (have_outcome) throw LogParseError(line, "content after the outcome record");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw LogParseError(line, std::string("invalid JSON (truncated log?): ") + e.what());
    }
    std::string type;
    read_field(j, "type", type, line);
    if (type == "header") {
      if (have_header) throw LogParseError(line, "duplicate header");
      int schema = 0;
      read_field(j, "schema_version", schema, line);
      if (schema != kTrialLogSchemaVersion) {
        throw LogParseError(line, "unsupported schema_version " + std::to_string(schema));
      }
      TrialMeta& m = log.meta;
      std::string task;
      read_field(j, "task", task, line);
      try {
        m.task = parse_task(task);
      } catch (const ConfigError& e) {
        throw LogParseError(line, e.what());
      }
      read_field(j, "tool_version", m.tool_version, line);
      read_field(j, "config_hash", m.config_hash, line);
      read_field(j, "seed", m.seed, line);
      read_field(j, "controller", m.controller, line);
      read_field(j, "dt", m.dt, line);
      read_field(j, "body_mass", m.body_mass, line);
      read_field(j, "k_t", m.k_t, line);
      read_field(j, "gear_ratio", m.gear_ratio, line);
      read_field(j, "winding_resistance", m.winding_resistance, line);
      read_field(j, "course_length", m.course_length, line);
      read_field(j, "finish_x", m.finish_x, line);
      have_header = true;
    } else if (type == "tick") {
      if (!have_header) throw LogParseError(line, "tick before header");
      TickRecord r;
      read_field(j, "t", r.t, line);
      read_field(j, "pos", r.pos, line);
      read_field(j, "quat", r.quat, line);
      read_field(j, "vel", r.vel, line);
      read_field(j, "omega", r.omega, line);
      read_field(j, "q", r.q, line);
      read_field(j, "qd", r.qd, line);
      read_field(j, "current", r.current, line);
      read_field(j, "power", r.power, line);
      read_field(j, "contact", r.contact, line);
      read_field(j, "contact_force", r.contact_force, line);
      read_field(j, "target", r.target, line);
      log.ticks.push_back(r);
    } else if (type == "outcome") {
      if (!have_header) throw LogParseError(line, "outcome before header");
      read_field(j, "completed", log.outcome.completed, line);
      read_field(j, "t_finish", log.outcome.t_finish, line);
      read_field(j, "reason", log.outcome.reason, line);
      read_field(j, "sim_energy_j", log.sim_energy_j, line);
      auto it = j.find("score");
      if (it != j.end() && !it->is_null()) log.score = it->get<double>();
      have_outcome = true;
    } else {
      throw LogParseError(line, "unknown record type '" + type + "'");
    }
  }
  if (!have_header) throw LogParseError(line + 1, "missing header record");
  if (!have_outcome) throw LogParseError(line + 1, "missing outcome record (truncated log)");
  return log;
}

TrialLog parse_jsonl(const std::string& text) {
  std::istringstream is(text);
  return read_jsonl(is);
}

}  // namespace quadbench
