#include "lineforward/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace lineforward {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read error on " + path);
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write error on " + path);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known)
      throw std::runtime_error("unknown key \"" + item.key() + "\" in " + where);
  }
}

template <typename T>
T require_integer(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    throw std::runtime_error(std::string("missing \"") + key + "\" in " + where);
  const json& value = obj.at(key);
  if (!value.is_number_integer())
    throw std::runtime_error(std::string("\"") + key + "\" in " + where +
                             " must be an integer");
  const auto raw = value.get<std::int64_t>();
  if (raw < std::numeric_limits<T>::min() || raw > std::numeric_limits<T>::max())
    throw std::runtime_error(std::string("\"") + key + "\" in " + where +
                             " is out of range");
  return static_cast<T>(raw);
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  json packets = json::array();
  for (const Packet& p : instance.packets) {
    json entry = {
        {"id", p.id},
        {"release", p.release},
        {"origin", p.origin},
        {"length", p.length},
    };
    if (!p.block.empty()) entry["block"] = p.block;
    packets.push_back(std::move(entry));
  }
  json root = {{"k", instance.k}, {"packets", std::move(packets)}};
  return root.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw std::runtime_error("instance file must be a JSON object");
  reject_unknown_keys(root, {"k", "packets"}, "instance");

  Instance instance;
  instance.k = require_integer<RouterIndex>(root, "k", "instance");
  if (!root.contains("packets") || !root.at("packets").is_array())
    throw std::runtime_error("instance needs a \"packets\" array");

  std::size_t index = 0;
  for (const json& entry : root.at("packets")) {
    const std::string where = "packet " + std::to_string(index);
    if (!entry.is_object())
      throw std::runtime_error(where + " must be a JSON object");
    reject_unknown_keys(entry, {"id", "release", "origin", "length", "block"},
                        where);
    Packet p;
    p.id = require_integer<PacketId>(entry, "id", where);
    p.release = require_integer<Time>(entry, "release", where);
    p.origin = require_integer<RouterIndex>(entry, "origin", where);
    p.length = require_integer<int>(entry, "length", where);
    if (entry.contains("block")) {
      if (!entry.at("block").is_string())
        throw std::runtime_error("\"block\" in " + where + " must be a string");
      p.block = entry.at("block").get<std::string>();
    }
    instance.packets.push_back(std::move(p));
    ++index;
  }
  check_instance(instance);
  return instance;
}

void save_instance(const Instance& instance, const std::string& path) {
  write_file(path, instance_to_json(instance));
}

Instance load_instance(const std::string& path) {
  try {
    return instance_from_json(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  const Assignment* previous = nullptr;
  for (const Assignment& a : trace.assignments) {
    if (previous && !(std::tie(previous->t, previous->router) <
                      std::tie(a.t, a.router)))
      throw std::invalid_argument("trace records must be sorted by (t, router)");
    previous = &a;
    json line = {{"packet", a.packet}, {"router", a.router}, {"t", a.t}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

Trace trace_from_jsonl(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = "trace line " + std::to_string(number);
    if (line.empty())
      throw std::runtime_error(where + " is blank");
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(where + " is not valid JSON: " + e.what());
    }
    if (!entry.is_object())
      throw std::runtime_error(where + " must be a JSON object");
    reject_unknown_keys(entry, {"packet", "router", "t"}, where);
    Assignment a;
    a.packet = require_integer<PacketId>(entry, "packet", where);
    a.router = require_integer<RouterIndex>(entry, "router", where);
    a.t = require_integer<Time>(entry, "t", where);
    if (!trace.assignments.empty()) {
      const Assignment& prev = trace.assignments.back();
      if (!(std::tie(prev.t, prev.router) < std::tie(a.t, a.router)))
        throw std::runtime_error(where + " is out of (t, router) order");
    }
    trace.assignments.push_back(a);
  }
  trace.horizon = trace.assignments.empty() ? -1 : trace.assignments.back().t;
  return trace;
}

void save_trace(const Trace& trace, const std::string& path) {
  write_file(path, trace_to_jsonl(trace));
}

Trace load_trace(const std::string& path) {
  try {
    return trace_from_jsonl(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace lineforward
