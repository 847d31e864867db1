#pragma once

#include <string>

#include "lineforward/core.hpp"

namespace lineforward {

// Instance files are JSON objects {"k": ..., "packets": [...]} where each
// packet carries id, release, origin, length and an optional block label.
// Unknown keys are rejected. Serialization is canonical (two-space indent,
// sorted keys, trailing newline, empty block omitted), so load followed by
// save reproduces a canonical file byte for byte.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

// Trace files are JSON lines, one assignment per line as
// {"packet":id,"router":i,"t":step}, strictly ordered by (t, router).
// Idle router steps are not recorded; the horizon is implied by the last
// line (-1 for an empty file).
std::string trace_to_jsonl(const Trace& trace);
Trace trace_from_jsonl(const std::string& text);
void save_trace(const Trace& trace, const std::string& path);
Trace load_trace(const std::string& path);

}  // namespace lineforward
