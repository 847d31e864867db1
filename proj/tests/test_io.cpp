#include "lineforward/io.hpp"

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "doctest.h"
#include "lineforward/engine.hpp"
#include "lineforward/generators.hpp"
#include "lineforward/policies.hpp"
#include "support/random_instances.hpp"

using namespace lineforward;
using lineforward::testing::random_instance;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("instance json round-trip is canonical") {
  Instance ins;
  ins.k = 2;
  ins.packets = {{1, 0, 1, 2, "A"}, {2, 3, 2, 1, ""}};

  const std::string text = instance_to_json(ins);
  CHECK(instance_from_json(text) == ins);

  // Canonical form: sorted keys, two-space indent, trailing newline, and no
  // block key for unlabeled packets.
  CHECK(text.back() == '\n');
  CHECK(text.find("\"block\": \"A\"") != std::string::npos);
  CHECK(text.find("\"id\": 2") != std::string::npos);
  const std::string line2 = text.substr(text.find("\"id\": 2"));
  CHECK(line2.find("\"block\"") == std::string::npos);

  // Serializing a reparsed file reproduces it byte for byte.
  CHECK(instance_to_json(instance_from_json(text)) == text);
}

TEST_CASE("instance json round-trips random instances") {
  std::mt19937_64 rng(909);
  for (int round = 0; round < 50; ++round) {
    const Instance ins = random_instance(rng);
    REQUIRE(instance_from_json(instance_to_json(ins)) == ins);
  }
}

TEST_CASE("instance json rejects malformed input") {
  CHECK_THROWS_AS(instance_from_json("not json"), std::runtime_error);
  CHECK_THROWS_AS(instance_from_json("[1,2]"), std::runtime_error);
  CHECK_THROWS_AS(instance_from_json(R"({"packets": []})"), std::runtime_error);
  CHECK_THROWS_AS(instance_from_json(R"({"k": 1})"), std::runtime_error);
  CHECK_THROWS_AS(instance_from_json(R"({"k": "two", "packets": []})"),
                  std::runtime_error);
  CHECK_THROWS_AS(instance_from_json(R"({"k": 1, "packets": [], "note": 1})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      instance_from_json(R"({"k": 1, "packets": [{"id": 1, "release": 0}]})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"k": 1, "packets": [{"id": 1, "release": 0, "origin": 1, "length": 1, "x": 0}]})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"k": 1, "packets": [{"id": 1, "release": 0.5, "origin": 1, "length": 1}]})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"k": 1, "packets": [{"id": 1, "release": 0, "origin": 1, "length": 1, "block": 7}]})"),
      std::runtime_error);
  // id beyond 32 bits
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"k": 1, "packets": [{"id": 4294967296, "release": 0, "origin": 1, "length": 1}]})"),
      std::runtime_error);
  // Structurally fine JSON, but the packet does not fit on the line.
  CHECK_THROWS_AS(
      instance_from_json(
          R"({"k": 1, "packets": [{"id": 1, "release": 0, "origin": 1, "length": 2}]})"),
      std::invalid_argument);
}

TEST_CASE("trace jsonl round-trip") {
  const Instance ins = gen_prop_k2(4);
  const Trace trace = simulate(ins, make_greedy());

  const std::string text = trace_to_jsonl(trace);
  const Trace back = trace_from_jsonl(text);
  CHECK(back == trace);
  CHECK(validate_trace(ins, back).empty());

  CHECK(trace_from_jsonl("") == Trace{});
}

TEST_CASE("trace jsonl enforces record order") {
  Trace unsorted{{{1, 1, 1}, {0, 1, 2}}, 1};
  CHECK_THROWS_AS(trace_to_jsonl(unsorted), std::invalid_argument);

  const std::string out_of_order =
      "{\"packet\":1,\"router\":1,\"t\":1}\n"
      "{\"packet\":2,\"router\":1,\"t\":0}\n";
  CHECK_THROWS_AS(trace_from_jsonl(out_of_order), std::runtime_error);

  const std::string blank_line = "\n{\"packet\":1,\"router\":1,\"t\":0}\n";
  CHECK_THROWS_AS(trace_from_jsonl(blank_line), std::runtime_error);

  const std::string extra_key =
      "{\"packet\":1,\"router\":1,\"t\":0,\"note\":true}\n";
  CHECK_THROWS_AS(trace_from_jsonl(extra_key), std::runtime_error);
}

TEST_CASE("file round-trips and error paths") {
  const Instance ins = gen_warmup_65(2, true);
  const std::string ipath = temp_path("lineforward_io_test_instance.json");
  save_instance(ins, ipath);
  CHECK(load_instance(ipath) == ins);

  const Trace trace = simulate(ins, make_greedy());
  const std::string tpath = temp_path("lineforward_io_test_trace.jsonl");
  save_trace(trace, tpath);
  CHECK(load_trace(tpath) == trace);

  std::remove(ipath.c_str());
  std::remove(tpath.c_str());

  // Errors carry the offending path.
  try {
    load_instance(temp_path("lineforward_io_test_missing.json"));
    FAIL("expected a load error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("lineforward_io_test_missing.json") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(load_trace(temp_path("lineforward_io_test_missing.jsonl")),
                  std::runtime_error);
}
