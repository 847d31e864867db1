#include "lineforward/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

using lineforward::run_cli;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Per-test scratch directory under the system temp root.
struct ScratchDir {
  fs::path dir;

  explicit ScratchDir(const std::string& name)
      : dir(fs::temp_directory_path() / ("lineforward_cli_" + name)) {
    fs::create_directories(dir);
  }
  ~ScratchDir() {
    std::error_code ignored;
    fs::remove_all(dir, ignored);
  }

  std::string operator/(const std::string& leaf) const {
    return (dir / leaf).string();
  }
};

}  // namespace

TEST_CASE("cli help and usage errors") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(contains(cli({"--help"}).out, "Usage: lineforward"));
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"gen", "--help"}).code == 0);
}

TEST_CASE("cli gen writes instances and reports predictions") {
  ScratchDir scratch("gen");
  const std::string path = scratch / "pk2.json";

  const CliResult r = cli({"gen", "prop-k2", "--h", "4", "--out", path});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "family prop-k2\n"));
  CHECK(contains(r.out, "h 4\n"));
  CHECK(contains(r.out, "packets 16\n"));
  CHECK(contains(r.out, "# wrote " + path + " (16 packets on 2 routers)\n"));
  CHECK(fs::exists(path));

  const CliResult fam = cli(
      {"gen", "greedy-lb", "--k", "2", "--h", "4", "--out", scratch / "f.json"});
  CHECK(fam.code == 0);
  CHECK(contains(fam.out, "predicted_greedy 11\n"));
  CHECK(contains(fam.out, "predicted_opt 9\n"));
  CHECK(contains(fam.out, "predicted_block_greedy A1 4\n"));

  const CliResult warm = cli(
      {"gen", "warmup-65", "--h", "2", "--with-jam", "--out", scratch / "w.json"});
  CHECK(warm.code == 0);
  CHECK(contains(warm.out, "with_jam true\n"));
  CHECK(contains(warm.out, "packets 12\n"));
}

TEST_CASE("cli gen rejects bad parameter combinations") {
  ScratchDir scratch("genbad");
  const std::string path = scratch / "x.json";

  CHECK(cli({"gen", "prop-k2", "--out", path}).code == 1);
  CHECK(cli({"gen", "prop-k2", "--h", "4", "--k", "2", "--out", path}).code == 1);
  CHECK(cli({"gen", "greedy-lb", "--k", "2", "--h", "4"}).code == 1);
  CHECK(cli({"gen", "warmup-65", "--h", "2", "--k", "2", "--out", path}).code == 1);

  const CliResult unknown = cli({"gen", "nosuch", "--h", "4", "--out", path});
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "unknown family"));

  // Parameter errors from the generator itself surface as plain errors.
  const CliResult odd = cli({"gen", "greedy-lb", "--k", "2", "--h", "3",
                             "--out", path});
  CHECK(odd.code == 1);
  CHECK(contains(odd.err, "even"));
}

TEST_CASE("cli run, validate and opt round-trip") {
  ScratchDir scratch("run");
  const std::string ins = scratch / "pk2.json";
  const std::string trace = scratch / "greedy.jsonl";
  REQUIRE(cli({"gen", "prop-k2", "--h", "4", "--out", ins}).code == 0);

  const CliResult run =
      cli({"run", "--instance", ins, "--policy", "greedy", "--out", trace});
  CHECK(run.code == 0);
  CHECK(contains(run.out, "policy greedy\n"));
  CHECK(contains(run.out, "horizon 16\n"));
  CHECK(contains(run.out, "max_flow 10\n"));
  CHECK(contains(run.out, "block_flow A1 4\n"));
  CHECK(contains(run.out, "block_flow B1 7\n"));
  CHECK(contains(run.out, "block_flow B2 10\n"));
  CHECK(fs::exists(trace));

  const CliResult validate =
      cli({"validate", "--instance", ins, "--trace", trace});
  CHECK(validate.code == 0);
  CHECK(contains(validate.out, "instance_ok true\n"));
  CHECK(contains(validate.out, "violations 0\n"));
  CHECK(contains(validate.out, "zealous true\n"));

  // A block-preference policy reproduces the reference outcome.
  const CliResult ref =
      cli({"run", "--instance", ins, "--policy", "block:1=B1,A1"});
  CHECK(ref.code == 0);
  CHECK(contains(ref.out, "policy block-preference\n"));
  CHECK(contains(ref.out, "max_flow 8\n"));

  // Too tight a horizon is a hard error.
  const CliResult tight =
      cli({"run", "--instance", ins, "--policy", "greedy", "--horizon", "3"});
  CHECK(tight.code == 1);
  CHECK(contains(tight.err, "horizon 3 exhausted"));

  const CliResult brute = cli({"opt", "--instance", ins});
  CHECK(brute.code == 0);
  CHECK(contains(brute.out, "mode brute\n"));
  CHECK(contains(brute.out, "value 8\n"));
  CHECK(contains(brute.out, "exact true\n"));
  CHECK(contains(brute.out, "lower_bound 8\n"));

  const CliResult starved =
      cli({"opt", "--instance", ins, "--budget", "1"});
  CHECK(starved.code == 2);
  CHECK(contains(starved.out, "value 10\n"));
  CHECK(contains(starved.out, "exact false\n"));
  CHECK(contains(starved.out, "# node budget exhausted"));

  const CliResult reference =
      cli({"opt", "--instance", ins, "--mode", "reference"});
  CHECK(reference.code == 0);
  CHECK(contains(reference.out, "value 8\n"));

  const CliResult shorts = cli({"opt", "--instance", ins, "--mode", "reference",
                                "--prefs", "1=A1,B1"});
  CHECK(shorts.code == 0);
  CHECK(contains(shorts.out, "value 10\n"));

  const CliResult loadlb = cli({"opt", "--instance", ins, "--mode", "loadlb"});
  CHECK(loadlb.code == 0);
  CHECK(contains(loadlb.out, "value 8\n"));
  CHECK(cli({"opt", "--instance", ins, "--mode", "loadlb", "--out",
             scratch / "t.jsonl"})
            .code == 1);
}

TEST_CASE("cli validate reports violations") {
  ScratchDir scratch("validate");
  const std::string ins = scratch / "pk2.json";
  const std::string trace = scratch / "bad.jsonl";
  REQUIRE(cli({"gen", "prop-k2", "--h", "4", "--out", ins}).code == 0);

  // A single hop for packet 0 only: every other packet is missing hops.
  std::ofstream(trace) << "{\"packet\":0,\"router\":1,\"t\":0}\n";
  const CliResult r = cli({"validate", "--instance", ins, "--trace", trace});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "violations 15\n"));
  CHECK(contains(r.out, "# rule=hop count"));
  CHECK(!contains(r.out, "zealous"));
}

TEST_CASE("cli ratio output") {
  ScratchDir scratch("ratio");
  const std::string ins = scratch / "pk2.json";
  REQUIRE(cli({"gen", "prop-k2", "--h", "4", "--out", ins}).code == 0);

  const CliResult r = cli({"ratio", "--instance", ins});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "mode brute\n"));
  CHECK(contains(r.out, "certificate 8\n"));
  CHECK(contains(r.out, "certificate_exact true\n"));
  CHECK(contains(r.out, "lower_bound 8\n"));
  CHECK(contains(r.out, "policy greedy 10 1.250000\n"));
  CHECK(contains(r.out, "policy earliest-arrival 10 1.250000\n"));
  CHECK(contains(r.out, "policy furthest-to-go 8 1.000000\n"));

  // Against a plain lower bound the certificate is not exact, but that is
  // expected and not an error for this mode.
  const CliResult lb = cli({"ratio", "--instance", ins, "--mode", "loadlb"});
  CHECK(lb.code == 0);
  CHECK(contains(lb.out, "certificate_exact false\n"));

  // An exhausted brute-force budget is flagged through the exit code.
  const CliResult starved =
      cli({"ratio", "--instance", ins, "--budget", "1"});
  CHECK(starved.code == 2);
  CHECK(contains(starved.out, "certificate 10\n"));

  CHECK(cli({"ratio", "--instance", ins, "--policies", ","}).code == 1);
}

TEST_CASE("cli adversary runs") {
  const CliResult warm =
      cli({"adversary", "--construction", "65", "--target", "greedy", "--h",
           "100"});
  CHECK(warm.code == 0);
  CHECK(contains(warm.out, "construction 65\n"));
  CHECK(contains(warm.out, "policy_flow 400\n"));
  CHECK(contains(warm.out, "offline_flow 300\n"));
  CHECK(contains(warm.out, "ratio 1.333333\n"));
  CHECK(contains(warm.out, "jammed true\n"));

  // The spelled-out construction names are accepted too.
  ScratchDir scratch("adversary");
  const std::string out_path = scratch / "staged.json";
  const CliResult staged =
      cli({"adversary", "--construction", "adv-43", "--target",
           "furthest-to-go", "--stages", "2", "--ell", "2", "--out", out_path});
  CHECK(staged.code == 0);
  CHECK(contains(staged.out, "construction 43\n"));
  CHECK(contains(staged.out, "k 8\n"));
  CHECK(contains(staged.out, "policy_flow 18\n"));
  CHECK(contains(staged.out, "offline_flow 13\n"));
  CHECK(contains(staged.out, "early_exit true\n"));
  CHECK(contains(staged.out,
                 "stage 0 t=0 router=1 u=8 backlog=0 y=4 slack=1.333333\n"));
  CHECK(fs::exists(out_path));

  CHECK(cli({"adversary", "--construction", "66", "--target", "greedy", "--h",
             "4"})
            .code == 1);
  CHECK(cli({"adversary", "--construction", "65", "--target", "greedy"}).code ==
        1);
  CHECK(cli({"adversary", "--construction", "43", "--target", "greedy",
             "--stages", "2"})
            .code == 1);
  CHECK(cli({"adversary", "--construction", "65", "--target", "block:1=A",
             "--h", "4"})
            .code == 1);
}

TEST_CASE("cli gantt rendering") {
  ScratchDir scratch("gantt");
  const std::string ins = scratch / "pk2.json";
  const std::string trace = scratch / "greedy.jsonl";
  const std::string second = scratch / "ftg.jsonl";
  REQUIRE(cli({"gen", "prop-k2", "--h", "4", "--out", ins}).code == 0);
  REQUIRE(cli({"run", "--instance", ins, "--policy", "greedy", "--out", trace})
              .code == 0);
  REQUIRE(cli({"run", "--instance", ins, "--policy", "furthest-to-go", "--out",
               second})
              .code == 0);

  const CliResult text =
      cli({"gantt", "--instance", ins, "--trace", trace, "--format", "text"});
  CHECK(text.code == 0);
  CHECK(contains(text.out, "router 1 |AAAABBBB.........|\n"));
  CHECK(contains(text.out, "router 2 |.....BBBBCCCCCCCC|\n"));
  CHECK(contains(text.out, "C = B2\n"));

  const std::string svg_path = scratch / "chart.svg";
  const CliResult svg = cli({"gantt", "--instance", ins, "--trace", trace,
                             "--trace2", second, "--title", "one", "--title2",
                             "two", "--out", svg_path});
  CHECK(svg.code == 0);
  CHECK(contains(svg.out, "# wrote " + svg_path + "\n"));
  std::ifstream in(svg_path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(contains(content.str(), ">one</text>"));
  CHECK(contains(content.str(), ">two</text>"));

  CHECK(cli({"gantt", "--instance", ins, "--trace", trace, "--trace2", second,
             "--format", "text"})
            .code == 1);
  CHECK(cli({"gantt", "--instance", ins, "--trace", trace, "--format", "png"})
            .code == 1);
}
