#include "lineforward/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lineforward/analysis.hpp"
#include "lineforward/engine.hpp"
#include "lineforward/gantt.hpp"
#include "lineforward/generators.hpp"
#include "lineforward/io.hpp"
#include "lineforward/offline.hpp"
#include "lineforward/policies.hpp"

namespace lineforward {

namespace {

std::string fmt(double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << value;
  return s.str();
}

const char* fmt(bool value) { return value ? "true" : "false"; }

// Empty block labels get a placeholder so kv lines keep their field count.
std::string label_or_dash(const std::string& label) {
  return label.empty() ? "-" : label;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ','))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

void print_block_flows(std::ostream& out, const char* key,
                       const std::map<std::string, Time>& flows) {
  for (const auto& [block, flow] : flows)
    out << key << " " << label_or_dash(block) << " " << flow << "\n";
}

struct GenArgs {
  std::string family;
  std::string out_path;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> h;
  bool with_jam = false;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  auto need = [&](const std::optional<std::int64_t>& value, const char* flag) {
    if (!value)
      throw CLI::ValidationError("gen", std::string(flag) + " is required for family " +
                                            args.family);
    return *value;
  };
  auto forbid = [&](bool present, const char* flag) {
    if (present)
      throw CLI::ValidationError("gen", std::string(flag) + " does not apply to family " +
                                            args.family);
  };

  Instance instance;
  std::optional<FamilyPrediction> prediction;
  if (args.family == "prop-k2") {
    forbid(args.k.has_value(), "--k");
    forbid(args.with_jam, "--with-jam");
    instance = gen_prop_k2(need(args.h, "--h"));
  } else if (args.family == "greedy-lb") {
    forbid(args.with_jam, "--with-jam");
    auto [built, predicted] = gen_greedy_family(
        static_cast<RouterIndex>(need(args.k, "--k")), need(args.h, "--h"));
    instance = std::move(built);
    prediction = std::move(predicted);
  } else if (args.family == "warmup-65") {
    forbid(args.k.has_value(), "--k");
    instance = gen_warmup_65(need(args.h, "--h"), args.with_jam);
  } else {
    err << "error: unknown family \"" << args.family
        << "\" (expected prop-k2, greedy-lb or warmup-65)\n";
    return 1;
  }

  save_instance(instance, args.out_path);
  out << "family " << args.family << "\n";
  if (args.k) out << "k " << *args.k << "\n";
  if (args.h) out << "h " << *args.h << "\n";
  if (args.family == "warmup-65") out << "with_jam " << fmt(args.with_jam) << "\n";
  out << "packets " << instance.packets.size() << "\n";
  if (prediction) {
    out << "predicted_greedy " << prediction->greedy_max_flow << "\n";
    out << "predicted_opt " << prediction->opt_max_flow << "\n";
    print_block_flows(out, "predicted_block_greedy", prediction->greedy_block_flow);
    print_block_flows(out, "predicted_block_opt", prediction->opt_block_flow);
  }
  out << "# wrote " << args.out_path << " (" << instance.packets.size()
      << " packets on " << instance.k << " routers)\n";
  return 0;
}

struct RunArgs {
  std::string instance_path;
  std::string policy;
  std::string out_path;
  std::optional<std::int64_t> horizon;
};

int cmd_run(const RunArgs& args, std::ostream& out) {
  Instance instance = load_instance(args.instance_path);
  Policy policy = make_policy(args.policy, instance);
  std::optional<Time> horizon;
  if (args.horizon) horizon = *args.horizon;
  Trace trace = simulate(instance, policy, horizon);
  FlowTimes flows = flow_times(instance, trace);

  out << "policy " << policy.name << "\n";
  out << "packets " << instance.packets.size() << "\n";
  out << "horizon " << trace.horizon << "\n";
  out << "max_flow " << flows.max << "\n";
  print_block_flows(out, "block_flow", block_max_flows(instance, flows));
  out << "# " << policy.name << " forwards " << instance.packets.size()
      << " packets with max flow time " << flows.max << "\n";
  if (!args.out_path.empty()) {
    save_trace(trace, args.out_path);
    out << "# wrote " << args.out_path << "\n";
  }
  return 0;
}

struct OptArgs {
  std::string instance_path;
  std::string mode = "brute";
  std::string prefs;
  std::string out_path;
  std::uint64_t budget = 10'000'000;
};

int cmd_opt(const OptArgs& args, std::ostream& out) {
  Instance instance = load_instance(args.instance_path);
  out << "mode " << args.mode << "\n";

  if (args.mode == "loadlb") {
    if (!args.out_path.empty())
      throw CLI::ValidationError("opt", "--out does not apply to --mode loadlb");
    out << "value " << load_lower_bound(instance) << "\n";
    return 0;
  }

  if (args.mode == "reference") {
    BlockPreference prefs = args.prefs.empty()
                                ? canonical_reference_prefs(instance)
                                : parse_block_preference(args.prefs);
    Trace trace = reference_schedule(instance, prefs);
    FlowTimes flows = flow_times(instance, trace);
    out << "value " << flows.max << "\n";
    print_block_flows(out, "block_flow", block_max_flows(instance, flows));
    if (!args.out_path.empty()) {
      save_trace(trace, args.out_path);
      out << "# wrote " << args.out_path << "\n";
    }
    return 0;
  }

  OptResult result = brute_force_opt(instance, args.budget);
  out << "value " << result.value << "\n";
  out << "exact " << fmt(result.exact) << "\n";
  out << "nodes " << result.nodes_explored << "\n";
  out << "lower_bound " << load_lower_bound(instance) << "\n";
  if (!result.exact)
    out << "# node budget exhausted, value is only a certified upper bound\n";
  if (!args.out_path.empty()) {
    save_trace(result.trace, args.out_path);
    out << "# wrote " << args.out_path << "\n";
  }
  return result.exact ? 0 : 2;
}

struct AdversaryArgs {
  std::string construction;
  std::string target;
  std::string out_path;
  std::optional<std::int64_t> h;
  std::optional<int> stages;
  std::optional<std::int64_t> ell;
};

int cmd_adversary(const AdversaryArgs& args, std::ostream& out) {
  if (args.target.rfind("block:", 0) == 0)
    throw CLI::ValidationError(
        "adversary", "targets must be instance-independent policies");
  Policy policy = make_policy(args.target, Instance{});

  const bool is65 = args.construction == "65" || args.construction == "adv-65";
  const bool is43 = args.construction == "43" || args.construction == "adv-43";
  if (!is65 && !is43)
    throw CLI::ValidationError("adversary",
                               "--construction must be 65 or 43, got \"" +
                                   args.construction + "\"");

  out << "construction " << (is65 ? "65" : "43") << "\n";
  out << "target " << policy.name << "\n";

  if (is65) {
    if (!args.h)
      throw CLI::ValidationError("adversary", "--h is required for --construction 65");
    Adversary65Result result = adversary_65(policy, *args.h);
    out << "h " << *args.h << "\n";
    out << "policy_flow " << result.policy_value << "\n";
    out << "offline_flow " << result.offline_value << "\n";
    out << "ratio " << fmt(result.ratio) << "\n";
    out << "jammed " << fmt(result.jammed) << "\n";
    out << "longs_forwarded_early " << result.longs_forwarded_early << "\n";
    if (!args.out_path.empty()) {
      save_instance(result.instance, args.out_path);
      out << "# wrote " << args.out_path << "\n";
    }
    return 0;
  }

  if (!args.stages || !args.ell)
    throw CLI::ValidationError(
        "adversary", "--stages and --ell are required for --construction 43");
  Adversary43Result result = adversary_43(policy, *args.stages, *args.ell);
  out << "stages " << *args.stages << "\n";
  out << "ell " << *args.ell << "\n";
  out << "k " << result.instance.k << "\n";
  out << "policy_flow " << result.policy_value << "\n";
  out << "offline_flow " << result.offline_value << "\n";
  out << "ratio " << fmt(result.ratio) << "\n";
  out << "early_exit " << fmt(result.early_exit) << "\n";
  for (const StageRecord& record : result.stages)
    out << "stage " << record.stage << " t=" << record.t << " router="
        << record.router << " u=" << record.u << " backlog=" << record.backlog
        << " y=" << record.longs_forwarded_early
        << " slack=" << fmt(record.slack) << "\n";
  if (!args.out_path.empty()) {
    save_instance(result.instance, args.out_path);
    out << "# wrote " << args.out_path << "\n";
  }
  return 0;
}

struct RatioArgs {
  std::string instance_path;
  std::string policies = "greedy,earliest-arrival,furthest-to-go";
  std::string mode = "brute";
  std::uint64_t budget = 10'000'000;
};

int cmd_ratio(const RatioArgs& args, std::ostream& out) {
  Instance instance = load_instance(args.instance_path);

  OptResult certificate;
  if (args.mode == "brute") {
    certificate = brute_force_opt(instance, args.budget);
  } else if (args.mode == "reference") {
    certificate.trace =
        reference_schedule(instance, canonical_reference_prefs(instance));
    certificate.value = flow_times(instance, certificate.trace).max;
    certificate.exact = false;  // achieved, but not proven optimal
  } else {
    certificate.value = load_lower_bound(instance);
    certificate.exact = false;
  }

  std::vector<Policy> policies;
  for (const std::string& name : split_csv(args.policies))
    policies.push_back(make_policy(name, instance));
  if (policies.empty())
    throw CLI::ValidationError("ratio", "--policies must name at least one policy");

  RatioReport report = ratio_report(instance, policies, certificate);
  out << "mode " << args.mode << "\n";
  out << "certificate " << report.certificate_value << "\n";
  out << "certificate_exact " << fmt(report.certificate_exact) << "\n";
  out << "lower_bound " << report.lower_bound << "\n";
  for (const RatioRow& row : report.rows)
    out << "policy " << row.policy << " " << row.max_flow << " "
        << fmt(row.ratio) << "\n";
  for (const RatioRow& row : report.rows)
    out << "# " << row.policy << " pays " << row.max_flow << " against "
        << report.certificate_value << " (" << fmt(row.ratio) << ")\n";
  return args.mode == "brute" && !certificate.exact ? 2 : 0;
}

struct GanttArgs {
  std::string instance_path;
  std::string trace_path;
  std::string trace2_path;
  std::string format = "svg";
  std::string title = "schedule";
  std::string title2 = "alternate";
  std::string out_path;
};

int cmd_gantt(const GanttArgs& args, std::ostream& out) {
  Instance instance = load_instance(args.instance_path);
  Trace trace = load_trace(args.trace_path);

  std::string rendered;
  if (args.format == "text") {
    if (!args.trace2_path.empty())
      throw CLI::ValidationError("gantt", "text format renders a single trace");
    rendered = gantt_text(instance, trace);
  } else if (args.trace2_path.empty()) {
    rendered = gantt_svg(instance, trace, args.title);
  } else {
    Trace second = load_trace(args.trace2_path);
    rendered = gantt_svg_pair(instance, trace, args.title, second, args.title2);
  }

  if (args.out_path.empty()) {
    out << rendered;
  } else {
    std::ofstream file(args.out_path, std::ios::binary | std::ios::trunc);
    if (!file)
      throw std::runtime_error("cannot open " + args.out_path + " for writing");
    file << rendered;
    if (!file.flush())
      throw std::runtime_error("write error on " + args.out_path);
    out << "# wrote " << args.out_path << "\n";
  }
  return 0;
}

struct ValidateArgs {
  std::string instance_path;
  std::string trace_path;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out) {
  Instance instance = load_instance(args.instance_path);
  out << "instance_ok true\n";
  out << "packets " << instance.packets.size() << "\n";
  if (args.trace_path.empty()) return 0;

  Trace trace = load_trace(args.trace_path);
  auto violations = validate_trace(instance, trace);
  out << "violations " << violations.size() << "\n";
  for (const TraceViolation& v : violations) out << "# " << to_string(v) << "\n";
  if (!violations.empty()) return 1;
  out << "zealous " << fmt(is_zealous(instance, trace)) << "\n";
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"online packet forwarding on a line: generators, simulation, "
               "offline bounds, adversaries and schedule charts"};
  app.name("lineforward");
  app.require_subcommand(1);
  // --h is a real option below, so help must not claim the -h short form.
  app.set_help_flag("--help", "print usage");
  auto add_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print usage");
    return cmd;
  };

  GenArgs gen;
  std::int64_t gen_k = 0, gen_h = 0;
  CLI::App* gen_cmd = add_cmd("gen", "generate a named instance family");
  gen_cmd->add_option("family", gen.family, "prop-k2, greedy-lb or warmup-65")
      ->required();
  CLI::Option* gen_k_opt = gen_cmd->add_option("--k", gen_k, "router count");
  CLI::Option* gen_h_opt = gen_cmd->add_option("--h", gen_h, "pressure parameter");
  gen_cmd->add_flag("--with-jam", gen.with_jam, "append the jam block (warmup-65)");
  gen_cmd->add_option("--out", gen.out_path, "instance file to write")->required();

  RunArgs run;
  std::int64_t run_horizon = 0;
  CLI::App* run_cmd = add_cmd("run", "simulate a policy on an instance");
  run_cmd->add_option("--instance", run.instance_path)->required();
  run_cmd->add_option("--policy", run.policy,
                      "greedy, earliest-arrival, furthest-to-go or block:<spec>")
      ->required();
  run_cmd->add_option("--out", run.out_path, "trace file to write");
  CLI::Option* run_horizon_opt =
      run_cmd->add_option("--horizon", run_horizon, "simulation step limit");

  OptArgs opt;
  CLI::App* opt_cmd =
      add_cmd("opt", "offline bounds and schedules for an instance");
  opt_cmd->add_option("--instance", opt.instance_path)->required();
  opt_cmd->add_option("--mode", opt.mode)
      ->check(CLI::IsMember({"brute", "reference", "loadlb"}));
  opt_cmd->add_option("--budget", opt.budget, "brute-force node budget");
  opt_cmd->add_option("--prefs", opt.prefs,
                      "block preference spec such as 1=B1,A1;2=B1,B2");
  opt_cmd->add_option("--out", opt.out_path, "trace file to write");

  AdversaryArgs adv;
  std::int64_t adv_h = 0, adv_ell = 0;
  int adv_stages = 0;
  CLI::App* adv_cmd =
      add_cmd("adversary", "grow an instance against a policy");
  adv_cmd->add_option("--construction", adv.construction, "65 or 43")->required();
  adv_cmd->add_option("--target", adv.target, "policy under attack")->required();
  CLI::Option* adv_h_opt = adv_cmd->add_option("--h", adv_h);
  CLI::Option* adv_stages_opt = adv_cmd->add_option("--stages", adv_stages);
  CLI::Option* adv_ell_opt = adv_cmd->add_option("--ell", adv_ell);
  adv_cmd->add_option("--out", adv.out_path, "instance file to write");

  RatioArgs ratio;
  CLI::App* ratio_cmd =
      add_cmd("ratio", "policy flows against an offline certificate");
  ratio_cmd->add_option("--instance", ratio.instance_path)->required();
  ratio_cmd->add_option("--policies", ratio.policies, "comma-separated names");
  ratio_cmd->add_option("--mode", ratio.mode)
      ->check(CLI::IsMember({"brute", "reference", "loadlb"}));
  ratio_cmd->add_option("--budget", ratio.budget, "brute-force node budget");

  GanttArgs gantt;
  CLI::App* gantt_cmd = add_cmd("gantt", "render a schedule chart");
  gantt_cmd->add_option("--instance", gantt.instance_path)->required();
  gantt_cmd->add_option("--trace", gantt.trace_path)->required();
  gantt_cmd->add_option("--trace2", gantt.trace2_path, "second trace, side by side");
  gantt_cmd->add_option("--format", gantt.format)
      ->check(CLI::IsMember({"svg", "text"}));
  gantt_cmd->add_option("--title", gantt.title);
  gantt_cmd->add_option("--title2", gantt.title2);
  gantt_cmd->add_option("--out", gantt.out_path, "chart file to write");

  ValidateArgs validate;
  CLI::App* validate_cmd =
      add_cmd("validate", "check an instance and optionally a trace");
  validate_cmd->add_option("--instance", validate.instance_path)->required();
  validate_cmd->add_option("--trace", validate.trace_path);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) {
      if (gen_k_opt->count() > 0) gen.k = gen_k;
      if (gen_h_opt->count() > 0) gen.h = gen_h;
      return cmd_gen(gen, out, err);
    }
    if (run_cmd->parsed()) {
      if (run_horizon_opt->count() > 0) run.horizon = run_horizon;
      return cmd_run(run, out);
    }
    if (opt_cmd->parsed()) return cmd_opt(opt, out);
    if (adv_cmd->parsed()) {
      if (adv_h_opt->count() > 0) adv.h = adv_h;
      if (adv_stages_opt->count() > 0) adv.stages = adv_stages;
      if (adv_ell_opt->count() > 0) adv.ell = adv_ell;
      return cmd_adversary(adv, out);
    }
    if (ratio_cmd->parsed()) return cmd_ratio(ratio, out);
    if (gantt_cmd->parsed()) return cmd_gantt(gantt, out);
    if (validate_cmd->parsed()) return cmd_validate(validate, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace lineforward
