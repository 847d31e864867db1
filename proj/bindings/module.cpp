#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "lineforward/analysis.hpp"
#include "lineforward/core.hpp"
#include "lineforward/engine.hpp"
#include "lineforward/gantt.hpp"
#include "lineforward/generators.hpp"
#include "lineforward/io.hpp"
#include "lineforward/offline.hpp"
#include "lineforward/policies.hpp"

namespace py = pybind11;

namespace {

using namespace lineforward;

using PrefMap = std::map<RouterIndex, std::vector<std::string>>;

std::string packet_repr(const Packet& p) {
  std::ostringstream s;
  s << "Packet(id=" << p.id << ", release=" << p.release << ", origin="
    << p.origin << ", length=" << p.length;
  if (!p.block.empty()) s << ", block='" << p.block << "'";
  s << ")";
  return s.str();
}

std::string assignment_repr(const Assignment& a) {
  std::ostringstream s;
  s << "Assignment(t=" << a.t << ", router=" << a.router << ", packet="
    << a.packet << ")";
  return s.str();
}

}  // namespace

PYBIND11_MODULE(_lineforward, m) {
  m.doc() = "Online packet forwarding on a line network: simulation, offline "
            "bounds, adversaries and analysis.";

  py::class_<Packet>(m, "Packet")
      .def(py::init([](PacketId id, Time release, RouterIndex origin,
                       int length, std::string block) {
             return Packet{id, release, origin, length, std::move(block)};
           }),
           py::arg("id"), py::arg("release"), py::arg("origin"),
           py::arg("length"), py::arg("block") = std::string())
      .def_readwrite("id", &Packet::id)
      .def_readwrite("release", &Packet::release)
      .def_readwrite("origin", &Packet::origin)
      .def_readwrite("length", &Packet::length)
      .def_readwrite("block", &Packet::block)
      .def(py::self == py::self)
      .def("__repr__", &packet_repr);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](RouterIndex k, std::vector<Packet> packets) {
             return Instance{k, std::move(packets)};
           }),
           py::arg("k"), py::arg("packets") = std::vector<Packet>())
      .def_readwrite("k", &Instance::k)
      .def_readwrite("packets", &Instance::packets)
      .def(py::self == py::self)
      .def("__repr__", [](const Instance& i) {
        std::ostringstream s;
        s << "Instance(k=" << i.k << ", " << i.packets.size() << " packets)";
        return s.str();
      });

  py::class_<Assignment>(m, "Assignment")
      .def(py::init([](Time t, RouterIndex router, PacketId packet) {
             return Assignment{t, router, packet};
           }),
           py::arg("t"), py::arg("router"), py::arg("packet"))
      .def_readwrite("t", &Assignment::t)
      .def_readwrite("router", &Assignment::router)
      .def_readwrite("packet", &Assignment::packet)
      .def(py::self == py::self)
      .def("__repr__", &assignment_repr);

  py::class_<Trace>(m, "Trace")
      .def(py::init([](std::vector<Assignment> assignments, Time horizon) {
             return Trace{std::move(assignments), horizon};
           }),
           py::arg("assignments") = std::vector<Assignment>(),
           py::arg("horizon") = -1)
      .def_readwrite("assignments", &Trace::assignments)
      .def_readwrite("horizon", &Trace::horizon)
      .def(py::self == py::self)
      .def("__len__", [](const Trace& t) { return t.assignments.size(); });

  py::class_<FlowTimes>(m, "FlowTimes")
      .def_readonly("per_packet", &FlowTimes::per_packet)
      .def_readonly("max", &FlowTimes::max);

  py::class_<FamilyPrediction>(m, "FamilyPrediction")
      .def_readonly("greedy_max_flow", &FamilyPrediction::greedy_max_flow)
      .def_readonly("opt_max_flow", &FamilyPrediction::opt_max_flow)
      .def_readonly("greedy_block_flow", &FamilyPrediction::greedy_block_flow)
      .def_readonly("opt_block_flow", &FamilyPrediction::opt_block_flow);

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("value", &OptResult::value)
      .def_readonly("trace", &OptResult::trace)
      .def_readonly("nodes_explored", &OptResult::nodes_explored)
      .def_readonly("exact", &OptResult::exact);

  py::class_<Adversary65Result>(m, "Adversary65Result")
      .def_readonly("instance", &Adversary65Result::instance)
      .def_readonly("policy_value", &Adversary65Result::policy_value)
      .def_readonly("offline_value", &Adversary65Result::offline_value)
      .def_readonly("ratio", &Adversary65Result::ratio)
      .def_readonly("jammed", &Adversary65Result::jammed)
      .def_readonly("longs_forwarded_early",
                    &Adversary65Result::longs_forwarded_early);

  py::class_<StageRecord>(m, "StageRecord")
      .def_readonly("stage", &StageRecord::stage)
      .def_readonly("t", &StageRecord::t)
      .def_readonly("router", &StageRecord::router)
      .def_readonly("u", &StageRecord::u)
      .def_readonly("backlog", &StageRecord::backlog)
      .def_readonly("longs_forwarded_early", &StageRecord::longs_forwarded_early)
      .def_readonly("slack", &StageRecord::slack);

  py::class_<Adversary43Result>(m, "Adversary43Result")
      .def_readonly("instance", &Adversary43Result::instance)
      .def_readonly("policy_value", &Adversary43Result::policy_value)
      .def_readonly("offline_value", &Adversary43Result::offline_value)
      .def_readonly("ratio", &Adversary43Result::ratio)
      .def_readonly("early_exit", &Adversary43Result::early_exit)
      .def_readonly("stages", &Adversary43Result::stages);

  py::class_<Lemma2Violation>(m, "BacklogViolation")
      .def_readonly("router", &Lemma2Violation::router)
      .def_readonly("t", &Lemma2Violation::t)
      .def_readonly("required", &Lemma2Violation::required)
      .def_readonly("found", &Lemma2Violation::found);

  py::class_<DeltaProfile>(m, "DeltaProfile")
      .def_property_readonly("k", &DeltaProfile::k)
      .def_property_readonly("horizon", &DeltaProfile::horizon)
      .def("a", &DeltaProfile::a, py::arg("router"), py::arg("t"))
      .def("g", &DeltaProfile::g, py::arg("router"), py::arg("t"))
      .def("delta", &DeltaProfile::delta, py::arg("router"), py::arg("t"));

  m.def("priority", &priority, py::arg("release"), py::arg("length"),
        py::arg("remaining"), py::arg("now"));
  m.def("delay", &delay, py::arg("release"), py::arg("length"),
        py::arg("remaining"), py::arg("now"));
  m.def("check_instance", &check_instance, py::arg("instance"));
  m.def("default_horizon", &default_horizon, py::arg("instance"));

  m.def(
      "simulate",
      [](const Instance& instance, const std::string& policy,
         std::optional<Time> horizon) {
        return simulate(instance, make_policy(policy, instance), horizon);
      },
      py::arg("instance"), py::arg("policy") = "greedy",
      py::arg("horizon") = std::nullopt);

  m.def("flow_times", &flow_times, py::arg("instance"), py::arg("trace"));
  m.def("block_max_flows", &block_max_flows, py::arg("instance"),
        py::arg("flows"));

  m.def(
      "validate_trace",
      [](const Instance& instance, const Trace& trace) {
        std::vector<std::string> out;
        for (const TraceViolation& v : validate_trace(instance, trace))
          out.push_back(to_string(v));
        return out;
      },
      py::arg("instance"), py::arg("trace"));
  m.def("is_zealous", &is_zealous, py::arg("instance"), py::arg("trace"));

  m.def("gen_prop_k2", &gen_prop_k2, py::arg("h"));
  m.def("gen_greedy_family", &gen_greedy_family, py::arg("k"), py::arg("h"));
  m.def("gen_warmup_65", &gen_warmup_65, py::arg("h"), py::arg("with_jam"));

  m.def(
      "adversary_65",
      [](const std::string& policy, Time h) {
        return adversary_65(make_policy(policy, Instance{}), h);
      },
      py::arg("policy"), py::arg("h"));
  m.def(
      "adversary_43",
      [](const std::string& policy, int stages, Time ell) {
        return adversary_43(make_policy(policy, Instance{}), stages, ell);
      },
      py::arg("policy"), py::arg("stages"), py::arg("ell"));

  m.def(
      "reference_schedule",
      [](const Instance& instance, const std::optional<PrefMap>& prefs) {
        BlockPreference bp;
        if (prefs)
          bp.prefs = *prefs;
        else
          bp = canonical_reference_prefs(instance);
        return reference_schedule(instance, bp);
      },
      py::arg("instance"), py::arg("prefs") = std::nullopt);
  m.def(
      "canonical_reference_prefs",
      [](const Instance& instance) {
        return canonical_reference_prefs(instance).prefs;
      },
      py::arg("instance"));

  m.def("load_lower_bound", &load_lower_bound, py::arg("instance"));
  m.def("brute_force_opt", &brute_force_opt, py::arg("instance"),
        py::arg("node_budget") = std::uint64_t{10'000'000});

  m.def("delta_profile", &delta_profile, py::arg("instance"), py::arg("online"),
        py::arg("reference"));
  m.def("check_lemma1", &check_lemma1, py::arg("profile"));
  m.def("check_lemma2", &check_lemma2, py::arg("instance"), py::arg("profile"),
        py::arg("reference"));
  m.def("check_lemma3", &check_lemma3, py::arg("profile"), py::arg("opt_value"));
  m.def("check_theorem2", &check_theorem2, py::arg("greedy_value"),
        py::arg("opt_value"), py::arg("k"));

  m.def("instance_to_json", &instance_to_json, py::arg("instance"));
  m.def("instance_from_json", &instance_from_json, py::arg("text"));
  m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("trace_to_jsonl", &trace_to_jsonl, py::arg("trace"));
  m.def("trace_from_jsonl", &trace_from_jsonl, py::arg("text"));
  m.def("save_trace", &save_trace, py::arg("trace"), py::arg("path"));
  m.def("load_trace", &load_trace, py::arg("path"));

  m.def(
      "gantt_svg",
      [](const Instance& instance, const Trace& trace, const std::string& title) {
        return gantt_svg(instance, trace, title);
      },
      py::arg("instance"), py::arg("trace"), py::arg("title") = "schedule");
  m.def("gantt_text", &gantt_text, py::arg("instance"), py::arg("trace"));
}
