"""Online packet forwarding on a line network.

Thin wrapper around the compiled extension. Packets travel left to right
through routers 1..k, one hop per step; the helpers here generate the named
instance families, simulate forwarding policies, compute offline bounds and
run the adaptive adversaries.
"""

from ._lineforward import (
    Adversary43Result,
    Adversary65Result,
    Assignment,
    BacklogViolation,
    DeltaProfile,
    FamilyPrediction,
    FlowTimes,
    Instance,
    OptResult,
    Packet,
    StageRecord,
    Trace,
    adversary_43,
    adversary_65,
    block_max_flows,
    brute_force_opt,
    canonical_reference_prefs,
    check_instance,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_theorem2,
    default_horizon,
    delay,
    delta_profile,
    flow_times,
    gantt_svg,
    gantt_text,
    gen_greedy_family,
    gen_prop_k2,
    gen_warmup_65,
    instance_from_json,
    instance_to_json,
    is_zealous,
    load_instance,
    load_lower_bound,
    load_trace,
    priority,
    reference_schedule,
    save_instance,
    save_trace,
    simulate,
    trace_from_jsonl,
    trace_to_jsonl,
    validate_trace,
)

__all__ = [
    "Adversary43Result",
    "Adversary65Result",
    "Assignment",
    "BacklogViolation",
    "DeltaProfile",
    "FamilyPrediction",
    "FlowTimes",
    "Instance",
    "OptResult",
    "Packet",
    "StageRecord",
    "Trace",
    "adversary_43",
    "adversary_65",
    "block_max_flows",
    "brute_force_opt",
    "canonical_reference_prefs",
    "check_instance",
    "check_lemma1",
    "check_lemma2",
    "check_lemma3",
    "check_theorem2",
    "default_horizon",
    "delay",
    "delta_profile",
    "flow_times",
    "gantt_svg",
    "gantt_text",
    "gen_greedy_family",
    "gen_prop_k2",
    "gen_warmup_65",
    "instance_from_json",
    "instance_to_json",
    "is_zealous",
    "load_instance",
    "load_lower_bound",
    "load_trace",
    "priority",
    "reference_schedule",
    "save_instance",
    "save_trace",
    "simulate",
    "trace_from_jsonl",
    "trace_to_jsonl",
    "validate_trace",
]
