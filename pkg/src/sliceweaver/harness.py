"""Benchmark evaluation harness.

Loads scenario suites, runs a system (multi-agent, monolithic, rule-based,
direct-LLM, or the oracle) against each scenario, scores the produced
configuration for semantic accuracy against the golden standard and for
engineering utility, applies the hybrid success criterion (accuracy >= 0.5
and utility >= 0.7), and emits reports: a human-readable table and a lossless
machine format.

Scoring always uses the deterministic referee profile derived from the
scenario's intent text with the full lexicon, regardless of how the system
under test interpreted the intent. Failures of a run are recorded as
zero-accuracy rows rather than aborting the harness.
"""

from __future__ import annotations

import json
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from math import fsum
from pathlib import Path

from .agents import (
    ORCHESTRATOR,
    AgentTranscript,
    Outcome,
    merge_prompts_monolithic,
    run_react,
    run_single_pass,
)
from .gateway import ChatSession
from .intent import IntentProfile, Lexicon, TrafficClass, classify_intent
from .model import Band, NetworkState, SliceConfiguration
from .oracle import rule_based_provision, solve
from .scoring import DEFAULT_THRESHOLDS, Thresholds, compute_utility, round_half_up

SYSTEMS = ("multi_agent", "monolithic", "rule_based", "direct_llm", "oracle")
COMPARE_SYSTEMS = ("multi_agent", "monolithic", "rule_based", "direct_llm")
ABLATION_VARIANTS = ("full", "no_prompts", "no_specialists", "no_react")

HYBRID_ACCURACY_MIN = 0.5
HYBRID_UTILITY_MIN = 0.7

# Fixture script key used by each ablation variant.
_VARIANT_SCRIPT_KEYS = {
    "full": "multi_agent",
    "no_prompts": "no_prompts",
    "no_specialists": "monolithic",
    "no_react": "no_react",
}

DIRECT_LLM_PROMPT = """You are a 6G network slice configuration assistant.
The user message contains a slice intent followed by the current network
state as JSON. Choose the RAN sector, spectrum band and UPF node in this one
response; there are no follow-up turns and no other agents.

Respond with exactly two lines:

ACTION: PROVISION_SLICE | slice_id=<label> | ran_config=<band>@<sector> | core_config=UPF@<node>
ACTION: FINISH | summary=<one sentence>

Band names: mmWave, mid-band, low-band.
"""

SINGLE_PASS_SUFFIX = (
    "\n\nSingle-pass mode: there are no follow-up turns. Do not emit CALL_AGENT. "
    "Decide everything now and emit PROVISION_SLICE followed by FINISH in this "
    "one response.\n"
)


class HarnessError(Exception):
    pass


@dataclass(frozen=True)
class Scenario:
    id: str
    category: TrafficClass
    intent_text: str
    golden: SliceConfiguration
    declared_beta: str
    notes: str = ""
    provenance: str = "authored"


@dataclass(frozen=True)
class EvaluationRecord:
    scenario_id: str
    category: str
    system: str
    run_index: int
    produced: SliceConfiguration | None
    semantic_accuracy: float
    utility: float
    hybrid_success: bool
    prompt_tokens: int
    completion_tokens: int
    wall_seconds: float
    iterations: int
    error: str | None = None

    @property
    def total_tokens(self) -> int:
        return self.prompt_tokens + self.completion_tokens


@dataclass(frozen=True)
class ColumnStats:
    mean: float
    std: float


@dataclass(frozen=True)
class BenchmarkReport:
    system: str
    records: tuple[EvaluationRecord, ...]
    summary: dict[str, ColumnStats]


@dataclass(frozen=True)
class HarnessConfig:
    """Everything a run needs besides the scenarios and the backend."""

    state: NetworkState
    prompts: dict[str, str]
    lexicon: Lexicon
    strict_lexicon: Lexicon
    generic_prompts: dict[str, str] | None = None
    thresholds: Thresholds = DEFAULT_THRESHOLDS
    repeats: int = 3
    k_max: int = 10
    jobs: int = 1


class LiveBackendProvider:
    """Serves one shared live backend for every (scenario, system) pair."""

    deterministic = False

    def __init__(self, backend):
        self._backend = backend

    def backend_for(self, scenario_id: str, system_key: str):
        return self._backend


def load_scenarios(path: str | Path, state: NetworkState) -> list[Scenario]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, list) or not doc:
        raise HarnessError(f"{path}: scenario suite must be a non-empty JSON list")
    scenarios: list[Scenario] = []
    seen: set[str] = set()
    for entry in doc:
        golden_entry = entry["golden"]
        golden = SliceConfiguration(
            sector_id=golden_entry["sector"],
            band=Band(golden_entry["band"]),
            node_id=golden_entry["node"],
        )
        # Golden standards must be valid against the bundled topology.
        state.sector(golden.sector_id)
        state.node(golden.node_id)
        if not state.sector(golden.sector_id).spectrum.available(golden.band):
            raise HarnessError(
                f"scenario {entry['id']!r}: golden band {golden.band.value!r} has no "
                f"spectrum at {golden.sector_id!r}"
            )
        if entry["id"] in seen:
            raise HarnessError(f"duplicate scenario id {entry['id']!r}")
        seen.add(entry["id"])
        scenarios.append(
            Scenario(
                id=entry["id"],
                category=TrafficClass(entry["category"]),
                intent_text=entry["intent_text"],
                golden=golden,
                declared_beta=entry["declared_beta"],
                notes=entry.get("notes", ""),
                provenance=entry.get("provenance", "authored"),
            )
        )
    return scenarios


def semantic_accuracy(
    produced: SliceConfiguration | None, golden: SliceConfiguration
) -> float:
    """Three-level match score: 1.0 all of (sector, band, node), 0.5 exactly
    two, else 0.0. An absent configuration scores 0.0."""
    if produced is None:
        return 0.0
    matches = sum(
        1 for a, b in zip(produced.dimensions(), golden.dimensions()) if a == b
    )
    if matches == 3:
        return 1.0
    if matches == 2:
        return 0.5
    return 0.0


def referee_profile(scenario: Scenario, config: HarnessConfig) -> IntentProfile:
    return classify_intent(scenario.intent_text, config.state, config.lexicon)


def _transcript_outcome(
    transcript: AgentTranscript,
) -> tuple[SliceConfiguration | None, int, int, float, int, str | None]:
    produced = (
        transcript.final_configuration
        if transcript.outcome is Outcome.FINISHED
        else None
    )
    error = transcript.error
    if transcript.outcome is Outcome.ITERATION_LIMIT:
        error = "iteration limit exceeded"
    return (
        produced,
        transcript.prompt_tokens,
        transcript.completion_tokens,
        0.0,  # wall seconds filled from session usage by the caller
        transcript.iterations,
        error,
    )


def _execute_once(
    scenario: Scenario,
    system: str,
    provider,
    config: HarnessConfig,
    script_key: str | None = None,
    prompt_set: dict[str, str] | None = None,
    single_pass: bool = False,
) -> tuple[SliceConfiguration | None, int, int, float, int, str | None]:
    """Run one system once; returns (produced, ptok, ctok, wall, iters, err)."""
    prompts = prompt_set or config.prompts
    if system == "oracle":
        profile = referee_profile(scenario, config)
        ranking = solve(config.state, profile, config.thresholds)
        return ranking[0].config, 0, 0, 0.0, 0, None
    if system == "rule_based":
        result = rule_based_provision(
            scenario.intent_text, config.state, config.thresholds,
            lexicon=config.strict_lexicon,
        )
        return result.config, 0, 0, 0.0, 0, None
    backend = provider.backend_for(scenario.id, script_key or system)
    session = ChatSession(backend)
    if system == "direct_llm":
        transcript = run_single_pass(
            scenario.intent_text, config.state, session, DIRECT_LLM_PROMPT
        )
    elif single_pass:
        transcript = run_single_pass(
            scenario.intent_text, config.state, session,
            prompts[ORCHESTRATOR] + SINGLE_PASS_SUFFIX,
        )
    elif system == "monolithic":
        transcript = run_react(
            scenario.intent_text, config.state, session, prompts,
            k_max=config.k_max, specialists_enabled=False, inject_state=True,
            system_prompt=merge_prompts_monolithic(prompts),
        )
    else:  # multi_agent
        transcript = run_react(
            scenario.intent_text, config.state, session, prompts, k_max=config.k_max
        )
    produced, ptok, ctok, _, iters, err = _transcript_outcome(transcript)
    return produced, ptok, ctok, session.total_usage().wall_seconds, iters, err


def run_scenario(
    scenario: Scenario,
    system: str,
    provider,
    config: HarnessConfig,
    script_key: str | None = None,
    prompt_set: dict[str, str] | None = None,
    single_pass: bool = False,
) -> list[EvaluationRecord]:
    """Evaluate one scenario `config.repeats` times.

    Deterministic paths (oracle, rule-based, any scripted backend) execute
    once and replicate the record; live LLM systems run independent sessions.
    """
    if system not in SYSTEMS and script_key is None:
        raise HarnessError(f"unknown system {system!r}")
    profile = referee_profile(scenario, config)
    deterministic = system in ("oracle", "rule_based") or bool(
        getattr(provider, "deterministic", False)
    )
    runs = 1 if deterministic else config.repeats

    outcomes = []
    for _ in range(runs):
        try:
            outcomes.append(
                _execute_once(
                    scenario, system, provider, config,
                    script_key=script_key, prompt_set=prompt_set,
                    single_pass=single_pass,
                )
            )
        except Exception as exc:  # failures become zero-accuracy rows
            outcomes.append((None, 0, 0, 0.0, 0, f"{type(exc).__name__}: {exc}"))

    records: list[EvaluationRecord] = []
    for run_index in range(1, config.repeats + 1):
        produced, ptok, ctok, wall, iters, err = outcomes[
            min(run_index - 1, len(outcomes) - 1)
        ]
        accuracy = semantic_accuracy(produced, scenario.golden)
        if produced is not None:
            utility = compute_utility(produced, profile, config.state).utility
        else:
            utility = 0.0
        records.append(
            EvaluationRecord(
                scenario_id=scenario.id,
                category=scenario.category.value,
                system=system,
                run_index=run_index,
                produced=produced,
                semantic_accuracy=accuracy,
                utility=utility,
                hybrid_success=(
                    accuracy >= HYBRID_ACCURACY_MIN and utility >= HYBRID_UTILITY_MIN
                ),
                prompt_tokens=ptok,
                completion_tokens=ctok,
                wall_seconds=wall,
                iterations=iters,
                error=err,
            )
        )
    return records


def _summarise(records: tuple[EvaluationRecord, ...]) -> dict[str, ColumnStats]:
    def stats(values: list[float]) -> ColumnStats:
        if not values:
            return ColumnStats(mean=0.0, std=0.0)
        mean = fsum(values) / len(values)
        # Population standard deviation (divide by N); noted in report footers.
        std = statistics.pstdev(values) if len(values) > 1 else 0.0
        return ColumnStats(mean=mean, std=std)

    return {
        "semantic_accuracy": stats([r.semantic_accuracy for r in records]),
        "utility": stats([r.utility for r in records]),
        "tokens": stats([float(r.total_tokens) for r in records]),
        "wall_seconds": stats([r.wall_seconds for r in records]),
        "iterations": stats([float(r.iterations) for r in records]),
        "hybrid_success": stats([1.0 if r.hybrid_success else 0.0 for r in records]),
    }


def run_benchmark(
    scenarios: list[Scenario],
    system: str,
    provider,
    config: HarnessConfig,
    script_key: str | None = None,
    prompt_set: dict[str, str] | None = None,
    single_pass: bool = False,
) -> BenchmarkReport:
    """Run one system over a whole suite and aggregate."""
    if not scenarios:
        raise HarnessError("scenario suite is empty")

    def one(scenario: Scenario) -> list[EvaluationRecord]:
        return run_scenario(
            scenario, system, provider, config,
            script_key=script_key, prompt_set=prompt_set, single_pass=single_pass,
        )

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            per_scenario = list(pool.map(one, scenarios))
    else:
        per_scenario = [one(s) for s in scenarios]
    records = tuple(
        record
        for results in sorted(per_scenario, key=lambda rs: rs[0].scenario_id)
        for record in results
    )
    return BenchmarkReport(system=system, records=records, summary=_summarise(records))


def run_compare(
    scenarios: list[Scenario], provider, config: HarnessConfig
) -> dict[str, BenchmarkReport]:
    """The four-system baseline comparison."""
    return {
        system: run_benchmark(scenarios, system, provider, config)
        for system in COMPARE_SYSTEMS
    }


def run_ablation(
    variant: str,
    scenarios: list[Scenario],
    provider,
    config: HarnessConfig,
) -> BenchmarkReport:
    """Run one architectural ablation variant over the suite."""
    if variant not in ABLATION_VARIANTS:
        raise HarnessError(f"unknown ablation variant {variant!r}")
    script_key = _VARIANT_SCRIPT_KEYS[variant]
    if variant == "full":
        report = run_benchmark(scenarios, "multi_agent", provider, config)
    elif variant == "no_prompts":
        if config.generic_prompts is None:
            raise HarnessError("no_prompts ablation needs the generic prompt set")
        report = run_benchmark(
            scenarios, "multi_agent", provider, config,
            script_key=script_key, prompt_set=config.generic_prompts,
        )
    elif variant == "no_specialists":
        report = run_benchmark(
            scenarios, "monolithic", provider, config, script_key=script_key
        )
    else:  # no_react
        report = run_benchmark(
            scenarios, "multi_agent", provider, config,
            script_key=script_key, single_pass=True,
        )
    return replace(report, system=variant)


def record_to_dict(record: EvaluationRecord) -> dict:
    produced = None
    if record.produced is not None:
        produced = {
            "sector": record.produced.sector_id,
            "band": record.produced.band.value,
            "node": record.produced.node_id,
            **({"slice_id": record.produced.slice_id} if record.produced.slice_id else {}),
        }
    return {
        "scenario_id": record.scenario_id,
        "category": record.category,
        "system": record.system,
        "run_index": record.run_index,
        "produced": produced,
        "semantic_accuracy": record.semantic_accuracy,
        "utility": record.utility,
        "hybrid_success": record.hybrid_success,
        "prompt_tokens": record.prompt_tokens,
        "completion_tokens": record.completion_tokens,
        "wall_seconds": record.wall_seconds,
        "iterations": record.iterations,
        "error": record.error,
    }


def record_from_dict(doc: dict) -> EvaluationRecord:
    produced = None
    if doc.get("produced") is not None:
        entry = doc["produced"]
        produced = SliceConfiguration(
            sector_id=entry["sector"],
            band=Band(entry["band"]),
            node_id=entry["node"],
            slice_id=entry.get("slice_id"),
        )
    return EvaluationRecord(
        scenario_id=doc["scenario_id"],
        category=doc["category"],
        system=doc["system"],
        run_index=doc["run_index"],
        produced=produced,
        semantic_accuracy=doc["semantic_accuracy"],
        utility=doc["utility"],
        hybrid_success=doc["hybrid_success"],
        prompt_tokens=doc["prompt_tokens"],
        completion_tokens=doc["completion_tokens"],
        wall_seconds=doc["wall_seconds"],
        iterations=doc["iterations"],
        error=doc.get("error"),
    )


def report_to_machine(report: BenchmarkReport) -> str:
    """Lossless machine format; byte-stable for deterministic runs."""
    doc = {
        "format": "sliceweaver.benchmark.v1",
        "system": report.system,
        "records": [record_to_dict(r) for r in report.records],
        "summary": {
            name: {"mean": stats.mean, "std": stats.std, "std_kind": "population"}
            for name, stats in report.summary.items()
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def report_from_machine(text: str) -> BenchmarkReport:
    doc = json.loads(text)
    records = tuple(record_from_dict(entry) for entry in doc["records"])
    return BenchmarkReport(
        system=doc["system"],
        records=records,
        summary={
            name: ColumnStats(mean=entry["mean"], std=entry["std"])
            for name, entry in doc["summary"].items()
        },
    )


def _fmt_mean_std(stats: ColumnStats, places: int = 3) -> str:
    return (
        f"{round_half_up(stats.mean, places):.{places}f} "
        f"± {round_half_up(stats.std, places):.{places}f}"
    )


def report_to_table(report: BenchmarkReport) -> str:
    """Human-readable per-scenario table with a mean +/- std footer.

    One row per scenario (means across repeats); accuracy at 1 decimal,
    utility at 2, time at 1, matching the reporting convention used in docs.
    """
    header = (
        f"{'Scenario':28s} {'Category':8s} {'Accuracy':>8s} {'Utility':>8s} "
        f"{'Tokens':>7s} {'Time(s)':>8s} {'Iter':>5s}"
    )
    lines = [f"System: {report.system}", header, "-" * len(header)]
    by_scenario: dict[str, list[EvaluationRecord]] = {}
    for record in report.records:
        by_scenario.setdefault(record.scenario_id, []).append(record)
    for scenario_id, records in by_scenario.items():
        n = len(records)
        accuracy = fsum(r.semantic_accuracy for r in records) / n
        utility = fsum(r.utility for r in records) / n
        tokens = fsum(r.total_tokens for r in records) / n
        wall = fsum(r.wall_seconds for r in records) / n
        iters = fsum(r.iterations for r in records) / n
        lines.append(
            f"{scenario_id:28s} {records[0].category:8s} "
            f"{round_half_up(accuracy, 1):>8.1f} {round_half_up(utility, 2):>8.2f} "
            f"{round_half_up(tokens, 0):>7.0f} {round_half_up(wall, 1):>8.1f} "
            f"{round_half_up(iters, 1):>5.1f}"
        )
    lines.append("-" * len(header))
    summary = report.summary
    lines.append(
        f"{'Mean ± Std':28s} {'':8s} "
        f"{_fmt_mean_std(summary['semantic_accuracy']):>14s} "
        f"{_fmt_mean_std(summary['utility']):>14s} "
        f"{summary['tokens'].mean:>9.0f} "
        f"{summary['wall_seconds'].mean:>8.1f} "
        f"{summary['iterations'].mean:>5.1f}"
    )
    lines.append("Std is the population standard deviation (divide by N).")
    return "\n".join(lines) + "\n"


def emit_report(report: BenchmarkReport, fmt: str = "table") -> str:
    if fmt == "table":
        return report_to_table(report)
    if fmt == "machine":
        return report_to_machine(report)
    raise HarnessError(f"unknown report format {fmt!r}")


def compare_table(reports: dict[str, BenchmarkReport]) -> str:
    """Four-row summary: System, Accuracy, Utility, Tokens, Time."""
    header = f"{'System':16s} {'Accuracy':>8s} {'Utility':>8s} {'Tokens':>8s} {'Time(s)':>8s}"
    lines = [header, "-" * len(header)]
    for system, report in reports.items():
        summary = report.summary
        tokens = (
            f"{round_half_up(summary['tokens'].mean, 0):>8.0f}"
            if system not in ("rule_based", "oracle")
            else f"{'N/A':>8s}"
        )
        lines.append(
            f"{system:16s} {round_half_up(summary['semantic_accuracy'].mean, 2):>8.2f} "
            f"{round_half_up(summary['utility'].mean, 2):>8.2f} {tokens} "
            f"{round_half_up(summary['wall_seconds'].mean, 1):>8.1f}"
        )
    return "\n".join(lines) + "\n"


def ablation_table(reports: dict[str, BenchmarkReport]) -> str:
    """Per-variant summary with deltas against the full system."""
    if "full" not in reports:
        raise HarnessError("ablation table needs the 'full' variant as baseline")
    full = reports["full"].summary
    header = (
        f"{'Configuration':18s} {'Accuracy':>8s} {'Utility':>8s} "
        f"{'dSem':>7s} {'dUtil':>7s}"
    )
    labels = {
        "full": "Full System",
        "no_prompts": "Remove Prompts",
        "no_specialists": "Remove Specialists",
        "no_react": "Remove ReAct",
    }
    lines = [header, "-" * len(header)]
    for variant, report in reports.items():
        summary = report.summary
        d_sem = summary["semantic_accuracy"].mean - full["semantic_accuracy"].mean
        d_util = summary["utility"].mean - full["utility"].mean
        lines.append(
            f"{labels.get(variant, variant):18s} "
            f"{round_half_up(summary['semantic_accuracy'].mean, 2):>8.2f} "
            f"{round_half_up(summary['utility'].mean, 2):>8.2f} "
            f"{round_half_up(d_sem, 2):>+7.2f} {round_half_up(d_util, 2):>+7.2f}"
        )
    return "\n".join(lines) + "\n"
