"""Access to the data files bundled with the package: the metropolitan
topology, classifier lexicons, agent prompts, the benchmark scenario suite,
and scripted replay fixtures."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .intent import Lexicon
from .model import NetworkState, load_state


def data_path(*parts: str) -> Path:
    path = Path(str(resources.files("sliceweaver") / "data"))
    for part in parts:
        path = path / part
    return path


def default_state_path() -> Path:
    return data_path("topology", "metro_6g.json")


def default_lexicon_path() -> Path:
    return data_path("config", "lexicon.json")


def strict_lexicon_path() -> Path:
    return data_path("config", "lexicon_strict.json")


def default_prompts_dir() -> Path:
    return data_path("prompts")


def generic_prompts_dir() -> Path:
    return data_path("prompts", "ablation_generic")


def default_scenarios_path() -> Path:
    return data_path("scenarios", "benchmark12.json")


def default_suite_fixture_path() -> Path:
    return data_path("fixtures", "benchmark12.json")


def industrial_trace_fixture_path() -> Path:
    return data_path("fixtures", "industrial_automation_trace.json")


def default_state() -> NetworkState:
    return load_state(default_state_path().read_text(encoding="utf-8"))


def default_lexicon() -> Lexicon:
    return Lexicon.from_file(default_lexicon_path())


def strict_lexicon() -> Lexicon:
    return Lexicon.from_file(strict_lexicon_path())
