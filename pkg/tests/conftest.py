from __future__ import annotations

import pytest

from sliceweaver import data as bundled
from sliceweaver.agents import load_prompts
from sliceweaver.gateway import SuiteFixture
from sliceweaver.harness import HarnessConfig, load_scenarios


@pytest.fixture(scope="session")
def state():
    return bundled.default_state()


@pytest.fixture(scope="session")
def lexicon():
    return bundled.default_lexicon()


@pytest.fixture(scope="session")
def strict_lexicon():
    return bundled.strict_lexicon()


@pytest.fixture(scope="session")
def prompts():
    return load_prompts(bundled.default_prompts_dir())


@pytest.fixture(scope="session")
def scenarios(state):
    return load_scenarios(bundled.default_scenarios_path(), state)


@pytest.fixture()
def suite_fixture():
    # Function-scoped: scripted backends are consumed as they replay.
    return SuiteFixture.from_file(bundled.default_suite_fixture_path())


@pytest.fixture(scope="session")
def harness_config(state, prompts, lexicon, strict_lexicon):
    return HarnessConfig(
        state=state,
        prompts=prompts,
        lexicon=lexicon,
        strict_lexicon=strict_lexicon,
        generic_prompts=load_prompts(bundled.generic_prompts_dir(), require_markers=False),
    )


FACTORY_INTENT = (
    "Configure network slice for automated robotic assembly line at industrial_park_a. "
    "Requires ultra-low latency (<5ms) for real-time control and high reliability for "
    "safety-critical operations."
)


@pytest.fixture(scope="session")
def factory_intent():
    return FACTORY_INTENT
