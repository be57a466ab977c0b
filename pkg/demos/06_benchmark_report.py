"""The deterministic evaluation harness end to end.

Replays the bundled 12-scenario suite against the scripted fixture, prints
the per-scenario table, the four-system comparison, and the ablation summary.
Everything here is hermetic: no network, byte-reproducible output.
"""

from sliceweaver import load_prompts, load_scenarios
from sliceweaver.data import (
    default_lexicon,
    default_prompts_dir,
    default_scenarios_path,
    default_state,
    default_suite_fixture_path,
    generic_prompts_dir,
    strict_lexicon,
)
from sliceweaver.gateway import SuiteFixture
from sliceweaver.harness import (
    ABLATION_VARIANTS,
    HarnessConfig,
    ablation_table,
    compare_table,
    emit_report,
    run_ablation,
    run_benchmark,
    run_compare,
)

state = default_state()
config = HarnessConfig(
    state=state,
    prompts=load_prompts(default_prompts_dir()),
    lexicon=default_lexicon(),
    strict_lexicon=strict_lexicon(),
    generic_prompts=load_prompts(generic_prompts_dir(), require_markers=False),
)
scenarios = load_scenarios(default_scenarios_path(), state)
fixture = SuiteFixture.from_file(default_suite_fixture_path())

report = run_benchmark(scenarios, "multi_agent", fixture, config)
print(emit_report(report, "table"))

print("Baseline comparison:")
print(compare_table(run_compare(scenarios, fixture, config)))

print("Ablations:")
reports = {v: run_ablation(v, scenarios, fixture, config) for v in ABLATION_VARIANTS}
print(ablation_table(reports))
