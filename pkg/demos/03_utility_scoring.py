"""The engineering utility function, walked through the worked example.

Scores the factory-automation golden configuration step by step, then shows
how the four feasibility constraints filter the candidate UPF nodes.
"""

from sliceweaver import (
    Band,
    SliceConfiguration,
    check_constraints,
    classify_intent,
    compute_utility,
)
from sliceweaver.data import default_state

state = default_state()
intent = (
    "Configure network slice for automated robotic assembly line at "
    "industrial_park_a. Requires ultra-low latency (<5ms) for real-time "
    "control and high reliability for safety-critical operations."
)
profile = classify_intent(intent, state)
config = SliceConfiguration("industrial_park_a", Band.MID_BAND, "mec_industrial_1")

breakdown = compute_utility(config, profile, state)
w_l, w_r, w_c = breakdown.weights
print("Worked example: mid-band @ industrial_park_a via mec_industrial_1")
print(f"  S_latency    = {breakdown.s_latency}   (3 ms, below the 10 ms step)")
print(f"  S_resource   = {breakdown.s_resource}   (mid-band for a medium-bandwidth intent)")
print(f"  S_congestion = {breakdown.s_congestion:.2f}  (sector load 60%)")
print(
    f"  U = {w_l} x {breakdown.s_latency} + {w_r} x {breakdown.s_resource} "
    f"+ {w_c} x {breakdown.s_congestion:.2f} = {breakdown.utility:.2f}"
)

print(f"\nConstraint filtering at tau_req = {profile.tau_req_ms:g} ms:")
for node_id in state.nodes:
    candidate = SliceConfiguration("industrial_park_a", Band.MID_BAND, node_id)
    report = check_constraints(candidate, profile, state)
    verdict = "FEASIBLE" if report.feasible else "rejected"
    reasons = []
    if not report.latency_ok:
        reasons.append("latency")
    if not report.compute_ok:
        reasons.append("compute")
    if not report.load_ok:
        reasons.append("load")
    if not report.band_ok:
        reasons.append("band")
    print(f"  {node_id:18s} {verdict}{'  (' + ', '.join(reasons) + ')' if reasons else ''}")
