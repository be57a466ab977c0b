"""Deterministic intent classification.

Shows how raw intent text becomes an IntentProfile: traffic class, bandwidth
category, latency requirement, target sector, and the matched keywords that
justify the decision.
"""

from sliceweaver import classify_intent, weights_for
from sliceweaver.data import default_state

state = default_state()

INTENTS = [
    "Configure network slice for automated robotic assembly line at "
    "industrial_park_a. Requires ultra-low latency (<5ms) for real-time "
    "control and high reliability for safety-critical operations.",
    "4K streaming for the evening match, broadcast to city_plaza screens.",
    "Smart metering telemetry for thousands of sensors across suburban_residential.",
    "Connectivity for pop-up kiosks, nothing fancy.",
    "Instantaneous connectivity for the machine cell at industrial_park_a.",
]

for text in INTENTS:
    profile = classify_intent(text, state)
    w_l, w_r, w_c = weights_for(profile.traffic_class)
    print(f"intent : {text[:78]}{'...' if len(text) > 78 else ''}")
    print(
        f"profile: class={profile.traffic_class.value:5s} beta={profile.bandwidth_category.value:6s} "
        f"tau_req={profile.tau_req_ms:g} ms target={profile.target_sector or '-'}"
    )
    print(f"weights: w_l={w_l} w_r={w_r} w_c={w_c}")
    print(f"matched: {', '.join(profile.matched_keywords) or '(none: defaults applied)'}")
    print()
