"""Tour of the network state model.

Loads the bundled metropolitan topology, queries the latency matrix, shows
canonical serialization round-tripping, and records a slice in the
provisioning ledger.
"""

from sliceweaver import (
    Band,
    SliceConfiguration,
    apply_provisioning,
    latency,
    load_state,
    serialize_state,
)
from sliceweaver.data import default_state_path

state = load_state(default_state_path().read_text())

print("Sectors:")
for sector in state.sectors.values():
    bands = sector.spectrum
    print(
        f"  {sector.id:22s} users={sector.active_users:>6d} load={sector.load_percent:5.1f}% "
        f"mmWave={bands.mmwave_mhz:>5.0f} mid={bands.mid_band_mhz:>4.0f} low={bands.low_band_mhz:>3.0f}  ({sector.context})"
    )

print("\nUPF nodes:")
for node in state.nodes.values():
    print(f"  {node.id:18s} tier={node.tier.value:8s} compute={node.compute_load_percent:5.1f}%  ({node.context})")

print("\nLatency matrix (ms):")
for sector_id in state.sectors:
    row = "  ".join(f"{node_id}={latency(state, sector_id, node_id):>4.0f}" for node_id in state.nodes)
    print(f"  {sector_id:22s} {row}")

# Serialization is canonical: stable bytes, loss-free round trip.
text = serialize_state(state)
assert load_state(text) == state
print(f"\nCanonical form: {len(text)} bytes, round-trips losslessly.")

# Provisioning appends to an auditable ledger; loads stay untouched.
config = SliceConfiguration(
    sector_id="industrial_park_a",
    band=Band.MID_BAND,
    node_id="mec_industrial_1",
    slice_id="demo_slice_001",
)
provisioned = apply_provisioning(state, config)
print(f"Ledger after provisioning: {[s.slice_id for s in provisioned.provisioned_slices]}")
