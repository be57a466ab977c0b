"""Network state model: RAN sectors, core UPF nodes, the latency matrix, and
slice configurations, plus validated JSON loading, canonical serialization,
and provisioning bookkeeping.

States are immutable values; every operation returns a new state. This makes
them safe to share across concurrent evaluation workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum


class StateError(Exception):
    """Base class for network-state problems."""


class StateParseError(StateError):
    """The document is not well-formed JSON."""


class StateValidationError(StateError):
    """The document parsed but violates the state schema or an invariant."""


class UnknownIdError(StateError):
    """A sector or node id does not exist in the state."""


class ProvisioningError(StateError):
    """A slice configuration cannot be applied to the state."""


class Band(str, Enum):
    MMWAVE = "mmwave"
    MID_BAND = "mid_band"
    LOW_BAND = "low_band"


class NodeTier(str, Enum):
    EDGE = "edge"
    METRO = "metro"
    REGIONAL = "regional"


# JSON spelling of the per-band spectrum keys (fixed wire format).
BAND_JSON_KEYS: dict[Band, str] = {
    Band.MMWAVE: "mmWave",
    Band.MID_BAND: "mid_band",
    Band.LOW_BAND: "low_band",
}

# "core" and "regional" both mean the regional tier on load.
_TIER_ALIASES = {
    "edge": NodeTier.EDGE,
    "metro": NodeTier.METRO,
    "regional": NodeTier.REGIONAL,
    "core": NodeTier.REGIONAL,
}


@dataclass(frozen=True)
class SpectrumBands:
    """Unallocated spectrum per band, in MHz. A band is available iff > 0."""

    mmwave_mhz: float
    mid_band_mhz: float
    low_band_mhz: float

    def __post_init__(self) -> None:
        for name in ("mmwave_mhz", "mid_band_mhz", "low_band_mhz"):
            value = getattr(self, name)
            if value < 0:
                raise StateValidationError(f"spectrum {name} must be >= 0, got {value}")

    def for_band(self, band: Band) -> float:
        return {
            Band.MMWAVE: self.mmwave_mhz,
            Band.MID_BAND: self.mid_band_mhz,
            Band.LOW_BAND: self.low_band_mhz,
        }[band]

    def available(self, band: Band) -> bool:
        return self.for_band(band) > 0


@dataclass(frozen=True)
class RanSector:
    """One radio coverage cell: utilisation, user count, spectrum headroom."""

    id: str
    active_users: int
    load_percent: float
    spectrum: SpectrumBands
    context: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise StateValidationError("sector id must be non-empty")
        if self.active_users < 0:
            raise StateValidationError(f"sector {self.id!r}: active_users must be >= 0")
        if not 0 <= self.load_percent <= 100:
            raise StateValidationError(
                f"sector {self.id!r}: load_percent {self.load_percent} outside [0, 100]"
            )


@dataclass(frozen=True)
class CoreNode:
    """One UPF node: placement tier, compute headroom, and its latency row."""

    id: str
    tier: NodeTier
    compute_load_percent: float
    latency_to_sector: dict[str, float]
    context: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise StateValidationError("node id must be non-empty")
        if not 0 <= self.compute_load_percent <= 100:
            raise StateValidationError(
                f"node {self.id!r}: compute_load_percent {self.compute_load_percent} "
                "outside [0, 100]"
            )
        for sector_id, value in self.latency_to_sector.items():
            if value <= 0:
                raise StateValidationError(
                    f"node {self.id!r}: latency to {sector_id!r} must be > 0, got {value}"
                )


@dataclass(frozen=True)
class SliceConfiguration:
    """The provisioning decision: (sector, band, UPF node), optionally labelled."""

    sector_id: str
    band: Band
    node_id: str
    slice_id: str | None = None

    def dimensions(self) -> tuple[str, Band, str]:
        return (self.sector_id, self.band, self.node_id)


@dataclass(frozen=True)
class NetworkState:
    """The complete environment: sector map, node map, and slice ledger."""

    sectors: dict[str, RanSector]
    nodes: dict[str, CoreNode]
    provisioned_slices: tuple[SliceConfiguration, ...] = ()

    def __post_init__(self) -> None:
        if not self.sectors:
            raise StateValidationError("state must contain at least one sector")
        if not self.nodes:
            raise StateValidationError("state must contain at least one node")
        for node in self.nodes.values():
            for sector_id in self.sectors:
                if sector_id not in node.latency_to_sector:
                    raise StateValidationError(
                        f"node {node.id!r} is missing a latency entry for sector "
                        f"{sector_id!r}"
                    )
            for sector_id in node.latency_to_sector:
                if sector_id not in self.sectors:
                    raise StateValidationError(
                        f"node {node.id!r} has a latency entry for unknown sector "
                        f"{sector_id!r}"
                    )

    def sector(self, sector_id: str) -> RanSector:
        try:
            return self.sectors[sector_id]
        except KeyError:
            raise UnknownIdError(f"unknown sector {sector_id!r}") from None

    def node(self, node_id: str) -> CoreNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownIdError(f"unknown node {node_id!r}") from None


def latency(state: NetworkState, sector_id: str, node_id: str) -> float:
    """End-to-end latency in ms between a sector and a node (matrix lookup)."""
    state.sector(sector_id)
    return state.node(node_id).latency_to_sector[sector_id]


def _reject_duplicate_keys(pairs: list[tuple[str, object]]) -> dict:
    out: dict = {}
    for key, value in pairs:
        if key in out:
            raise StateValidationError(f"duplicate id or key {key!r} in state document")
        out[key] = value
    return out


def _require_number(value: object, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StateValidationError(f"{where} must be a number, got {value!r}")
    return float(value)


def _check_keys(entry: dict, required: set[str], optional: set[str], where: str) -> None:
    keys = set(entry)
    missing = required - keys
    if missing:
        raise StateValidationError(f"{where}: missing field(s) {sorted(missing)}")
    unknown = keys - required - optional
    if unknown:
        raise StateValidationError(f"{where}: unknown field(s) {sorted(unknown)}")


def _sector_from_entry(sector_id: str, entry: dict) -> RanSector:
    where = f"sector {sector_id!r}"
    if not isinstance(entry, dict):
        raise StateValidationError(f"{where}: entry must be an object")
    _check_keys(
        entry,
        {"active_users", "load_percentage", "spectrum_available_mhz"},
        {"description"},
        where,
    )
    users = entry["active_users"]
    if isinstance(users, bool) or not isinstance(users, int):
        raise StateValidationError(f"{where}: active_users must be an integer")
    spectrum_entry = entry["spectrum_available_mhz"]
    if not isinstance(spectrum_entry, dict):
        raise StateValidationError(f"{where}: spectrum_available_mhz must be an object")
    expected = {key for key in BAND_JSON_KEYS.values()}
    if set(spectrum_entry) != expected:
        raise StateValidationError(
            f"{where}: spectrum_available_mhz must have exactly keys {sorted(expected)}"
        )
    spectrum = SpectrumBands(
        mmwave_mhz=_require_number(spectrum_entry["mmWave"], f"{where} mmWave"),
        mid_band_mhz=_require_number(spectrum_entry["mid_band"], f"{where} mid_band"),
        low_band_mhz=_require_number(spectrum_entry["low_band"], f"{where} low_band"),
    )
    return RanSector(
        id=sector_id,
        active_users=users,
        load_percent=_require_number(entry["load_percentage"], f"{where} load_percentage"),
        spectrum=spectrum,
        context=str(entry.get("description", "")),
    )


def _node_from_entry(node_id: str, entry: dict) -> CoreNode:
    where = f"node {node_id!r}"
    if not isinstance(entry, dict):
        raise StateValidationError(f"{where}: entry must be an object")
    _check_keys(
        entry,
        {"type", "latency_to_ran_ms", "compute_load_percent"},
        {"description"},
        where,
    )
    tier_raw = entry["type"]
    if tier_raw not in _TIER_ALIASES:
        raise StateValidationError(
            f"{where}: type must be one of {sorted(_TIER_ALIASES)}, got {tier_raw!r}"
        )
    latencies = entry["latency_to_ran_ms"]
    if not isinstance(latencies, dict):
        raise StateValidationError(f"{where}: latency_to_ran_ms must be an object")
    return CoreNode(
        id=node_id,
        tier=_TIER_ALIASES[tier_raw],
        compute_load_percent=_require_number(
            entry["compute_load_percent"], f"{where} compute_load_percent"
        ),
        latency_to_sector={
            sector_id: _require_number(value, f"{where} latency to {sector_id!r}")
            for sector_id, value in latencies.items()
        },
        context=str(entry.get("description", "")),
    )


def _slice_from_entry(index: int, entry: dict) -> SliceConfiguration:
    where = f"provisioned_slices[{index}]"
    if not isinstance(entry, dict):
        raise StateValidationError(f"{where}: entry must be an object")
    _check_keys(entry, {"sector", "band", "node"}, {"slice_id"}, where)
    try:
        band = Band(entry["band"])
    except ValueError:
        raise StateValidationError(f"{where}: unknown band {entry['band']!r}") from None
    slice_id = entry.get("slice_id")
    return SliceConfiguration(
        sector_id=str(entry["sector"]),
        band=band,
        node_id=str(entry["node"]),
        slice_id=None if slice_id is None else str(slice_id),
    )


def load_state(document: str) -> NetworkState:
    """Parse and validate a state document (see the JSON schema in README)."""
    try:
        doc = json.loads(document, object_pairs_hook=_reject_duplicate_keys)
    except StateValidationError:
        raise
    except json.JSONDecodeError as exc:
        raise StateParseError(f"malformed state document: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateValidationError("state document must be a JSON object")
    _check_keys(doc, {"sectors", "nodes"}, {"provisioned_slices"}, "state document")
    sectors_entry = doc["sectors"]
    nodes_entry = doc["nodes"]
    if not isinstance(sectors_entry, dict) or not sectors_entry:
        raise StateValidationError("'sectors' must be a non-empty object")
    if not isinstance(nodes_entry, dict) or not nodes_entry:
        raise StateValidationError("'nodes' must be a non-empty object")
    sectors = {sid: _sector_from_entry(sid, entry) for sid, entry in sectors_entry.items()}
    nodes = {nid: _node_from_entry(nid, entry) for nid, entry in nodes_entry.items()}
    slices = tuple(
        _slice_from_entry(i, entry)
        for i, entry in enumerate(doc.get("provisioned_slices", []))
    )
    state = NetworkState(sectors=sectors, nodes=nodes, provisioned_slices=slices)
    seen_slice_ids: set[str] = set()
    for config in slices:
        _validate_config(state, config)
        if config.slice_id is not None:
            if config.slice_id in seen_slice_ids:
                raise StateValidationError(
                    f"duplicate id or key {config.slice_id!r} in provisioned_slices"
                )
            seen_slice_ids.add(config.slice_id)
    return state


def state_to_dict(state: NetworkState) -> dict:
    doc: dict = {
        "sectors": {
            sector.id: {
                "active_users": sector.active_users,
                "load_percentage": sector.load_percent,
                "spectrum_available_mhz": {
                    "mmWave": sector.spectrum.mmwave_mhz,
                    "mid_band": sector.spectrum.mid_band_mhz,
                    "low_band": sector.spectrum.low_band_mhz,
                },
                **({"description": sector.context} if sector.context else {}),
            }
            for sector in state.sectors.values()
        },
        "nodes": {
            node.id: {
                "type": node.tier.value,
                "latency_to_ran_ms": dict(sorted(node.latency_to_sector.items())),
                "compute_load_percent": node.compute_load_percent,
                **({"description": node.context} if node.context else {}),
            }
            for node in state.nodes.values()
        },
    }
    if state.provisioned_slices:
        doc["provisioned_slices"] = [
            {
                "sector": config.sector_id,
                "band": config.band.value,
                "node": config.node_id,
                **({"slice_id": config.slice_id} if config.slice_id else {}),
            }
            for config in state.provisioned_slices
        ]
    return doc


def serialize_state(state: NetworkState) -> str:
    """Canonical textual form: sorted keys, stable layout, trailing newline.

    Round-trips: load_state(serialize_state(s)) is structurally equal to s.
    """
    return json.dumps(state_to_dict(state), indent=2, sort_keys=True) + "\n"


def _validate_config(state: NetworkState, config: SliceConfiguration) -> None:
    sector = state.sector(config.sector_id)
    state.node(config.node_id)
    if not isinstance(config.band, Band):
        raise ProvisioningError(f"unknown band {config.band!r}")
    if not sector.spectrum.available(config.band):
        raise ProvisioningError(
            f"band {config.band.value!r} has no available spectrum at sector "
            f"{config.sector_id!r}"
        )


def apply_provisioning(state: NetworkState, config: SliceConfiguration) -> NetworkState:
    """Record a slice in the ledger after validating it against the state.

    Sector and node loads are left untouched: the model captures a single
    provisioning decision, not load feedback.
    """
    try:
        _validate_config(state, config)
    except UnknownIdError as exc:
        raise ProvisioningError(str(exc)) from exc
    if config.slice_id is not None:
        for existing in state.provisioned_slices:
            if existing.slice_id == config.slice_id:
                raise ProvisioningError(f"slice id {config.slice_id!r} already provisioned")
    return replace(state, provisioned_slices=state.provisioned_slices + (config,))
