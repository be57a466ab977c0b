"""Brute-force optimal configuration search.

The decision space is tiny by construction (sectors x bands x nodes), so the
optimum is found by exhaustive enumeration and total-order ranking. This
module is the ground truth the rest of the system is checked against: golden
standards for authored scenarios come from here, and the rule-based baseline
is strict-lexicon classification in front of the same search.

Ranking order: feasible first, then utility descending, then lower latency,
then lower sector load, then lexicographic (sector, band, node) with bands
ordered mmwave < mid_band < low_band. The comparator is total, so rankings
are deterministic and independent of enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intent import IntentProfile, Lexicon, classify_intent
from .model import Band, NetworkState, SliceConfiguration, latency
from .scoring import (
    DEFAULT_THRESHOLDS,
    ConstraintReport,
    ScoreBreakdown,
    Thresholds,
    check_constraints,
    compute_utility,
)

BAND_RANK_ORDER: dict[Band, int] = {Band.MMWAVE: 0, Band.MID_BAND: 1, Band.LOW_BAND: 2}


class OracleError(Exception):
    pass


@dataclass(frozen=True)
class RankedConfiguration:
    config: SliceConfiguration
    breakdown: ScoreBreakdown
    constraints: ConstraintReport
    rank: int

    @property
    def feasible(self) -> bool:
        return self.constraints.feasible


@dataclass(frozen=True)
class RuleBasedResult:
    """Outcome of the rule-based baseline: chosen config plus an audit trail."""

    config: SliceConfiguration
    profile: IntentProfile
    ranking: tuple[RankedConfiguration, ...]
    rationale: tuple[str, ...]


def enumerate_candidates(
    state: NetworkState, profile: IntentProfile
) -> list[SliceConfiguration]:
    """Materialise the search space for a profile.

    Restricted to the profile's target sector when present; bands with zero
    spectrum at a sector are excluded up front.
    """
    if profile.target_sector is not None:
        sector_ids = [profile.target_sector]
    else:
        sector_ids = sorted(state.sectors)
    candidates: list[SliceConfiguration] = []
    for sector_id in sector_ids:
        sector = state.sector(sector_id)
        for band in Band:
            if not sector.spectrum.available(band):
                continue
            for node_id in sorted(state.nodes):
                candidates.append(
                    SliceConfiguration(sector_id=sector_id, band=band, node_id=node_id)
                )
    return candidates


def solve(
    state: NetworkState,
    profile: IntentProfile,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> list[RankedConfiguration]:
    """Rank every candidate configuration; the head is the arg-max.

    When no candidate is feasible the head is the best-ranked infeasible one,
    flagged through its ConstraintReport rather than raised, so callers can
    still score least-bad fallbacks.
    """
    candidates = enumerate_candidates(state, profile)
    if not candidates:
        raise OracleError("empty candidate set: no sector has an available band")
    scored = [
        (
            config,
            compute_utility(config, profile, state),
            check_constraints(config, profile, state, thresholds),
        )
        for config in candidates
    ]

    def sort_key(item: tuple[SliceConfiguration, ScoreBreakdown, ConstraintReport]):
        config, breakdown, constraints = item
        return (
            0 if constraints.feasible else 1,
            -breakdown.utility,
            latency(state, config.sector_id, config.node_id),
            state.sector(config.sector_id).load_percent,
            config.sector_id,
            BAND_RANK_ORDER[config.band],
            config.node_id,
        )

    scored.sort(key=sort_key)
    return [
        RankedConfiguration(config=c, breakdown=b, constraints=r, rank=i + 1)
        for i, (c, b, r) in enumerate(scored)
    ]


def rule_based_provision(
    intent_text: str,
    state: NetworkState,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    lexicon: Lexicon | None = None,
) -> RuleBasedResult:
    """The deterministic baseline: frozen-lexicon classification + solve.

    No synonym expansion happens here; when the text matches no keyword the
    class falls through to the eMBB default and the rationale records it, so
    misclassifications stay auditable.
    """
    if lexicon is None:
        from .data import strict_lexicon

        lexicon = strict_lexicon()
    profile = classify_intent(intent_text, state, lexicon)
    rationale = [
        f"traffic_class={profile.traffic_class.value}",
        f"bandwidth={profile.bandwidth_category.value}",
        f"tau_req_ms={profile.tau_req_ms:g}",
        f"target_sector={profile.target_sector or '-'}",
    ]
    if profile.matched_keywords:
        rationale.append("matched_keywords=" + ",".join(profile.matched_keywords))
    else:
        rationale.append(
            "no lexicon keyword matched; defaulted to "
            f"{profile.traffic_class.value}/{profile.bandwidth_category.value}"
        )
    ranking = solve(state, profile, thresholds)
    head = ranking[0]
    if not head.feasible:
        rationale.append("no feasible candidate; returning best infeasible fallback")
    return RuleBasedResult(
        config=head.config,
        profile=profile,
        ranking=tuple(ranking),
        rationale=tuple(rationale),
    )
