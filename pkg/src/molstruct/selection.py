"""Rank candidate structures against a rationale.

The matching ratio asks: of the components the rationale asserts, what
fraction does a candidate structure satisfy?  Formula, chain length and
aromatic ring count must match exactly; ring and functional group
multisets score their Jaccard overlap; chirality compares the multiset
of configuration labels (atom numbering is representation-dependent, so
indices are ignored); molecular weight passes when candidate/claimed is
within [0.95, 1.05].  An IUPAC name can never be verified against a bare
structure and scores 0.  The overall ratio is the mean over the mask.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .catalog import Catalog
from .errors import EmptyRationaleError
from .graph import Molecule
from .profile import StructuralProfile, extract_profile
from .rationale import ComponentKind, Rationale
from .smiles import parse

WEIGHT_RATIO_LOW = 0.95
WEIGHT_RATIO_HIGH = 1.05


def _jaccard(claimed: tuple[str, ...], actual: tuple[str, ...]) -> float:
    if not claimed and not actual:
        return 1.0
    a, b = Counter(claimed), Counter(actual)
    return sum((a & b).values()) / sum((a | b).values())


def _weight_score(claimed: float, actual: float) -> float:
    if claimed <= 0:
        return 1.0 if actual == claimed else 0.0
    return 1.0 if WEIGHT_RATIO_LOW <= actual / claimed <= WEIGHT_RATIO_HIGH else 0.0


def _configuration_labels(value: object) -> Counter:
    return Counter(config.value for _, config in value)  # type: ignore[union-attr]


def _component_score(
    kind: ComponentKind, claimed: object, profile: StructuralProfile
) -> float:
    if kind is ComponentKind.FORMULA:
        return 1.0 if claimed == profile.formula else 0.0
    if kind is ComponentKind.LONGEST_CHAIN:
        return 1.0 if claimed == profile.longest_chain else 0.0
    if kind is ComponentKind.AROMATIC_RINGS:
        return 1.0 if claimed == profile.aromatic_ring_count else 0.0
    if kind is ComponentKind.RING_COMPOUNDS:
        return _jaccard(tuple(claimed), profile.ring_compounds)
    if kind is ComponentKind.FUNCTIONAL_GROUPS:
        return _jaccard(tuple(claimed), profile.functional_groups)
    if kind is ComponentKind.CHIRALITY:
        claimed_labels = _configuration_labels(claimed)
        actual_labels = _configuration_labels(profile.chiral_centers)
        return 1.0 if claimed_labels == actual_labels else 0.0
    if kind is ComponentKind.MOLECULAR_WEIGHT:
        return _weight_score(float(claimed), profile.molecular_weight)
    # An IUPAC name claim is unverifiable from the structure alone.
    return 0.0


def matching_ratio(
    rationale: Rationale,
    candidate: Molecule | StructuralProfile,
    catalog: Catalog | None = None,
    weights: Mapping[ComponentKind, float] | None = None,
) -> tuple[float, dict[ComponentKind, float]]:
    """Score a candidate structure against a rationale.

    Args:
        rationale: Claims to check.
        candidate: Structure, or its precomputed profile.
        catalog: Group/ring catalog used when profiling a molecule.
        weights: Optional per-component weights for the overall mean;
            missing components weigh 1.

    Returns:
        (overall ratio, per-component scores over the mask).

    Raises:
        EmptyRationaleError: The rationale mask is empty.
    """
    if not rationale.mask:
        raise EmptyRationaleError("cannot score against an empty rationale")
    profile = (
        candidate
        if isinstance(candidate, StructuralProfile)
        else extract_profile(candidate, catalog)
    )
    per_component = {
        kind: _component_score(kind, rationale.components[kind], profile)
        for kind in rationale.mask
    }
    if weights is None:
        overall = sum(per_component.values()) / len(per_component)
    else:
        total = sum(weights.get(kind, 1.0) for kind in per_component)
        if total <= 0:
            raise ValueError("component weights must sum to a positive value")
        overall = (
            sum(score * weights.get(kind, 1.0) for kind, score in per_component.items())
            / total
        )
    return overall, per_component


@dataclass(frozen=True, slots=True)
class CandidateScore:
    """One candidate's outcome; matching_ratio is None when unparseable."""

    smiles: str
    parse_ok: bool
    matching_ratio: float | None
    per_component: dict[ComponentKind, float]


@dataclass(frozen=True, slots=True)
class SelectionReport:
    per_candidate: tuple[CandidateScore, ...]
    selected_index: int
    selected_smiles: str
    all_failed: bool


def select(
    rationale: Rationale,
    candidates: Sequence[str],
    catalog: Catalog | None = None,
    weights: Mapping[ComponentKind, float] | None = None,
) -> SelectionReport:
    """Pick the candidate that best satisfies the rationale.

    Unparseable candidates rank below every parseable one.  Ties break
    toward the lowest index.  When every candidate fails to parse, index
    0 is reported with all_failed set.

    Raises:
        ValueError: Empty candidate list.
        EmptyRationaleError: The rationale mask is empty.
    """
    if not candidates:
        raise ValueError("candidate list is empty")
    if not rationale.mask:
        raise EmptyRationaleError("cannot select with an empty rationale")
    scored: list[CandidateScore] = []
    for smiles in candidates:
        molecule = parse(smiles)
        if isinstance(molecule, Molecule):
            ratio, per_component = matching_ratio(rationale, molecule, catalog, weights)
            scored.append(CandidateScore(smiles, True, ratio, per_component))
        else:
            scored.append(CandidateScore(smiles, False, None, {}))

    best_index = 0
    best = -math.inf
    any_ok = False
    for index, entry in enumerate(scored):
        if not entry.parse_ok:
            continue
        any_ok = True
        assert entry.matching_ratio is not None
        if entry.matching_ratio > best:
            best = entry.matching_ratio
            best_index = index
    if not any_ok:
        best_index = 0
    return SelectionReport(
        per_candidate=tuple(scored),
        selected_index=best_index,
        selected_smiles=candidates[best_index],
        all_failed=not any_ok,
    )
