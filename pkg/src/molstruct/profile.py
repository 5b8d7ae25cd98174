"""Structural profile extraction.

A StructuralProfile bundles the seven structural facts the rest of the
toolkit reasons over: molecular formula, longest carbon chain outside
rings, aromatic ring count, ring names, functional group names, annotated
chiral centers with R/S configuration, and molecular weight.

Chiral center numbering uses canonical-SMILES atom positions so that the
same molecule yields the same numbers no matter how its input was ordered.

Stereo configurations come from CIP Rule 1a only: substituent branches are
compared sphere by sphere on atomic number, with duplicate phantom atoms
for double/triple bonds and ring closures.  An aromatic atom contributes
one phantom carrying the mean atomic number of its aromatic neighbors,
which keeps the comparison independent of any particular Kekule layout.
Isotope mass numbers break remaining ties; anything still tied is reported
as Unresolved rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from .catalog import Catalog, functional_group_names, ring_compound_names
from .elements import ATOMIC_WEIGHTS
from .errors import SizeLimitError
from .graph import (
    H_BRANCH,
    BondOrder,
    Chirality,
    Molecule,
    aromatic_neighbor_mean,
    perceive,
)
from .smiles import _permutation_parity, canonical_order

MAX_CHAIN_CARBONS = 64
_CIP_MAX_SPHERES = 16


class Configuration(Enum):
    """Stereocenter configuration label."""

    R = "R"
    S = "S"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True, slots=True)
class StructuralProfile:
    """The seven extracted structural components of one molecule.

    Multiset fields are stored as sorted tuples with repeats; chiral
    centers are (canonical atom position, configuration) pairs sorted by
    position.
    """

    formula: str
    longest_chain: int
    aromatic_ring_count: int
    ring_compounds: tuple[str, ...]
    functional_groups: tuple[str, ...]
    chiral_centers: tuple[tuple[int, Configuration], ...]
    molecular_weight: float


def molecular_formula(mol: Molecule) -> str:
    """Hill-order formula: C, H, then other elements alphabetically.

    Hydrogen atoms written as their own atoms fold into the H count.
    Isotope labels do not split elements ([13C] counts as C).
    """
    counts: dict[str, int] = {}
    hydrogens = 0
    for atom in mol.atoms:
        if atom.element == "H":
            hydrogens += 1
        else:
            counts[atom.element] = counts.get(atom.element, 0) + 1
        hydrogens += atom.total_h
    if hydrogens:
        counts["H"] = counts.get("H", 0) + hydrogens

    def part(symbol: str) -> str:
        n = counts[symbol]
        return symbol if n == 1 else f"{symbol}{n}"

    ordered: list[str] = []
    if "C" in counts:
        ordered.append(part("C"))
        if "H" in counts:
            ordered.append(part("H"))
        ordered.extend(part(s) for s in sorted(counts) if s not in ("C", "H"))
    else:
        ordered.extend(part(s) for s in sorted(counts))
    return "".join(ordered)


def molecular_weight(mol: Molecule) -> float:
    """Sum of standard atomic weights, rounded half-up to 2 decimals.

    A written isotope substitutes its mass number for the standard weight.
    Implicit and bracket-count hydrogens weigh the standard 1.008.
    """
    h_weight = Decimal(str(ATOMIC_WEIGHTS["H"]))
    total = Decimal(0)
    for atom in mol.atoms:
        if atom.isotope is not None:
            total += Decimal(atom.isotope)
        else:
            total += Decimal(str(ATOMIC_WEIGHTS[atom.element]))
        total += h_weight * atom.total_h
    return float(total.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _ring_atom_set(mol: Molecule) -> set[int]:
    assert mol.rings is not None
    return {a for ring in mol.rings for a in ring.atoms}


def longest_carbon_chain(mol: Molecule) -> int:
    """Atom count of the longest simple path over non-ring carbons.

    Exhaustive depth-first search; exact, not heuristic.  Bond order does
    not matter, only carbon-carbon connectivity outside rings.

    Raises:
        SizeLimitError: More than 64 non-ring carbons.
    """
    in_ring = _ring_atom_set(mol)
    carbons = [
        a.index for a in mol.atoms if a.element == "C" and a.index not in in_ring
    ]
    if len(carbons) > MAX_CHAIN_CARBONS:
        raise SizeLimitError(
            f"{len(carbons)} non-ring carbons exceed the {MAX_CHAIN_CARBONS}-atom "
            "chain search limit"
        )
    if not carbons:
        return 0
    carbon_set = set(carbons)
    adjacency = {
        i: [j for j in mol.neighbors(i) if j in carbon_set] for i in carbons
    }

    best = 1

    def extend(current: int, visited: set[int], length: int) -> None:
        nonlocal best
        best = max(best, length)
        for nxt in adjacency[current]:
            if nxt not in visited:
                visited.add(nxt)
                extend(nxt, visited, length + 1)
                visited.discard(nxt)

    for start in carbons:
        extend(start, {start}, 1)
    return best


def aromatic_ring_count(mol: Molecule) -> int:
    """Number of SSSR rings flagged aromatic."""
    assert mol.rings is not None
    return sum(1 for ring in mol.rings if ring.aromatic)


# ---------------------------------------------------------------------------
# CIP Rule 1a

_Spheres = tuple[tuple[float, ...], ...]


def _branch_spheres(mol: Molecule, center: int, first: int) -> tuple[_Spheres, _Spheres]:
    """Per-sphere (atomic numbers, isotopes) for one substituent branch.

    Sphere k holds the sorted-descending values of every node k bonds out
    along the hierarchical digraph rooted at the center.  Phantom nodes
    (multiple-bond duplicates, ring-closure duplicates, aromatic-system
    stand-ins) carry an atomic number but isotope 0 and no children.
    """
    if first == H_BRANCH:
        return ((1.0,),), ((0.0,),)

    # Frontier entries: (atom index or None for a phantom, z, isotope,
    # parent atom, atoms on the path from the center).  Phantoms carry a
    # value but are never expanded.
    _Entry = tuple[int | None, float, float, int, frozenset[int]]
    frontier: list[_Entry] = [
        (
            first,
            float(mol.atoms[first].atomic_number),
            float(mol.atoms[first].isotope or 0),
            center,
            frozenset({center}),
        )
    ]
    z_spheres: list[tuple[float, ...]] = []
    i_spheres: list[tuple[float, ...]] = []
    for _ in range(_CIP_MAX_SPHERES):
        if not frontier:
            break
        z_spheres.append(tuple(sorted((e[1] for e in frontier), reverse=True)))
        i_spheres.append(tuple(sorted((e[2] for e in frontier), reverse=True)))
        next_frontier: list[_Entry] = []
        for idx, _, _, parent, ancestors in frontier:
            if idx is None:
                continue
            atom = mol.atoms[idx]
            path = ancestors | {idx}
            for j, bond in mol.bonds_of(idx):
                zj = float(mol.atoms[j].atomic_number)
                extra = 0 if bond.order is BondOrder.AROMATIC else int(bond.order) - 1
                if j == parent:
                    phantoms = extra  # double/triple arrival duplicates the parent
                elif j in ancestors:
                    phantoms = 1 + extra  # ring closure duplicates the ancestor
                else:
                    next_frontier.append(
                        (j, zj, float(mol.atoms[j].isotope or 0), idx, path)
                    )
                    phantoms = extra
                next_frontier.extend([(None, zj, 0.0, idx, path)] * phantoms)
            if atom.is_aromatic:
                mean = aromatic_neighbor_mean(mol, idx)
                if mean is not None:
                    next_frontier.append((None, mean, 0.0, idx, path))
            next_frontier.extend([(None, 1.0, 0.0, idx, path)] * atom.total_h)
        frontier = next_frontier
    return tuple(z_spheres), tuple(i_spheres)


def chiral_centers(
    mol: Molecule, canonical_positions: dict[int, int] | None = None
) -> list[tuple[int, Configuration]]:
    """(canonical position, configuration) for every annotated 4-branch atom.

    Atoms with a chirality tag but fewer than four substituent branches
    (counting each hydrogen as a branch) are skipped: the tag cannot be
    interpreted as a tetrahedral center.  Ties surviving Rule 1a and the
    isotope tie-break yield UNRESOLVED.
    """
    if canonical_positions is None:
        canonical_positions = {a: k for k, a in enumerate(canonical_order(mol))}
    centers: list[tuple[int, Configuration]] = []
    for atom in mol.atoms:
        if atom.chirality is Chirality.NONE:
            continue
        recorded = list(atom.stereo_order)
        if len(recorded) != 4:
            continue
        keys = {
            branch: _branch_spheres(mol, atom.index, branch) for branch in set(recorded)
        }
        position = canonical_positions[atom.index]
        ranked = sorted(set(recorded), key=lambda b: keys[b], reverse=True)
        if len(set(keys.values())) != len(keys) or len(ranked) != 4:
            centers.append((position, Configuration.UNRESOLVED))
            continue
        p1, p2, p3, p4 = ranked
        parity = _permutation_parity(recorded, [p4, p1, p2, p3])
        tag = atom.chirality
        if parity:
            tag = (
                Chirality.CLOCKWISE
                if tag is Chirality.ANTICLOCKWISE
                else Chirality.ANTICLOCKWISE
            )
        centers.append(
            (position, Configuration.R if tag is Chirality.ANTICLOCKWISE else Configuration.S)
        )
    centers.sort(key=lambda item: item[0])
    return centers


def extract_profile(mol: Molecule, catalog: Catalog | None = None) -> StructuralProfile:
    """All seven structural components of a perceived molecule.

    Pure function of the molecular graph.  Runs perception itself when the
    molecule has none yet.

    Raises:
        SizeLimitError: Propagated from the chain search.
    """
    if mol.rings is None:
        perceive(mol)
    rings = ring_compound_names(mol, catalog)
    groups = functional_group_names(mol, catalog)
    return StructuralProfile(
        formula=molecular_formula(mol),
        longest_chain=longest_carbon_chain(mol),
        aromatic_ring_count=aromatic_ring_count(mol),
        ring_compounds=tuple(sorted(rings.elements())),
        functional_groups=tuple(sorted(groups.elements())),
        chiral_centers=tuple(chiral_centers(mol)),
        molecular_weight=molecular_weight(mol),
    )
