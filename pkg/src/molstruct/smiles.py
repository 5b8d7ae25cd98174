"""SMILES reading, writing, and canonicalization.

The grammar is the common organic subset: plain atoms B C N O P S F Cl Br I
(lowercase b c n o p s for aromatic), bracket atoms with isotope, chirality
(@ / @@), hydrogen count, and charge, ring closures including %nn, branches,
dot disconnection, and the bond symbols - = # : / \\.  Directional bonds are
kept as annotations but never interpreted as cis/trans stereo.

Parsing is total: it returns either a perceived Molecule or a
ParseDiagnostic naming the failure kind and byte offset, and never raises
on arbitrary input.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from enum import Enum

from .elements import (
    AROMATIC_BRACKET,
    AROMATIC_ORGANIC,
    ORGANIC_SUBSET,
    SYMBOL_TO_NUMBER,
)
from .errors import AromaticityError, ValenceError
from .graph import (
    H_BRANCH,
    Atom,
    Bond,
    BondOrder,
    Chirality,
    Molecule,
    _allowed_valences,
    _sigma_valence,
    assign_implicit_hydrogens,
    perceive_aromaticity,
    perceive_rings,
    relabel,
)

MAX_CHARGE = 15
MAX_ISOTOPE = 999


class TokenKind(Enum):
    ORGANIC_ATOM = "organic_atom"
    BRACKET_ATOM = "bracket_atom"
    BOND = "bond"
    RING_CLOSURE = "ring_closure"
    BRANCH_OPEN = "branch_open"
    BRANCH_CLOSE = "branch_close"
    DOT = "dot"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class SmilesToken:
    """One lexical unit. Token texts concatenate back to the input."""

    kind: TokenKind
    text: str
    position: int


class DiagnosticKind(Enum):
    UNCLOSED_RING = "UnclosedRing"
    UNBALANCED_BRANCH = "UnbalancedBranch"
    BAD_BRACKET_ATOM = "BadBracketAtom"
    VALENCE_VIOLATION = "ValenceViolation"
    UNKNOWN_ELEMENT = "UnknownElement"
    EMPTY_INPUT = "EmptyInput"


@dataclass(frozen=True, slots=True)
class ParseDiagnostic:
    """Why a SMILES string was rejected and where."""

    kind: DiagnosticKind
    message: str
    position: int


_TWO_LETTER_ORGANIC = ("Cl", "Br")
_ONE_LETTER_ORGANIC = frozenset("BCNOPSFI")
_BOND_CHARS = {"-", "=", "#", ":", "/", "\\"}

_BOND_ORDER_FOR_CHAR = {
    "-": BondOrder.SINGLE,
    "=": BondOrder.DOUBLE,
    "#": BondOrder.TRIPLE,
    ":": BondOrder.AROMATIC,
    "/": BondOrder.SINGLE,
    "\\": BondOrder.SINGLE,
}

_BRACKET_RE = re.compile(
    r"""\[
    (?P<isotope>\d+)?
    (?P<symbol>se|as|[A-Z][a-z]?|[bcnops])
    (?P<stereo>@@|@)?
    (?P<hcount>H\d*)?
    (?P<charge>\+\d+|-\d+|\++|-+)?
    \]""",
    re.VERBOSE,
)


def tokenize(text: str) -> list[SmilesToken]:
    """Split a SMILES string into tokens.

    Unknown characters become UNKNOWN tokens rather than errors; the parser
    turns them into diagnostics.  An unterminated bracket atom is returned
    as a BRACKET_ATOM token running to the end of the input.

    Args:
        text: Raw SMILES text.

    Returns:
        Tokens whose concatenated texts equal ``text``.
    """
    tokens: list[SmilesToken] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "[":
            end = text.find("]", i)
            if end == -1:
                tokens.append(SmilesToken(TokenKind.BRACKET_ATOM, text[i:], i))
                break
            tokens.append(SmilesToken(TokenKind.BRACKET_ATOM, text[i : end + 1], i))
            i = end + 1
        elif text.startswith(_TWO_LETTER_ORGANIC, i):
            tokens.append(SmilesToken(TokenKind.ORGANIC_ATOM, text[i : i + 2], i))
            i += 2
        elif ch in _ONE_LETTER_ORGANIC or ch in AROMATIC_ORGANIC:
            tokens.append(SmilesToken(TokenKind.ORGANIC_ATOM, ch, i))
            i += 1
        elif ch in _BOND_CHARS:
            tokens.append(SmilesToken(TokenKind.BOND, ch, i))
            i += 1
        elif ch.isdigit():
            tokens.append(SmilesToken(TokenKind.RING_CLOSURE, ch, i))
            i += 1
        elif ch == "%" and i + 2 < n and text[i + 1].isdigit() and text[i + 2].isdigit():
            tokens.append(SmilesToken(TokenKind.RING_CLOSURE, text[i : i + 3], i))
            i += 3
        elif ch == "(":
            tokens.append(SmilesToken(TokenKind.BRANCH_OPEN, ch, i))
            i += 1
        elif ch == ")":
            tokens.append(SmilesToken(TokenKind.BRANCH_CLOSE, ch, i))
            i += 1
        elif ch == ".":
            tokens.append(SmilesToken(TokenKind.DOT, ch, i))
            i += 1
        else:
            tokens.append(SmilesToken(TokenKind.UNKNOWN, ch, i))
            i += 1
    return tokens


def _parse_bracket(token: SmilesToken) -> Atom | ParseDiagnostic:
    text = token.text
    pos = token.position
    if not text.endswith("]"):
        return ParseDiagnostic(DiagnosticKind.BAD_BRACKET_ATOM, "unterminated bracket atom", pos)
    match = _BRACKET_RE.fullmatch(text)
    if match is None:
        return ParseDiagnostic(
            DiagnosticKind.BAD_BRACKET_ATOM, f"malformed bracket atom {text!r}", pos
        )
    raw_symbol = match.group("symbol")
    aromatic = raw_symbol[0].islower()
    if aromatic and raw_symbol not in AROMATIC_BRACKET:
        return ParseDiagnostic(
            DiagnosticKind.UNKNOWN_ELEMENT,
            f"element {raw_symbol!r} cannot be aromatic",
            pos + match.start("symbol"),
        )
    symbol = raw_symbol.capitalize() if aromatic else raw_symbol
    if symbol not in SYMBOL_TO_NUMBER:
        return ParseDiagnostic(
            DiagnosticKind.UNKNOWN_ELEMENT,
            f"unknown element symbol {raw_symbol!r}",
            pos + match.start("symbol"),
        )

    isotope: int | None = None
    if match.group("isotope"):
        isotope = int(match.group("isotope"))
        if isotope > MAX_ISOTOPE:
            return ParseDiagnostic(
                DiagnosticKind.BAD_BRACKET_ATOM, f"isotope {isotope} above {MAX_ISOTOPE}", pos
            )

    hcount = 0
    if match.group("hcount"):
        digits = match.group("hcount")[1:]
        hcount = int(digits) if digits else 1
        if symbol == "H" and hcount:
            return ParseDiagnostic(
                DiagnosticKind.BAD_BRACKET_ATOM, "hydrogen atom with a hydrogen count", pos
            )

    charge = 0
    raw_charge = match.group("charge")
    if raw_charge:
        if raw_charge in ("+", "-") or raw_charge.strip("+") == "" or raw_charge.strip("-") == "":
            charge = len(raw_charge) if raw_charge[0] == "+" else -len(raw_charge)
        else:
            charge = int(raw_charge)
        if abs(charge) > MAX_CHARGE:
            return ParseDiagnostic(
                DiagnosticKind.BAD_BRACKET_ATOM, f"charge magnitude above {MAX_CHARGE}", pos
            )

    stereo = Chirality.NONE
    if match.group("stereo") == "@":
        stereo = Chirality.ANTICLOCKWISE
    elif match.group("stereo") == "@@":
        stereo = Chirality.CLOCKWISE

    return Atom(
        element=symbol,
        charge=charge,
        explicit_h=hcount,
        isotope=isotope,
        chirality=stereo,
        bracket=True,
        written_aromatic=aromatic,
        is_aromatic=aromatic,
        position=pos,
    )


@dataclass(slots=True)
class _PendingBond:
    order: BondOrder
    direction: str | None
    position: int


class _Builder:
    """Accumulates atoms/bonds and the stereo neighbor bookkeeping."""

    def __init__(self) -> None:
        self.atoms: list[Atom] = []
        self.bonds: list[Bond] = []
        self.stereo: dict[int, list[object]] = {}
        self.bond_keys: set[tuple[int, int]] = set()

    def add_atom(self, atom: Atom) -> int:
        idx = len(self.atoms)
        atom.index = idx
        self.atoms.append(atom)
        order: list[object] = []
        if atom.chirality is not Chirality.NONE:
            self.stereo[idx] = order
        return idx

    def note_neighbor(self, of: int, entry: object) -> None:
        if of in self.stereo:
            self.stereo[of].append(entry)

    def fill_ring_slot(self, of: int, digit_key: str, neighbor: int) -> None:
        if of in self.stereo:
            slots = self.stereo[of]
            for k, entry in enumerate(slots):
                if entry == ("ring", digit_key):
                    slots[k] = neighbor
                    return

    def add_bond(self, a: int, b: int, order: BondOrder, direction: str | None) -> bool:
        key = (min(a, b), max(a, b))
        if a == b or key in self.bond_keys:
            return False
        self.bond_keys.add(key)
        self.bonds.append(Bond(a=a, b=b, order=order, direction=direction))
        return True


def parse(text: str) -> Molecule | ParseDiagnostic:
    """Parse SMILES text into a perceived molecule.

    Never raises on bad input: every failure comes back as a
    ParseDiagnostic with a kind and the byte offset of the offending
    character.  On success the molecule has implicit hydrogens, SSSR
    rings, and aromaticity already perceived.

    Args:
        text: SMILES string (ASCII).

    Returns:
        A Molecule, or a ParseDiagnostic explaining the rejection.
    """
    stripped = text.strip()
    if not stripped:
        return ParseDiagnostic(DiagnosticKind.EMPTY_INPUT, "empty input", 0)
    offset = text.index(stripped[0])
    return _parse_stripped(stripped, offset)


def _parse_stripped(text: str, base: int) -> Molecule | ParseDiagnostic:
    def diag(kind: DiagnosticKind, message: str, position: int) -> ParseDiagnostic:
        return ParseDiagnostic(kind, message, base + position)

    builder = _Builder()
    prev: int | None = None
    pending: _PendingBond | None = None
    # (anchor atom, atom count at open, position of '(')
    branch_stack: list[tuple[int, int, int]] = []
    # open ring digit -> (atom, order, direction, position)
    open_rings: dict[str, tuple[int, BondOrder | None, str | None, int]] = {}
    last_was_dot = False

    for token in tokenize(text):
        kind = token.kind
        if kind is TokenKind.UNKNOWN:
            return diag(
                DiagnosticKind.UNKNOWN_ELEMENT,
                f"unexpected character {token.text!r}",
                token.position,
            )

        if kind in (TokenKind.ORGANIC_ATOM, TokenKind.BRACKET_ATOM):
            if kind is TokenKind.ORGANIC_ATOM:
                aromatic = token.text[0].islower()
                symbol = token.text.capitalize() if aromatic else token.text
                if aromatic and token.text not in AROMATIC_ORGANIC:
                    return diag(
                        DiagnosticKind.UNKNOWN_ELEMENT,
                        f"element {token.text!r} cannot be aromatic",
                        token.position,
                    )
                atom = Atom(
                    element=symbol,
                    written_aromatic=aromatic,
                    is_aromatic=aromatic,
                    position=base + token.position,
                )
            else:
                result = _parse_bracket(token)
                if isinstance(result, ParseDiagnostic):
                    return ParseDiagnostic(result.kind, result.message, base + result.position)
                atom = result
                atom.position = base + token.position
            idx = builder.add_atom(atom)
            if prev is not None:
                order, direction = _resolve_order(pending, builder.atoms[prev], atom)
                builder.add_bond(prev, idx, order, direction)
                builder.note_neighbor(prev, idx)
                builder.note_neighbor(idx, prev)
            # A bracket hydrogen on a chiral atom occupies the neighbor slot
            # right after the incoming bond.
            if atom.chirality is not Chirality.NONE and atom.explicit_h:
                for _ in range(atom.explicit_h):
                    builder.note_neighbor(idx, H_BRANCH)
            pending = None
            prev = idx
            last_was_dot = False
            continue

        if kind is TokenKind.BOND:
            if prev is None:
                return diag(
                    DiagnosticKind.UNKNOWN_ELEMENT,
                    "bond symbol with no preceding atom",
                    token.position,
                )
            if pending is not None:
                return diag(
                    DiagnosticKind.UNKNOWN_ELEMENT,
                    "two bond symbols in a row",
                    token.position,
                )
            pending = _PendingBond(
                order=_BOND_ORDER_FOR_CHAR[token.text],
                direction=token.text if token.text in ("/", "\\") else None,
                position=token.position,
            )
            continue

        if kind is TokenKind.DOT:
            if pending is not None:
                return diag(
                    DiagnosticKind.UNKNOWN_ELEMENT,
                    "dot is not allowed after a bond symbol",
                    pending.position,
                )
            if prev is None:
                return diag(
                    DiagnosticKind.UNKNOWN_ELEMENT,
                    "dot with no preceding atom",
                    token.position,
                )
            if branch_stack:
                return diag(
                    DiagnosticKind.UNBALANCED_BRANCH,
                    "dot inside a branch",
                    token.position,
                )
            prev = None
            last_was_dot = True
            continue

        if kind is TokenKind.RING_CLOSURE:
            if prev is None:
                return diag(
                    DiagnosticKind.UNCLOSED_RING,
                    "ring closure with no preceding atom",
                    token.position,
                )
            digit = token.text
            key = digit.lstrip("%")
            if key in open_rings:
                other, open_order, open_dir, open_pos = open_rings.pop(key)
                if other == prev:
                    return diag(
                        DiagnosticKind.UNCLOSED_RING,
                        "ring closure bonds an atom to itself",
                        token.position,
                    )
                close_order = pending.order if pending else None
                close_dir = pending.direction if pending else None
                if open_order is not None and close_order is not None and open_order != close_order:
                    return diag(
                        DiagnosticKind.UNCLOSED_RING,
                        "ring closure bond symbols disagree",
                        token.position,
                    )
                order = open_order if open_order is not None else close_order
                if order is None:
                    a, b = builder.atoms[other], builder.atoms[prev]
                    order = (
                        BondOrder.AROMATIC
                        if a.written_aromatic and b.written_aromatic
                        else BondOrder.SINGLE
                    )
                if not builder.add_bond(other, prev, order, open_dir or close_dir):
                    return diag(
                        DiagnosticKind.UNCLOSED_RING,
                        "ring closure duplicates an existing bond",
                        token.position,
                    )
                builder.fill_ring_slot(other, key, prev)
                builder.note_neighbor(prev, other)
            else:
                open_rings[key] = (
                    prev,
                    pending.order if pending else None,
                    pending.direction if pending else None,
                    token.position,
                )
                builder.note_neighbor(prev, ("ring", key))
            pending = None
            continue

        if kind is TokenKind.BRANCH_OPEN:
            if prev is None:
                return diag(
                    DiagnosticKind.UNBALANCED_BRANCH,
                    "branch with no preceding atom",
                    token.position,
                )
            if pending is not None:
                return diag(
                    DiagnosticKind.UNBALANCED_BRANCH,
                    "bond symbol before a branch open",
                    token.position,
                )
            branch_stack.append((prev, len(builder.atoms), token.position))
            continue

        if kind is TokenKind.BRANCH_CLOSE:
            if not branch_stack:
                return diag(
                    DiagnosticKind.UNBALANCED_BRANCH,
                    "branch close without a matching open",
                    token.position,
                )
            if pending is not None:
                return diag(
                    DiagnosticKind.UNBALANCED_BRANCH,
                    "dangling bond symbol before a branch close",
                    token.position,
                )
            anchor, count_at_open, _ = branch_stack.pop()
            if len(builder.atoms) == count_at_open:
                return diag(DiagnosticKind.UNBALANCED_BRANCH, "empty branch", token.position)
            prev = anchor
            continue

    if branch_stack:
        return diag(
            DiagnosticKind.UNBALANCED_BRANCH,
            "branch was never closed",
            branch_stack[0][2],
        )
    if open_rings:
        first = min(open_rings.values(), key=lambda item: item[3])
        return diag(DiagnosticKind.UNCLOSED_RING, "ring closure was never matched", first[3])
    if pending is not None:
        return diag(DiagnosticKind.UNKNOWN_ELEMENT, "dangling bond symbol", pending.position)
    if last_was_dot:
        return diag(DiagnosticKind.UNKNOWN_ELEMENT, "dot with no following atom", len(text) - 1)
    if not builder.atoms:
        return ParseDiagnostic(DiagnosticKind.EMPTY_INPUT, "no atoms in input", base)

    for idx, order in builder.stereo.items():
        builder.atoms[idx].stereo_order = tuple(
            entry if isinstance(entry, int) else H_BRANCH for entry in order
        )

    molecule = Molecule(builder.atoms, builder.bonds)
    try:
        assign_implicit_hydrogens(molecule)
        perceive_rings(molecule)
        perceive_aromaticity(molecule)
    except ValenceError as exc:
        return ParseDiagnostic(DiagnosticKind.VALENCE_VIOLATION, str(exc), max(exc.position, 0))
    except AromaticityError as exc:
        return ParseDiagnostic(DiagnosticKind.VALENCE_VIOLATION, str(exc), max(exc.position, 0))
    return molecule


def _resolve_order(
    pending: _PendingBond | None, a: Atom, b: Atom
) -> tuple[BondOrder, str | None]:
    if pending is not None:
        return pending.order, pending.direction
    if a.written_aromatic and b.written_aromatic:
        return BondOrder.AROMATIC, None
    return BondOrder.SINGLE, None


def parse_strict(text: str) -> Molecule:
    """Parse, raising ValueError with the diagnostic text on failure."""
    result = parse(text)
    if isinstance(result, ParseDiagnostic):
        raise ValueError(f"{result.kind.value} at {result.position}: {result.message}")
    return result


# ---------------------------------------------------------------------------
# Writing


def _predicted_bare_h(mol: Molecule, idx: int) -> int | None:
    """Hydrogen count a reader would infer for the atom written bare."""
    atom = mol.atoms[idx]
    sigma, has_multiple = _sigma_valence(mol, idx)
    for valence in _allowed_valences(atom):
        if sigma > valence:
            continue
        count = valence - sigma
        if atom.is_aromatic and not has_multiple and count >= 1:
            count -= 1
        return count
    return None


def _needs_bracket(mol: Molecule, atom: Atom) -> bool:
    """True when the atom cannot be written as a bare organic-subset symbol.

    Brackets are dropped when redundant, so ``[CH4]`` normalizes to ``C``;
    they are forced whenever the bare form would re-read with a different
    hydrogen count, which is what puts the H back on pyrrole's ``[nH]``.
    """
    if atom.charge or atom.isotope is not None or atom.chirality is not Chirality.NONE:
        return True
    if atom.element not in ORGANIC_SUBSET:
        return True
    if atom.is_aromatic and atom.element.lower() not in AROMATIC_ORGANIC:
        return True
    return _predicted_bare_h(mol, atom.index) != atom.total_h


def _atom_text(mol: Molecule, atom: Atom, out_stereo: Chirality) -> str:
    symbol = atom.element.lower() if atom.is_aromatic else atom.element
    if not _needs_bracket(mol, atom):
        return symbol
    parts = ["["]
    if atom.isotope is not None:
        parts.append(str(atom.isotope))
    parts.append(symbol)
    if out_stereo is not Chirality.NONE:
        parts.append(out_stereo.value)
    hydrogens = atom.total_h
    if hydrogens == 1:
        parts.append("H")
    elif hydrogens > 1:
        parts.append(f"H{hydrogens}")
    if atom.charge:
        sign = "+" if atom.charge > 0 else "-"
        parts.append(sign if abs(atom.charge) == 1 else f"{sign}{abs(atom.charge)}")
    parts.append("]")
    return "".join(parts)


def _permutation_parity(source: list[int], target: list[int]) -> int:
    """0 for even, 1 for odd; lists must be rearrangements of each other."""
    remaining = list(target)
    perm: list[int] = []
    for item in source:
        slot = remaining.index(item)
        remaining[slot] = object()  # consume duplicates left to right
        perm.append(slot)
    swaps = 0
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            swaps += 1
    return swaps % 2


def _output_stereo(atom: Atom, out_order: list[int]) -> Chirality:
    """Chirality tag adjusted from recorded neighbor order to output order."""
    if atom.chirality is Chirality.NONE:
        return Chirality.NONE
    recorded = list(atom.stereo_order)
    if not recorded or sorted(recorded) != sorted(out_order):
        return atom.chirality
    if _permutation_parity(recorded, out_order) == 0:
        return atom.chirality
    return (
        Chirality.CLOCKWISE
        if atom.chirality is Chirality.ANTICLOCKWISE
        else Chirality.ANTICLOCKWISE
    )


def _bond_text(mol: Molecule, bond: Bond, from_atom: int, to_atom: int) -> str:
    if bond.direction is not None and bond.order is BondOrder.SINGLE:
        return bond.direction if bond.a == from_atom else ("\\" if bond.direction == "/" else "/")
    a = mol.atoms[from_atom]
    b = mol.atoms[to_atom]
    default = BondOrder.AROMATIC if (a.is_aromatic and b.is_aromatic) else BondOrder.SINGLE
    if bond.order is default:
        return ""
    return {
        BondOrder.SINGLE: "-",
        BondOrder.DOUBLE: "=",
        BondOrder.TRIPLE: "#",
        BondOrder.AROMATIC: ":",
    }[bond.order]


def _write_component(mol: Molecule, start: int, key) -> tuple[str, list[int]]:
    """One component as (SMILES text, atom emission order), visiting by ``key``."""
    parent: dict[int, int] = {start: -1}
    order: list[int] = [start]
    children: dict[int, list[int]] = {start: []}
    closures: dict[int, list[int]] = {}
    closure_bonds: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    visited = {start}
    # Lazy depth-first walk: a neighbor still unvisited when the walk
    # returns to ``cur`` has been reached some other way, so the bond
    # becomes a ring closure rather than a branch.
    stack: list[tuple[int, list[int], int]] = [(start, sorted(mol.neighbors(start), key=key), 0)]
    while stack:
        cur, nbrs, pos = stack.pop()
        advanced = False
        while pos < len(nbrs):
            nxt = nbrs[pos]
            pos += 1
            edge = (min(cur, nxt), max(cur, nxt))
            if edge in seen_edges:
                continue
            seen_edges.add(edge)
            if nxt in visited:
                closure_bonds.append((cur, nxt))
                closures.setdefault(cur, []).append(nxt)
                closures.setdefault(nxt, []).append(cur)
                continue
            visited.add(nxt)
            parent[nxt] = cur
            children[cur].append(nxt)
            children[nxt] = []
            order.append(nxt)
            stack.append((cur, nbrs, pos))
            stack.append((nxt, sorted(mol.neighbors(nxt), key=key), 0))
            advanced = True
            break
        if advanced:
            continue

    emit_rank = {atom: i for i, atom in enumerate(order)}
    # Assign ring-closure digit numbers in emission order, reusing freed ones.
    digit_of: dict[tuple[int, int], int] = {}
    events: dict[int, list[tuple[int, int]]] = {}
    for a, b in closure_bonds:
        first, second = (a, b) if emit_rank[a] < emit_rank[b] else (b, a)
        events.setdefault(first, []).append((emit_rank[second], second))
    free = list(range(99, 0, -1))
    close_at: dict[int, list[int]] = {}
    for atom in order:
        for _, partner in sorted(events.get(atom, [])):
            digit = free.pop()
            digit_of[(atom, partner)] = digit
            digit_of[(partner, atom)] = digit
            close_at.setdefault(partner, []).append(digit)
        for digit in close_at.get(atom, []):
            free.append(digit)
            free.sort(reverse=True)

    def closure_text(atom: int) -> tuple[str, list[int]]:
        """Digit text emitted right after ``atom`` plus its closure partners in slot order."""
        opens = [(digit_of[(atom, p)], p) for _, p in sorted(events.get(atom, []))]
        closes = [
            (digit_of[(atom, p)], p)
            for p in closures.get(atom, [])
            if emit_rank[p] < emit_rank[atom]
        ]
        text = []
        partners = []
        for digit, partner in closes + opens:
            bond = mol.bond_between(atom, partner)
            assert bond is not None
            text.append(_bond_text(mol, bond, atom, partner))
            text.append(str(digit) if digit < 10 else f"%{digit:02d}")
            partners.append(partner)
        return "".join(text), partners

    pieces: list[str] = []

    # Iterative emission to survive long chains.
    def emit_iterative(root: int) -> None:
        work: list[object] = [("atom", root)]
        while work:
            item = work.pop()
            if isinstance(item, str):
                pieces.append(item)
                continue
            _, atom = item
            closure_str, closure_partners = closure_text(atom)
            record = mol.atoms[atom]
            out_order = []
            if parent[atom] != -1:
                out_order.append(parent[atom])
            if record.chirality is not Chirality.NONE:
                out_order.extend(H_BRANCH for _ in range(record.total_h))
            out_order.extend(closure_partners)
            out_order.extend(children[atom])
            pieces.append(_atom_text(mol, record, _output_stereo(record, out_order)))
            pieces.append(closure_str)
            kids = children[atom]
            tail: list[object] = []
            for i, kid in enumerate(kids):
                bond = mol.bond_between(atom, kid)
                assert bond is not None
                bond_str = _bond_text(mol, bond, atom, kid)
                if i < len(kids) - 1:
                    tail.append("(" + bond_str)
                    tail.append(("atom", kid))
                    tail.append(")")
                else:
                    tail.append(bond_str)
                    tail.append(("atom", kid))
            work.extend(reversed(tail))

    emit_iterative(start)
    return "".join(pieces), order


def write(mol: Molecule) -> str:
    """Write SMILES following input atom order.

    Components start at their lowest atom index and are joined with dots in
    first-atom order; neighbor traversal is by ascending atom index.  The
    output re-parses to a graph isomorphic to ``mol`` including chirality.
    """
    parts = [
        _write_component(mol, comp[0], key=lambda i: i)[0] for comp in mol.components()
    ]
    return ".".join(parts)


# ---------------------------------------------------------------------------
# Canonicalization


def _initial_invariants(mol: Molecule) -> list[tuple]:
    return [
        (
            atom.atomic_number,
            atom.charge,
            mol.heavy_degree(atom.index),
            atom.total_h,
            atom.is_aromatic,
            atom.isotope or 0,
        )
        for atom in mol.atoms
    ]


def _dense_ranks(keys: list) -> list[int]:
    ordered = sorted(set(keys))
    rank_of = {key: rank for rank, key in enumerate(ordered)}
    return [rank_of[key] for key in keys]


def _refine(mol: Molecule, ranks: list[int]) -> list[int]:
    """Iterate neighborhood refinement until the partition stabilizes."""
    n_classes = len(set(ranks))
    while True:
        keys = [
            (
                ranks[i],
                tuple(
                    sorted(
                        (int(bond.order), ranks[j]) for j, bond in mol.bonds_of(i)
                    )
                ),
            )
            for i in range(len(mol.atoms))
        ]
        new_ranks = _dense_ranks(keys)
        new_classes = len(set(new_ranks))
        if new_classes == n_classes:
            return new_ranks
        ranks = new_ranks
        n_classes = new_classes


def canonical_ranks(mol: Molecule) -> list[int]:
    """Stable atom ranks from Morgan-style neighborhood refinement.

    Ties that survive refinement are possible for symmetric graphs; the
    canonical writer breaks them by trying each tied atom and keeping the
    smallest output string.
    """
    return _refine(mol, _dense_ranks(_initial_invariants(mol)))


def _component_min_string(
    mol: Molecule, comp: list[int], ranks: list[int]
) -> tuple[str, list[int]]:
    tied_class: list[int] | None = None
    by_rank: dict[int, list[int]] = {}
    for i in comp:
        by_rank.setdefault(ranks[i], []).append(i)
    for rank in sorted(by_rank):
        group = by_rank[rank]
        if len(group) > 1:
            tied_class = group
            break
    if tied_class is None:
        start = min(comp, key=lambda i: ranks[i])
        return _write_component(mol, start, key=lambda i: ranks[i])
    best: tuple[str, list[int]] | None = None
    for candidate in tied_class:
        seeded = _dense_ranks(
            [(ranks[i], 0 if i == candidate else 1) for i in range(len(mol.atoms))]
        )
        refined = _refine(mol, seeded)
        result = _component_min_string(mol, comp, refined)
        if best is None or result[0] < best[0]:
            best = result
    assert best is not None
    return best


def _canonical_parts(mol: Molecule) -> list[tuple[str, list[int]]]:
    ranks = canonical_ranks(mol)
    parts = [_component_min_string(mol, comp, ranks) for comp in mol.components()]
    parts.sort(key=lambda part: (part[0], part[1]))
    return parts


def canonicalize(mol: Molecule) -> str:
    """Canonical SMILES: invariant under input atom renumbering.

    Atom order comes from neighborhood refinement with string-minimizing
    tie-breaks; disconnected components are sorted lexicographically.
    """
    return ".".join(part[0] for part in _canonical_parts(mol))


def canonical_order(mol: Molecule) -> list[int]:
    """Input atom indices in canonical output order.

    Position in this list is the atom's canonical number: the number that
    rationale text uses when naming chiral centers, stable across input
    renumberings of the same molecule.
    """
    order: list[int] = []
    for _, part_order in _canonical_parts(mol):
        order.extend(part_order)
    return order


def random_equivalent(mol: Molecule, seed: int) -> str:
    """A randomly renumbered SMILES for the same molecule.

    Deterministic per seed: the atom order is shuffled with
    ``random.Random(seed)`` and the relabeled molecule written as is.

    Args:
        mol: Source molecule, fully perceived.
        seed: RNG seed; equal seeds give equal strings.

    Returns:
        A SMILES string that parses back to a graph isomorphic to ``mol``.
    """
    rng = random.Random(seed)
    new_index = list(range(len(mol.atoms)))
    rng.shuffle(new_index)
    return write(relabel(mol, new_index))
