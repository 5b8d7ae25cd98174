"""SMILES parsing, diagnostics, writing, and canonicalization."""

from __future__ import annotations

import pytest

from molstruct.graph import Molecule
from molstruct.smiles import (
    DiagnosticKind,
    ParseDiagnostic,
    canonical_order,
    canonicalize,
    parse,
    parse_strict,
    random_equivalent,
    write,
)


def diagnostic(text: str) -> ParseDiagnostic:
    result = parse(text)
    assert isinstance(result, ParseDiagnostic), f"{text!r} parsed as a molecule"
    return result


class TestDiagnostics:
    @pytest.mark.parametrize(
        "text,kind,position",
        [
            ("", DiagnosticKind.EMPTY_INPUT, 0),
            ("   ", DiagnosticKind.EMPTY_INPUT, 0),
            ("C1CC", DiagnosticKind.UNCLOSED_RING, 1),
            ("C1CC2CC1", DiagnosticKind.UNCLOSED_RING, 4),
            ("C%10CC", DiagnosticKind.UNCLOSED_RING, 1),
            ("C(C", DiagnosticKind.UNBALANCED_BRANCH, 1),
            ("CC)C", DiagnosticKind.UNBALANCED_BRANCH, 2),
            ("C()C", DiagnosticKind.UNBALANCED_BRANCH, 2),
            ("[CH3", DiagnosticKind.BAD_BRACKET_ATOM, 0),
            ("[]", DiagnosticKind.BAD_BRACKET_ATOM, 0),
            ("[H3C]", DiagnosticKind.BAD_BRACKET_ATOM, 0),
            ("[CH3:1]", DiagnosticKind.BAD_BRACKET_ATOM, 0),
            ("[Cq]", DiagnosticKind.UNKNOWN_ELEMENT, 1),
            ("[Xx]", DiagnosticKind.UNKNOWN_ELEMENT, 1),
            ("Cq", DiagnosticKind.UNKNOWN_ELEMENT, 1),
            ("CX", DiagnosticKind.UNKNOWN_ELEMENT, 1),
            ("N(C)(C)(C)C", DiagnosticKind.VALENCE_VIOLATION, 0),
            ("C(C)(C)(C)(C)C", DiagnosticKind.VALENCE_VIOLATION, 0),
            ("c1ccc1", DiagnosticKind.VALENCE_VIOLATION, 0),
            ("c1cccc1", DiagnosticKind.VALENCE_VIOLATION, 0),
            ("C[nH]C", DiagnosticKind.VALENCE_VIOLATION, 1),
            ("=CC", DiagnosticKind.UNKNOWN_ELEMENT, 0),
            ("C=", DiagnosticKind.UNKNOWN_ELEMENT, 1),
            ("C.", DiagnosticKind.UNKNOWN_ELEMENT, 1),
            ("C..C", DiagnosticKind.UNKNOWN_ELEMENT, 2),
            ("C12CC12", DiagnosticKind.UNCLOSED_RING, 6),
        ],
    )
    def test_kind_and_position(
        self, text: str, kind: DiagnosticKind, position: int
    ) -> None:
        diag = diagnostic(text)
        assert diag.kind is kind
        assert diag.position == position

    def test_ring_bond_symbol_disagreement(self) -> None:
        assert diagnostic("C=1CCCCC-1").kind is DiagnosticKind.UNCLOSED_RING

    def test_ring_bond_symbol_agreement(self) -> None:
        mol = parse("C=1CCCCC=1")
        assert isinstance(mol, Molecule)

    def test_valence_legal_cumulated_doubles_parse(self) -> None:
        # ethylenedione and methylenecyclopropene are valence-consistent
        assert isinstance(parse("O=C=C=O"), Molecule)
        assert isinstance(parse("C1=CC1=C"), Molecule)

    def test_nested_branch_is_tolerated(self) -> None:
        assert canonicalize(parse_strict("C((C))")) == canonicalize(parse_strict("CC"))

    def test_degenerate_stereo_tag_parses(self) -> None:
        # three-neighbor @@ carries no usable order; structure still loads
        assert isinstance(parse("C[C@@](C)C"), Molecule)

    def test_charge_limit(self) -> None:
        assert diagnostic("[C+16]").kind is DiagnosticKind.BAD_BRACKET_ATOM

    def test_isotope_limit(self) -> None:
        assert diagnostic("[1000CH4]").kind is DiagnosticKind.BAD_BRACKET_ATOM

    def test_leading_whitespace_offsets_positions(self) -> None:
        diag = diagnostic("  C1CC")
        assert diag.position == 3

    def test_parse_is_total_over_garbage(self) -> None:
        for text in ["!!!", "((((", "]]", "C@H", "%%", "123", "..", "\x00C"]:
            result = parse(text)
            assert isinstance(result, ParseDiagnostic), text

    def test_parse_strict_raises(self) -> None:
        with pytest.raises(ValueError):
            parse_strict("C1CC")


class TestParsing:
    def test_atom_count_and_elements(self) -> None:
        mol = parse_strict("CC(=O)Oc1ccccc1C(=O)O")
        assert [a.element for a in mol.atoms] == list("CCOOCCCCCCCOO")

    def test_two_digit_ring_closure(self) -> None:
        assert canonicalize(parse_strict("C%10CCCCC%10")) == canonicalize(
            parse_strict("C1CCCCC1")
        )

    def test_digit_reuse_after_closure(self) -> None:
        # digit 1 closes the first ring, then opens a second one
        mol = parse_strict("c1ccccc1-c1ccccc1")
        assert len(mol.rings) == 2

    def test_dot_separates_components(self) -> None:
        mol = parse_strict("[Na+].[Cl-]")
        assert len(mol.components()) == 2
        assert mol.atoms[0].charge == 1
        assert mol.atoms[1].charge == -1

    def test_isotope_and_charge_parse(self) -> None:
        mol = parse_strict("[13CH3-]")
        atom = mol.atoms[0]
        assert atom.isotope == 13
        assert atom.charge == -1
        assert atom.total_h == 3

    def test_directional_bonds_preserved(self) -> None:
        text = write(parse_strict("C/C=C/C"))
        assert "/" in text or "\\" in text
        assert canonicalize(parse_strict("C/C=C/C")) != canonicalize(
            parse_strict("C/C=C\\C")
        )


class TestWriter:
    @pytest.mark.parametrize(
        "smiles,expected",
        [
            ("c1ccccc1", "c1ccccc1"),
            ("C", "C"),
            ("[CH4]", "C"),
            ("O", "O"),
            ("[NH4+]", "[NH4+]"),
            ("[13CH4]", "[13CH4]"),
            ("c1cc[nH]c1", "c1cc[nH]c1"),
        ],
    )
    def test_conventional_forms(self, smiles: str, expected: str) -> None:
        assert write(parse_strict(smiles)) == expected

    def test_kekule_input_writes_aromatic(self) -> None:
        assert write(parse_strict("C1=CC=CC=C1")) == "c1ccccc1"

    def test_biphenyl_junction_is_single(self) -> None:
        text = write(parse_strict("c1ccc(cc1)-c1ccccc1"))
        assert "-" in text

    def test_round_trip_corpus(self, corpus_with_alternates: list[list[str]]) -> None:
        for row in corpus_with_alternates:
            for form in row:
                mol = parse_strict(form)
                text = write(mol)
                back = parse(text)
                assert isinstance(back, Molecule), (form, text)
                assert canonicalize(back) == canonicalize(mol), (form, text)

    def test_alternate_spellings_share_canonical_form(
        self, corpus_with_alternates: list[list[str]]
    ) -> None:
        for row in corpus_with_alternates:
            canons = {canonicalize(parse_strict(form)) for form in row}
            assert len(canons) == 1, row


class TestCanonicalization:
    def test_spelling_invariance(self) -> None:
        groups = [
            ["CCO", "OCC", "C(O)C", "C(C)O"],
            ["c1ccccc1", "C1=CC=CC=C1", "c1ccc(cc1)"],
            ["CC(=O)O", "OC(C)=O", "C(C)(=O)O"],
            ["C[C@@H](O)CC", "CC[C@@H](C)O"],
        ]
        for group in groups:
            canons = {canonicalize(parse_strict(s)) for s in group}
            assert len(canons) == 1, group

    def test_enantiomers_stay_distinct(self) -> None:
        assert canonicalize(parse_strict("C[C@@H](O)CC")) != canonicalize(
            parse_strict("C[C@H](O)CC")
        )

    def test_isotopes_stay_distinct(self) -> None:
        assert canonicalize(parse_strict("[13CH4]")) != canonicalize(parse_strict("C"))

    def test_charges_stay_distinct(self) -> None:
        assert canonicalize(parse_strict("CC(=O)[O-]")) != canonicalize(
            parse_strict("CC(=O)O")
        )

    def test_renumbering_invariance_on_corpus(self, corpus: list[str]) -> None:
        for smiles in corpus:
            mol = parse_strict(smiles)
            reference = canonicalize(mol)
            for seed in (1, 7, 42):
                shuffled = random_equivalent(mol, seed)
                back = parse(shuffled)
                assert isinstance(back, Molecule), (smiles, seed, shuffled)
                assert canonicalize(back) == reference, (smiles, seed, shuffled)

    def test_canonical_output_is_fixed_point(self, corpus: list[str]) -> None:
        for smiles in corpus:
            canon = canonicalize(parse_strict(smiles))
            assert canonicalize(parse_strict(canon)) == canon, smiles

    def test_component_order_is_normalized(self) -> None:
        assert canonicalize(parse_strict("[Na+].CC(=O)[O-]")) == canonicalize(
            parse_strict("CC(=O)[O-].[Na+]")
        )

    def test_canonical_order_is_permutation(self, corpus: list[str]) -> None:
        for smiles in corpus[:40]:
            mol = parse_strict(smiles)
            order = canonical_order(mol)
            assert sorted(order) == list(range(len(mol.atoms))), smiles
