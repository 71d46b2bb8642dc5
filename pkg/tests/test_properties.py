"""Property checks, equivalence chains, and the impossibility witnesses."""

import math

import pytest

from partinfo import (
    Antichain,
    atoms_from_redundancy,
    check_corollary1,
    check_id,
    check_iid,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4_equivalents,
    check_lm,
    check_lp,
    check_rei,
    check_sm,
    check_tcr,
    check_theorem1,
    check_theorem2,
    get_measure,
    property_matrix,
    redundancy_from_atoms,
    redundancy_lattice,
    run_all_checks,
    run_property,
    theorem_witness,
)
from partinfo.properties import PreconditionError

from conftest import lookup_measure, random_pair_copy, random_rational_distribution

IMIN = get_measure("imin")
ISX = get_measure("isx")


# ----------------------------------------------------------------------
# local positivity


def test_lp_pass_for_imin_on_copy_gate(gate_corpus):
    report = check_lp(atoms_from_redundancy(gate_corpus["copy2"], IMIN))
    assert report.verdict == "pass"


def test_lp_fail_for_isx_on_xor_gate(gate_corpus):
    report = check_lp(atoms_from_redundancy(gate_corpus["xor"], ISX))
    assert report.verdict == "fail"
    assert report.witness["antichain"] == "{1}{2}"
    assert abs(report.witness["atom"] - math.log2(2 / 3)) <= 1e-9


def test_lp_pass_when_target_is_constant():
    from fractions import Fraction

    from partinfo import JointDistribution, Outcome

    rows = [(Outcome((s1, s2), (0,)), Fraction(1, 4)) for s1 in (0, 1) for s2 in (0, 1)]
    d = JointDistribution(2, 1, rows)
    report = check_lp(atoms_from_redundancy(d, IMIN))
    assert report.verdict == "pass"
    assert abs(report.details["min_atom"]) <= 1e-12


# ----------------------------------------------------------------------
# re-encoding invariance


@pytest.mark.parametrize("measure", [IMIN, ISX], ids=lambda m: m.id)
def test_rei_passes_on_gates(gate_corpus, measure):
    for d in gate_corpus.values():
        report = check_rei(d, measure, trials=8, seed=11)
        assert report.verdict == "pass"
        assert report.details["max_atom_delta"] <= 1e-12


def test_rei_includes_pair_reencodings_for_xor_source_copy(gate_corpus):
    report = check_rei(gate_corpus["xor_source_copy"], IMIN, trials=2, seed=0)
    assert report.verdict == "pass"
    # random trials + per-variable permutation scans + three pair re-encodings
    assert report.details["comparisons"] >= 2 + 3


# ----------------------------------------------------------------------
# target chain rule


def test_tcr_fails_for_imin_on_copy_gate(gate_corpus):
    report = check_tcr(gate_corpus["copy2"], IMIN)
    assert report.verdict == "fail"
    witness = report.witness
    assert witness["antichain"] == "{1}{2}"
    assert abs(witness["lhs"] - 1.0) <= 1e-9
    assert abs(witness["first_component_term"]) <= 1e-9
    assert abs(witness["conditional_term"]) <= 1e-9
    assert abs(witness["residual"] - 1.0) <= 1e-9


def test_tcr_passes_for_isx_on_random_rational_tables(rng):
    for _ in range(8):
        d = random_rational_distribution(rng, n_sources=2, target_arity=2)
        report = check_tcr(d, ISX, tol=1e-9)
        assert report.verdict == "pass", report.witness


def test_tcr_passes_for_isx_on_composite_gates(gate_corpus):
    for gate_id in ("copy2", "xor_source_copy"):
        assert check_tcr(gate_corpus[gate_id], ISX).verdict == "pass"


def test_tcr_needs_target_split(gate_corpus):
    with pytest.raises(PreconditionError, match="target split"):
        check_tcr(gate_corpus["xor"], IMIN)
    assert run_property("tcr", gate_corpus["xor"], IMIN).verdict == "vacuous"


def test_tcr_with_constant_second_component_passes(gate_corpus):
    from fractions import Fraction

    from partinfo import JointDistribution, Outcome

    rows = [
        (Outcome(o.sources, (o.target[0], "k")), p)
        for o, p in gate_corpus["xor"].support
    ]
    d = JointDistribution(2, 2, rows)
    for measure in (IMIN, ISX):
        assert check_tcr(d, measure).verdict == "pass"


# ----------------------------------------------------------------------
# monotonicity


def test_lm_and_sm_pass_for_imin_on_gates(gate_corpus):
    for d in gate_corpus.values():
        assert check_lm(d, IMIN).verdict == "pass"
        assert check_sm(d, IMIN).verdict == "pass"


def test_lm_fails_with_witness_for_negative_atom_measure(gate_corpus):
    values = {"{1}{2}": 0.0, "{1}": -0.5, "{2}": 0.5, "{1,2}": 1.0}
    fake = lookup_measure(values, "negative_unique")
    report = check_lm(gate_corpus["copy2"], fake)
    assert report.verdict == "fail"
    assert report.witness == {
        "below": "{1}{2}", "above": "{1}", "value_below": 0.0, "value_above": -0.5,
    }


def test_sm_violations_are_lm_violations(gate_corpus):
    # the added-collection pairs are a subset of the comparable lattice pairs,
    # so for a superset-invariant measure every SM violation shows up in LM
    values = {"{1}{2}": 0.9, "{1}": 0.2, "{2}": 1.0, "{1,2}": 1.0}
    fake = lookup_measure(values, "sm_violator")
    d = gate_corpus["copy2"]
    sm = check_sm(d, fake)
    lm = check_lm(d, fake)
    assert sm.verdict == "fail" and lm.verdict == "fail"
    assert sm.details["max_increase"] <= lm.details["max_decrease"] + 1e-12


# ----------------------------------------------------------------------
# identity properties


def test_id_fails_for_imin_on_independent_coins(gate_corpus):
    report = check_id(gate_corpus["copy2"], IMIN)
    assert report.verdict == "fail"
    assert abs(report.witness["redundancy"] - 1.0) <= 1e-9
    assert abs(report.witness["source_mutual_information"]) <= 1e-9
    assert check_iid(gate_corpus["copy2"], IMIN).verdict == "fail"


def test_id_fails_for_isx_on_independent_coins(gate_corpus):
    report = check_id(gate_corpus["xor"], ISX)
    assert report.verdict == "fail"
    assert abs(report.witness["redundancy"] - math.log2(4 / 3)) <= 1e-9


def test_id_passes_for_imin_on_fully_correlated_pair():
    from fractions import Fraction

    from partinfo import JointDistribution, Outcome

    rows = [(Outcome((s, s), (s,)), Fraction(1, 2)) for s in (0, 1)]
    d = JointDistribution(2, 1, rows)
    assert check_id(d, IMIN).verdict == "pass"
    assert check_iid(d, IMIN).verdict == "vacuous"


def test_id_requires_two_sources(gate_corpus):
    with pytest.raises(PreconditionError):
        check_id(gate_corpus["xor_source_copy"], IMIN)
    assert run_property("id", gate_corpus["xor_source_copy"], IMIN).verdict == "vacuous"


# ----------------------------------------------------------------------
# equivalence chain for the identity property


@pytest.mark.parametrize("measure", [IMIN, ISX], ids=lambda m: m.id)
def test_lemma4_deviations_agree_on_random_pairs(rng, measure):
    for _ in range(15):
        d = random_pair_copy(rng)
        result = atoms_from_redundancy(d, measure)
        report = check_lemma4_equivalents(result, d, tol=1e-9)
        assert report.verdict == "pass", report.details


def test_lemma4_values_on_copy_gate(gate_corpus):
    d = gate_corpus["copy2"]
    result = atoms_from_redundancy(d, IMIN)
    report = check_lemma4_equivalents(result, d)
    assert report.verdict == "pass"
    # inclusion-exclusion with redundancy 1 leaves union = H1 + H2 - 1 = 1
    assert abs(report.details["union"] - 1.0) <= 1e-9
    # complementation: redundant + vulnerable = joint information
    total = report.details["redundant"] + report.details["vulnerable"]
    assert abs(total - d.marginal_mi({1, 2})) <= 1e-9
    assert not report.details["identity_holds"]


# ----------------------------------------------------------------------
# lemma/corollary checks


def test_lemma1_on_xor_source_copy(gate_corpus):
    d = gate_corpus["xor_source_copy"]
    for measure in (IMIN, ISX):
        report = check_lemma1(d, measure)
        assert report.verdict == "pass"
        assert max(report.details["pairwise"].values()) > 1e-9
    assert check_lemma1(gate_corpus["copy2"], IMIN).verdict == "vacuous"  # rsi = 0


def test_lemma2_and_corollary1(gate_corpus):
    d = gate_corpus["xor_source_copy"]
    for measure in (IMIN, ISX):
        assert check_lemma2(d, measure).verdict == "pass"
        assert check_corollary1(d, measure).verdict == "pass"
    # a negative atom makes both vacuous rather than failed
    assert check_lemma2(gate_corpus["xor"], ISX).verdict == "vacuous"
    assert check_corollary1(gate_corpus["xor"], ISX).verdict == "vacuous"


def test_lemma2_holds_for_synthetic_nonnegative_atoms(rng, gate_corpus):
    lattice = redundancy_lattice(3)
    d = gate_corpus["xor_source_copy"]
    for _ in range(20):
        atoms = {node: rng.uniform(0, 1) for node in lattice.nodes}
        induced = redundancy_from_atoms(lattice, atoms)
        fake = lookup_measure({node.label: value for node, value in induced.items()})
        assert check_lm(d, fake).verdict == "pass"


def test_corollary1_bounds_for_synthetic_nonnegative_atoms(rng):
    lattice = redundancy_lattice(3)
    for _ in range(20):
        atoms = {node: rng.uniform(0, 1) for node in lattice.nodes}
        induced = redundancy_from_atoms(lattice, atoms)
        for i, j in ((1, 2), (1, 3), (2, 3)):
            pair = induced[Antichain.of({i}, {j})]
            bound = min(induced[Antichain.of({i})], induced[Antichain.of({j})])
            assert pair <= bound + 1e-12


def test_lemma3_aggregation_identity(gate_corpus):
    # the aggregate-level residual equals the selected atom-level residual sum
    # whether or not the chain rule itself holds
    for measure in (IMIN, ISX):
        report = check_lemma3(gate_corpus["copy2"], measure)
        assert report.verdict == "pass"
    isx_report = check_lemma3(gate_corpus["xor_source_copy"], ISX)
    assert isx_report.verdict == "pass"
    assert isx_report.details["max_atom_level_residual"] <= 1e-9
    imin_report = check_lemma3(gate_corpus["copy2"], IMIN)
    assert imin_report.details["max_atom_level_residual"] > 0.5


# ----------------------------------------------------------------------
# impossibility witnesses


def test_theorem_witness_for_imin(gate_corpus):
    witness = theorem_witness(gate_corpus["xor_source_copy"], IMIN, trials=4)
    assert witness.verdicts == {"lp": "pass", "rei": "pass", "tcr": "fail", "id": "fail"}
    assert witness.rsi_value == 1.0
    assert witness.rsi_residual <= 1e-9
    assert witness.consistency_max_residual <= 1e-9
    assert witness.pairwise_strictly_positive
    for value in witness.pairwise.values():
        assert abs(value - 1.0) <= 1e-9
    for chain in witness.chains:
        assert abs(chain["pair_redundancy"] - 1.0) <= 1e-9
        assert abs(chain["first_term"]) <= 1e-9
        assert abs(chain["conditional_term"]) <= 1e-9
        assert abs(chain["first_term_positivity_bound"]) <= 1e-9
        assert abs(chain["conditional_term_positivity_bound"]) <= 1e-9
    assert witness.lp_witness is None


def test_theorem_witness_for_isx(gate_corpus):
    witness = theorem_witness(gate_corpus["xor_source_copy"], ISX, trials=4)
    assert witness.verdicts == {"lp": "fail", "rei": "pass", "tcr": "pass", "id": "fail"}
    assert abs(witness.lp_witness["atom"] - math.log2(2 / 3)) <= 1e-9
    for entry in witness.id_evidence:
        assert abs(entry["pair_redundancy"] - math.log2(4 / 3)) <= 1e-9
        assert entry["source_mutual_information"] == 0.0


@pytest.mark.parametrize("measure", [IMIN, ISX], ids=lambda m: m.id)
def test_no_measure_passes_either_impossible_triple(gate_corpus, measure):
    witness = theorem_witness(gate_corpus["xor_source_copy"], measure, trials=4)
    assert not witness.lp_rei_tcr_all_pass
    assert not witness.lp_rei_id_all_pass
    assert check_theorem1(gate_corpus["xor_source_copy"], measure, trials=2).verdict == "pass"
    assert check_theorem2(gate_corpus["xor_source_copy"], measure, trials=2).verdict == "pass"


def test_theorem_checks_are_vacuous_off_three_sources(gate_corpus):
    assert run_property("t1", gate_corpus["copy2"], IMIN).verdict == "vacuous"
    assert run_property("t2", gate_corpus["copy2"], IMIN).verdict == "vacuous"


# ----------------------------------------------------------------------
# dispatch and the corpus matrix


def test_run_all_checks_covers_every_property(gate_corpus):
    reports = run_all_checks(gate_corpus["copy2"], IMIN, trials=4)
    by_id = {r.property_id: r.verdict for r in reports}
    assert set(by_id) == {
        "lp", "rei", "tcr", "lm", "sm", "id", "iid",
        "l1", "l2", "c1", "l3", "l4", "t1", "t2",
    }
    assert by_id["tcr"] == "fail"
    assert by_id["id"] == "fail"
    assert by_id["t1"] == "vacuous"


def test_property_matrix_matches_expected_rows():
    matrix = property_matrix([IMIN, ISX], trials=6, seed=3)
    assert matrix["imin"] == {"lp": "pass", "tcr": "fail", "rei": "pass", "id": "fail"}
    assert matrix["isx"] == {"lp": "fail", "tcr": "pass", "rei": "pass", "id": "fail"}
