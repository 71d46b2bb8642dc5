"""Machine-checkable verdicts for candidate decomposition properties.

Each check evaluates one property of a (measure, distribution) pair and
returns a :class:`PropertyReport` carrying a pass/fail/vacuous verdict, the
tolerance used, a concrete witness on failure, and a note on the search
space that was exhausted or sampled.  The ``theorem_witness`` routine
traces, step by step, the numerical argument showing that local positivity,
re-encoding invariance, and the target chain rule (or the identity
property) cannot all hold for the xor-source-copy distribution.

Property ids: lp, rei, tcr, lm, sm, id, iid (single properties) and l1, l2,
c1, l3, l4, t1, t2 (lemma/corollary/impossibility checks).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .engine import (
    PidResult,
    atoms_from_redundancy,
    c_information,
    conditional_atoms,
    consistency_check,
    rsi,
    rsi_decomposition_check,
)
from .gates import make_gate
from .lattice import (
    Antichain,
    antichain_to_parthood,
    enumerate_antichains,
    nonempty_subsets,
    redundancy_lattice,
    resolve_condition,
)
from .measures import RedundancyMeasure
from .prob import DistributionError, JointDistribution

PROPERTY_IDS = (
    "lp", "rei", "tcr", "lm", "sm", "id", "iid",
    "l1", "l2", "c1", "l3", "l4", "t1", "t2",
)

#: threshold above which a value counts as strictly positive
STRICT_POSITIVITY = 1e-9


class PreconditionError(DistributionError):
    """The distribution cannot express the requested check."""


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    measure_id: str
    distribution_digest: str
    verdict: str                      # "pass" | "fail" | "vacuous"
    tolerance: float
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "property": self.property_id,
            "measure": self.measure_id,
            "distribution_digest": self.distribution_digest,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "details": self.details,
        }


def _pid(d, measure, lattice=None) -> PidResult:
    return atoms_from_redundancy(d, measure, lattice=lattice)


# ----------------------------------------------------------------------
# single properties


def check_lp(result: PidResult, tol: float = 1e-9) -> PropertyReport:
    """Local positivity: every atom of the decomposition is nonnegative."""
    worst = min(result.atoms.items(), key=lambda item: item[1])
    verdict = "pass" if worst[1] >= -tol else "fail"
    witness = None
    if verdict == "fail":
        witness = {"antichain": worst[0].label, "atom": worst[1]}
    return PropertyReport(
        "lp", result.measure_id, result.distribution_digest, verdict, tol,
        witness, {"atoms_checked": len(result.atoms), "min_atom": worst[1]},
    )


def _random_bijections(d: JointDistribution, rng: random.Random):
    source_maps = {}
    for i in range(1, d.n_sources + 1):
        values = list(d.variable_support(("source", i)))
        shuffled = rng.sample(values, len(values))
        source_maps[i] = dict(zip(values, shuffled))
    targets = list(d.target_marginal().keys())
    shuffled = rng.sample(targets, len(targets))
    target_map = dict(zip(targets, shuffled))
    return source_maps, target_map


def _max_atom_delta(a: PidResult, b: PidResult) -> float:
    return max(abs(a.atoms[node] - b.atoms[node]) for node in a.atoms)


def check_rei(
    d: JointDistribution,
    measure: RedundancyMeasure,
    trials: int = 32,
    seed: int = 0,
    tol: float = 1e-12,
) -> PropertyReport:
    """Re-encoding invariance of the atoms.

    Samples seeded random bijections of every source support and of the
    joint target support, recomputing the full decomposition each time.
    Supports of at most four symbols additionally get an exhaustive
    per-variable permutation scan.  When the input is the xor-source-copy
    gate, the three deterministic pair-to-target re-encodings are checked
    as well (the gate target is a bijection of each source pair).
    """
    lattice = redundancy_lattice(d.n_sources)
    base = _pid(d, measure, lattice)
    rng = random.Random(seed)
    max_delta = 0.0
    witness = None
    checked = 0

    def compare(d2: JointDistribution, label: str):
        nonlocal max_delta, witness, checked
        other = _pid(d2, measure, lattice)
        delta = _max_atom_delta(base, other)
        checked += 1
        if delta > max_delta:
            max_delta = delta
            witness = {"transformation": label, "max_atom_delta": delta}

    for trial in range(trials):
        source_maps, target_map = _random_bijections(d, rng)
        compare(d.reencode(source_maps, target_map), f"random bijection #{trial}")

    for i in range(1, d.n_sources + 1):
        values = d.variable_support(("source", i))
        if len(values) <= 4:
            for perm in itertools.permutations(values):
                compare(d.reencode(source_maps={i: dict(zip(values, perm))}),
                        f"source {i} permutation {perm}")
    targets = tuple(d.target_marginal().keys())
    if d.target_arity >= 1 and len(targets) <= 4:
        for perm in itertools.permutations(targets):
            compare(d.reencode(target_map=dict(zip(targets, perm))),
                    "target permutation")

    if d == make_gate("xor_source_copy"):
        for i, j in itertools.combinations(range(1, 4), 2):
            pair = d.retarget_to_sources((i, j))
            forward = {
                (outcome.sources[i - 1], outcome.sources[j - 1]): outcome.target
                for outcome, _ in d.support
            }
            if pair.reencode(target_map=forward) != d:
                raise AssertionError("pair target does not re-encode onto the gate target")
            other = _pid(pair, measure, lattice)
            delta = _max_atom_delta(base, other)
            checked += 1
            if delta > max_delta:
                max_delta = delta
                witness = {"transformation": f"pair ({i},{j}) target re-encoding",
                           "max_atom_delta": delta}

    verdict = "pass" if max_delta <= tol else "fail"
    return PropertyReport(
        "rei", measure.id, d.digest, verdict, tol,
        witness if verdict == "fail" else None,
        {"trials": trials, "seed": seed, "comparisons": checked, "max_atom_delta": max_delta},
    )


def check_tcr(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Target chain rule, with the target split into its first component and
    the rest: the measure on the full target must equal the measure on the
    first component plus its conditional value on the remainder, for every
    antichain argument."""
    if d.target_arity < 2:
        raise PreconditionError("TCR needs a target split")
    if d.n_sources > 3:
        raise PreconditionError("exhaustive TCR scan is capped at n=3")
    first = d.restrict_target((1,))
    conditionals = [
        (pz, d.condition_on(("target", 1), value))
        for value, pz in d.variable_marginal(("target", 1)).items()
    ]
    entries = []
    for antichain in enumerate_antichains(d.n_sources):
        lhs = measure.evaluate(d, antichain)
        first_term = measure.evaluate(first, antichain)
        cond_term = sum(float(pz) * measure.evaluate(dc, antichain) for pz, dc in conditionals)
        entries.append((antichain, lhs, first_term, cond_term, abs(lhs - first_term - cond_term)))
    worst = max(entries, key=lambda e: e[4])
    verdict = "pass" if worst[4] <= tol else "fail"
    witness = None
    if verdict == "fail":
        witness = {
            "antichain": worst[0].label,
            "lhs": worst[1],
            "first_component_term": worst[2],
            "conditional_term": worst[3],
            "residual": worst[4],
        }
    return PropertyReport(
        "tcr", measure.id, d.digest, verdict, tol, witness,
        {"antichains_checked": len(entries), "max_residual": worst[4]},
    )


def check_lm(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Monotonicity along the redundancy lattice, over every comparable pair."""
    if d.n_sources > 3:
        raise PreconditionError("exhaustive LM scan is capped at n=3")
    lattice = redundancy_lattice(d.n_sources)
    values = {node: measure.evaluate(d, node) for node in lattice.nodes}
    worst = None
    pairs = 0
    for above in lattice.nodes:
        for below in lattice.down_set(above):
            if below == above:
                continue
            pairs += 1
            drop = values[below] - values[above]
            if worst is None or drop > worst[2]:
                worst = (below, above, drop)
    verdict = "pass" if worst[2] <= tol else "fail"
    witness = None
    if verdict == "fail":
        witness = {
            "below": worst[0].label, "above": worst[1].label,
            "value_below": values[worst[0]], "value_above": values[worst[1]],
        }
    return PropertyReport(
        "lm", measure.id, d.digest, verdict, tol, witness,
        {"comparable_pairs": pairs, "max_decrease": worst[2]},
    )


def check_sm(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Monotonicity under adding a source collection to the argument tuple."""
    if d.n_sources > 3:
        raise PreconditionError("exhaustive SM scan is capped at n=3")
    worst = None
    pairs = 0
    for antichain in enumerate_antichains(d.n_sources):
        base = measure.evaluate(d, antichain)
        for extra in nonempty_subsets(d.n_sources):
            pairs += 1
            grown = measure.evaluate(d, antichain.sorted_members + (extra,))
            rise = grown - base
            if worst is None or rise > worst[2]:
                worst = (antichain, extra, rise, grown, base)
    verdict = "pass" if worst[2] <= tol else "fail"
    witness = None
    if verdict == "fail":
        witness = {
            "arguments": worst[0].label, "added": "{" + ",".join(map(str, sorted(worst[1]))) + "}",
            "value_before": worst[4], "value_after": worst[3],
        }
    return PropertyReport(
        "sm", measure.id, d.digest, verdict, tol, witness,
        {"pairs_checked": pairs, "max_increase": worst[2]},
    )


def _pair_copy(d: JointDistribution) -> JointDistribution:
    if d.n_sources != 2:
        raise PreconditionError("identity checks need exactly two sources")
    return d.retarget_to_sources((1, 2))


def check_id(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Identity property: with the source pair itself as target, redundancy
    must equal the mutual information between the sources."""
    dc = _pair_copy(d)
    value = measure.evaluate(dc, Antichain.of({1}, {2}))
    reference = d.mutual_information([("source", 1)], [("source", 2)])
    deviation = abs(value - reference)
    verdict = "pass" if deviation <= tol else "fail"
    witness = None
    if verdict == "fail":
        witness = {"redundancy": value, "source_mutual_information": reference}
    return PropertyReport(
        "id", measure.id, d.digest, verdict, tol, witness,
        {"redundancy": value, "source_mutual_information": reference, "deviation": deviation},
    )


def _sources_independent(d: JointDistribution) -> bool:
    joint = d.source_marginal(range(1, d.n_sources + 1))
    singles = [d.variable_marginal(("source", i)) for i in range(1, d.n_sources + 1)]
    for values, p in joint.items():
        product = 1
        for value, marginal in zip(values, singles):
            product *= marginal.get(value, 0)
        if p != product:
            return False
    return True


def check_iid(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Independent identity property: zero pair-copy redundancy whenever the
    two sources are independent (exact rational independence test)."""
    dc = _pair_copy(d)
    if not _sources_independent(d):
        return PropertyReport(
            "iid", measure.id, d.digest, "vacuous", tol, None,
            {"reason": "sources are not independent"},
        )
    value = measure.evaluate(dc, Antichain.of({1}, {2}))
    verdict = "pass" if abs(value) <= tol else "fail"
    witness = {"redundancy": value} if verdict == "fail" else None
    return PropertyReport("iid", measure.id, d.digest, verdict, tol, witness,
                          {"redundancy": value})


# ----------------------------------------------------------------------
# equivalence chains and bounds


def check_lemma4_equivalents(
    result: PidResult, d: JointDistribution, tol: float = 1e-9
) -> PropertyReport:
    """With a pair-copy target, the identity-property deviations of the four
    aggregates (redundant, union, weak-synergy, vulnerable information) all
    coincide; the check asserts the four deviations agree regardless of
    whether the identity property itself holds."""
    if d.n_sources != 2:
        raise PreconditionError("equivalence chain needs exactly two sources")
    for outcome, _ in d.support:
        if outcome.target != outcome.sources:
            raise PreconditionError("equivalence chain needs the pair-copy target")
    args = ({1}, {2})
    i_cap = c_information(result, "red", args)
    i_cup = c_information(result, "union", args)
    i_ws = c_information(result, "ws", args)
    i_vul = c_information(result, "vul", args)
    mi12 = d.mutual_information([("source", 1)], [("source", 2)])
    h1 = d.entropy([("source", 1)])
    h2 = d.entropy([("source", 2)])
    h12 = d.entropy([("source", 1), ("source", 2)])
    deviations = {
        "redundancy_vs_source_mi": i_cap - mi12,
        "union_vs_joint_entropy": h12 - i_cup,
        "weak_synergy_vs_zero": i_ws,
        "vulnerable_vs_conditional_entropies": ((h12 - h2) + (h12 - h1)) - i_vul,
    }
    spread = max(deviations.values()) - min(deviations.values())
    verdict = "pass" if spread <= tol else "fail"
    details = {
        "redundant": i_cap, "union": i_cup, "weak_synergy": i_ws, "vulnerable": i_vul,
        "deviations": deviations, "spread": spread,
        "identity_holds": abs(i_cap - mi12) <= tol,
    }
    witness = None if verdict == "pass" else {"deviations": deviations}
    return PropertyReport("l4", result.measure_id, d.digest, verdict, tol, witness, details)


def check_lemma1(
    d: JointDistribution,
    measure: RedundancyMeasure,
    tol: float = 1e-9,
    strict: float = STRICT_POSITIVITY,
) -> PropertyReport:
    """Under local positivity, a positive redundancy-synergy index forces at
    least one strictly positive pairwise redundancy."""
    result = _pid(d, measure)
    min_atom = min(result.atoms.values())
    index = rsi(d)
    if min_atom < -tol:
        return PropertyReport("l1", measure.id, d.digest, "vacuous", tol, None,
                              {"reason": "local positivity fails", "min_atom": min_atom})
    if index <= strict:
        return PropertyReport("l1", measure.id, d.digest, "vacuous", tol, None,
                              {"reason": "redundancy-synergy index is not positive", "rsi": index})
    pairwise = {
        f"({i},{j})": measure.evaluate(d, Antichain.of({i}, {j}))
        for i, j in itertools.combinations(range(1, d.n_sources + 1), 2)
    }
    best = max(pairwise.values())
    verdict = "pass" if best > strict else "fail"
    witness = None if verdict == "pass" else {"pairwise": pairwise, "rsi": index}
    return PropertyReport("l1", measure.id, d.digest, verdict, tol, witness,
                          {"pairwise": pairwise, "rsi": index, "min_atom": min_atom})


def check_lemma2(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Local positivity implies lattice monotonicity."""
    result = _pid(d, measure)
    min_atom = min(result.atoms.values())
    if min_atom < -tol:
        return PropertyReport("l2", measure.id, d.digest, "vacuous", tol, None,
                              {"reason": "local positivity fails", "min_atom": min_atom})
    inner = check_lm(d, measure, tol)
    return PropertyReport("l2", measure.id, d.digest, inner.verdict, tol,
                          inner.witness, dict(inner.details, min_atom=min_atom))


def check_corollary1(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Under local positivity every pairwise redundancy is bounded by the
    smaller of the two single-source informations."""
    result = _pid(d, measure)
    min_atom = min(result.atoms.values())
    if min_atom < -tol:
        return PropertyReport("c1", measure.id, d.digest, "vacuous", tol, None,
                              {"reason": "local positivity fails", "min_atom": min_atom})
    worst = None
    table = {}
    for i, j in itertools.combinations(range(1, d.n_sources + 1), 2):
        value = measure.evaluate(d, Antichain.of({i}, {j}))
        bound = min(d.marginal_mi({i}), d.marginal_mi({j}))
        table[f"({i},{j})"] = {"pairwise": value, "bound": bound}
        excess = value - bound
        if worst is None or excess > worst[1]:
            worst = ((i, j), excess)
    verdict = "pass" if worst[1] <= tol else "fail"
    witness = None
    if verdict == "fail":
        witness = {"pair": list(worst[0]), **table[f"({worst[0][0]},{worst[0][1]})"]}
    return PropertyReport("c1", measure.id, d.digest, verdict, tol, witness,
                          {"bounds": table, "max_excess": worst[1]})


def check_lemma3(
    d: JointDistribution, measure: RedundancyMeasure, tol: float = 1e-9
) -> PropertyReport:
    """Chain-rule equivalence across aggregation levels: for any condition,
    the aggregate-level chain-rule residual equals the sum of the atom-level
    residuals the condition selects."""
    if d.target_arity < 2:
        raise PreconditionError("chain-rule equivalence needs a target split")
    if d.n_sources > 3:
        raise PreconditionError("exhaustive scan is capped at n=3")
    lattice = redundancy_lattice(d.n_sources)
    on_full = _pid(d, measure, lattice)
    on_first = _pid(d.restrict_target((1,)), measure, lattice)
    on_rest = conditional_atoms(d, measure, ("target", 1), lattice=lattice)
    atom_residuals = {
        node: on_full.atoms[node] - on_first.atoms[node] - on_rest.atoms[node]
        for node in lattice.nodes
    }
    parthoods = {node: antichain_to_parthood(node, d.n_sources) for node in lattice.nodes}
    worst_gap = 0.0
    checks = 0
    for name in ("red", "union", "ws", "vul"):
        cond = resolve_condition(name)
        for antichain in lattice.nodes:
            args = antichain.sorted_members
            aggregate = (
                c_information(on_full, name, args)
                - c_information(on_first, name, args)
                - c_information(on_rest, name, args)
            )
            atom_sum = sum(
                residual for node, residual in atom_residuals.items()
                if cond(args, parthoods[node])
            )
            worst_gap = max(worst_gap, abs(aggregate - atom_sum))
            checks += 1
    max_atom_residual = max(abs(v) for v in atom_residuals.values())
    verdict = "pass" if worst_gap <= tol else "fail"
    return PropertyReport(
        "l3", measure.id, d.digest, verdict, tol,
        None if verdict == "pass" else {"max_aggregation_gap": worst_gap},
        {"aggregates_checked": checks, "max_aggregation_gap": worst_gap,
         "max_atom_level_residual": max_atom_residual},
    )


# ----------------------------------------------------------------------
# impossibility witnesses


@dataclass(frozen=True)
class TheoremWitness:
    """Numerical trace of the impossibility arguments on a 3-source input."""

    measure_id: str
    distribution_digest: str
    rsi_value: float
    rsi_residual: float
    consistency_max_residual: float
    pairwise: dict                    # pair label -> redundancy on the full target
    pairwise_strictly_positive: bool
    reencoding_max_delta: float
    chains: tuple                     # per-pair chain-rule traces
    id_evidence: tuple                # per-pair identity-property traces
    lp_scan: tuple                    # (role, min atom, antichain) per decomposition
    verdicts: dict                    # property -> "pass" | "fail"
    tolerance: float

    @property
    def lp_witness(self) -> dict | None:
        role, value, label = min(self.lp_scan, key=lambda item: item[1])
        if value >= -self.tolerance:
            return None
        return {"role": role, "antichain": label, "atom": value}

    @property
    def lp_rei_tcr_all_pass(self) -> bool:
        return all(self.verdicts[p] == "pass" for p in ("lp", "rei", "tcr"))

    @property
    def lp_rei_id_all_pass(self) -> bool:
        return all(self.verdicts[p] == "pass" for p in ("lp", "rei", "id"))

    def to_json_dict(self) -> dict:
        return {
            "measure": self.measure_id,
            "distribution_digest": self.distribution_digest,
            "rsi": self.rsi_value,
            "rsi_residual": self.rsi_residual,
            "consistency_max_residual": self.consistency_max_residual,
            "pairwise_redundancies": self.pairwise,
            "pairwise_strictly_positive": self.pairwise_strictly_positive,
            "reencoding_max_delta": self.reencoding_max_delta,
            "chains": list(self.chains),
            "id_evidence": list(self.id_evidence),
            "lp_scan": [list(entry) for entry in self.lp_scan],
            "lp_witness": self.lp_witness,
            "verdicts": self.verdicts,
            "tolerance": self.tolerance,
        }


def theorem_witness(
    d: JointDistribution,
    measure: RedundancyMeasure,
    tol: float = 1e-9,
    rei_tol: float = 1e-12,
    trials: int = 8,
    seed: int = 0,
) -> TheoremWitness:
    """Reproduce the impossibility proof steps on a 3-source distribution.

    Collects the redundancy-synergy index, the pairwise redundancies and
    their strict positivity, the pair-target re-encodings, the chain-rule
    split of each pair redundancy with the positivity-implied bounds on both
    split terms, the identity-property evidence, and a local-positivity scan
    over every decomposition the argument touches.  The verdicts identify
    which of lp/rei/tcr/id the measure violates here.
    """
    if d.n_sources != 3:
        raise PreconditionError("the impossibility argument uses three sources")
    lattice = redundancy_lattice(3)
    gate_result = _pid(d, measure, lattice)
    consistency = consistency_check(gate_result, d, tol)
    rsi_report = rsi_decomposition_check(gate_result, d, tol)

    lp_scan = []

    def scan(role: str, result: PidResult):
        node, value = min(result.atoms.items(), key=lambda item: item[1])
        lp_scan.append((role, value, node.label))

    scan("full target", gate_result)

    pairwise = {}
    chains = []
    id_evidence = []
    reencoding_max = 0.0
    for i, j in itertools.combinations(range(1, 4), 2):
        args = Antichain.of({i}, {j})
        pair_label = f"({i},{j})"
        pairwise[pair_label] = measure.evaluate(d, args)

        # value on the pair target, which re-encodes onto the full target
        d_pair = d.retarget_to_sources((i, j))
        pair_result = _pid(d_pair, measure, lattice)
        scan(f"target (S_{i},S_{j})", pair_result)
        reencoding_max = max(reencoding_max, _max_atom_delta(gate_result, pair_result))
        value_pair = measure.evaluate(d_pair, args)

        # chain-rule split of the pair target: first S_j, then S_i given S_j
        d_first = d.retarget_to_sources((j,))
        first_result = _pid(d_first, measure, lattice)
        scan(f"target S_{j}", first_result)
        first_term = measure.evaluate(d_first, args)

        d_second = d.retarget_to_sources((i,))
        cond_term = 0.0
        cond_mi_i = 0.0
        cond_mi_j = 0.0
        for z, pz in d.variable_marginal(("source", j)).items():
            dz = d_second.condition_on(("source", j), z)
            scan(f"target S_{i} given S_{j}={z}", _pid(dz, measure, lattice))
            cond_term += float(pz) * measure.evaluate(dz, args)
            cond_mi_i += float(pz) * dz.marginal_mi({i})
            cond_mi_j += float(pz) * dz.marginal_mi({j})
        residual = abs(value_pair - first_term - cond_term)
        chains.append({
            "pair": pair_label,
            "pair_redundancy": value_pair,
            "first_term": first_term,
            "conditional_term": cond_term,
            "residual": residual,
            "first_term_positivity_bound": min(d_first.marginal_mi({i}), d_first.marginal_mi({j})),
            "conditional_term_positivity_bound": min(cond_mi_i, cond_mi_j),
        })

        mi_sources = d.mutual_information([("source", i)], [("source", j)])
        id_evidence.append({
            "pair": pair_label,
            "pair_redundancy": value_pair,
            "source_mutual_information": mi_sources,
            "deviation": abs(value_pair - mi_sources),
        })

    rei_report = check_rei(d, measure, trials=trials, seed=seed, tol=rei_tol)
    reencoding_max = max(reencoding_max, rei_report.details["max_atom_delta"])

    min_atom = min(value for _, value, _ in lp_scan)
    verdicts = {
        "lp": "pass" if min_atom >= -tol else "fail",
        "rei": "pass" if reencoding_max <= rei_tol else "fail",
        "tcr": "pass" if max(c["residual"] for c in chains) <= tol else "fail",
        "id": "pass" if max(e["deviation"] for e in id_evidence) <= tol else "fail",
    }
    return TheoremWitness(
        measure_id=measure.id,
        distribution_digest=d.digest,
        rsi_value=rsi(d),
        rsi_residual=rsi_report.residual,
        consistency_max_residual=consistency.max_residual,
        pairwise=pairwise,
        pairwise_strictly_positive=max(pairwise.values()) > STRICT_POSITIVITY,
        reencoding_max_delta=reencoding_max,
        chains=tuple(chains),
        id_evidence=tuple(id_evidence),
        lp_scan=tuple(lp_scan),
        verdicts=verdicts,
        tolerance=tol,
    )


def check_theorem1(
    d: JointDistribution, measure: RedundancyMeasure,
    tol: float = 1e-9, trials: int = 8, seed: int = 0,
) -> PropertyReport:
    """Local positivity, re-encoding invariance, and the identity property
    cannot all hold: the check passes when the measure indeed violates at
    least one of them on this input."""
    witness = theorem_witness(d, measure, tol=tol, trials=trials, seed=seed)
    verdict = "fail" if witness.lp_rei_id_all_pass else "pass"
    return PropertyReport(
        "t1", measure.id, d.digest, verdict, tol,
        None if verdict == "pass" else {"verdicts": witness.verdicts},
        {"verdicts": witness.verdicts, "pairwise": witness.pairwise},
    )


def check_theorem2(
    d: JointDistribution, measure: RedundancyMeasure,
    tol: float = 1e-9, trials: int = 8, seed: int = 0,
) -> PropertyReport:
    """Local positivity, re-encoding invariance, and the target chain rule
    cannot all hold: the check passes when at least one of them fails here."""
    witness = theorem_witness(d, measure, tol=tol, trials=trials, seed=seed)
    verdict = "fail" if witness.lp_rei_tcr_all_pass else "pass"
    return PropertyReport(
        "t2", measure.id, d.digest, verdict, tol,
        None if verdict == "pass" else {"verdicts": witness.verdicts},
        {"verdicts": witness.verdicts,
         "chains": [dict(c) for c in witness.chains]},
    )


# ----------------------------------------------------------------------
# dispatch and corpus runs


def run_property(
    property_id: str,
    d: JointDistribution,
    measure: RedundancyMeasure,
    tol: float = 1e-9,
    trials: int = 32,
    seed: int = 0,
) -> PropertyReport:
    """Run one named check, downgrading unmet preconditions to 'vacuous'."""
    if property_id not in PROPERTY_IDS:
        raise ValueError(f"unknown property {property_id!r}; known: {PROPERTY_IDS}")
    try:
        if property_id == "lp":
            return check_lp(_pid(d, measure), tol)
        if property_id == "rei":
            return check_rei(d, measure, trials=trials, seed=seed)
        if property_id == "tcr":
            return check_tcr(d, measure, tol)
        if property_id == "lm":
            return check_lm(d, measure, tol)
        if property_id == "sm":
            return check_sm(d, measure, tol)
        if property_id == "id":
            return check_id(d, measure, tol)
        if property_id == "iid":
            return check_iid(d, measure, tol)
        if property_id == "l1":
            return check_lemma1(d, measure, tol)
        if property_id == "l2":
            return check_lemma2(d, measure, tol)
        if property_id == "c1":
            return check_corollary1(d, measure, tol)
        if property_id == "l3":
            return check_lemma3(d, measure, tol)
        if property_id == "l4":
            dc = _pair_copy(d)
            return check_lemma4_equivalents(_pid(dc, measure), dc, tol)
        if property_id == "t1":
            return check_theorem1(d, measure, tol, trials=min(trials, 8), seed=seed)
        return check_theorem2(d, measure, tol, trials=min(trials, 8), seed=seed)
    except PreconditionError as exc:
        return PropertyReport(property_id, measure.id, d.digest, "vacuous", tol,
                              None, {"reason": str(exc)})


def run_all_checks(
    d: JointDistribution,
    measure: RedundancyMeasure,
    tol: float = 1e-9,
    trials: int = 32,
    seed: int = 0,
) -> tuple:
    return tuple(
        run_property(pid, d, measure, tol=tol, trials=trials, seed=seed)
        for pid in PROPERTY_IDS
    )


TABLE_PROPERTIES = ("lp", "tcr", "rei", "id")
TABLE_GATES = ("xor", "copy2", "and", "xor_source_copy")


def property_matrix(
    measures: Sequence[RedundancyMeasure],
    gate_ids: Sequence[str] = TABLE_GATES,
    tol: float = 1e-9,
    trials: int = 32,
    seed: int = 0,
) -> dict:
    """Verdict matrix over the gate corpus: a property fails for a measure
    if any corpus gate witnesses a violation, and passes when at least one
    gate exercised it without any violation being found."""
    matrix = {}
    for measure in measures:
        row = {}
        for prop in TABLE_PROPERTIES:
            verdicts = [
                run_property(prop, make_gate(gate_id), measure,
                             tol=tol, trials=trials, seed=seed).verdict
                for gate_id in gate_ids
            ]
            if "fail" in verdicts:
                row[prop] = "fail"
            elif "pass" in verdicts:
                row[prop] = "pass"
            else:
                row[prop] = "vacuous"
        matrix[measure.id] = row
    return matrix
