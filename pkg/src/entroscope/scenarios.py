"""Canned analyses producing serializable DiagramReport bundles.

Four scenarios: the bare EPR pair, the EPR pair with two pre-measurement
devices at chosen angles, the decay/cat chain with or without an
observer, and the CHSH correlator check.  Each returns a DiagramReport;
rendering to JSON or a table lives in the report module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import (
    InequalityAudit,
    PartitionSpec,
    VennDiagram,
    audit_inequalities,
    grouped_entropies,
    joint_entropies,
    mutual_entropy,
    shannon_entropy,
    ternary_center,
    venn_atoms,
)
from .errors import ValidationError
from .measurement import (
    CLASSICAL_BOUND,
    TSIRELSON_BOUND,
    MeasurementSetup,
    chsh_value,
    device_joints,
    device_partition,
    full_partition,
    premeasure,
    sample_records,
)
from .states import BasisAngle, cat_chain, epr_singlet
from .version import __version__

SCENARIO_IDS = ("epr_pair", "epr_measure", "cat", "chsh")
CAT_GROUPINGS = ("atom", "atom_gamma")
CANONICAL_CHSH_ANGLES = (0.0, math.pi / 2.0, math.pi / 4.0, 3.0 * math.pi / 4.0)

ORTHODOX_LABEL = "orthodox expectation — not derivable from any joint state"
ORTHODOX_WARNING = (
    "the parallel and orthogonal tables presume definite z and x values for "
    "the same particle at once; no five-variable classical model supports both"
)
_ORTHODOX_MATCH_TOL = 1e-6

# Textbook expectations for the two device arrangements, as static data.
# These describe what a classical record of the measurements would look
# like; they are not computed from any state, and no state reproduces both.
_ORTHODOX_ATOMS = {
    "parallel": {
        ("Q",): 1.0, ("A1",): 0.0, ("A2",): 0.0,
        ("Q", "A1"): 0.0, ("Q", "A2"): 0.0, ("A1", "A2"): 0.0,
        ("Q", "A1", "A2"): 1.0,
    },
    "orthogonal": {
        ("Q",): 0.0, ("A1",): 0.0, ("A2",): 0.0,
        ("Q", "A1"): 1.0, ("Q", "A2"): 1.0, ("A1", "A2"): 0.0,
        ("Q", "A1", "A2"): 0.0,
    },
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters for one scenario run; validated per scenario_id."""

    scenario_id: str
    theta1: float | None = None
    theta2: float | None = None
    shots: int = 0
    seed: int | None = None
    chunk_size: int | None = None
    grouping: str = "atom_gamma"
    with_observer: bool = False
    angles: tuple[float, float, float, float] | None = None
    scan_points: int = 0

    def __post_init__(self):
        if self.scenario_id not in SCENARIO_IDS:
            raise ValidationError(
                f"unknown scenario {self.scenario_id!r}, expected one of {list(SCENARIO_IDS)}"
            )
        if self.shots < 0:
            raise ValidationError(f"shots must be >= 0, got {self.shots}")
        if self.scenario_id == "epr_measure" and (self.theta1 is None or self.theta2 is None):
            raise ValidationError("epr_measure needs theta1 and theta2")
        if self.scenario_id == "cat" and self.grouping not in CAT_GROUPINGS:
            raise ValidationError(
                f"grouping must be one of {list(CAT_GROUPINGS)}, got {self.grouping!r}"
            )
        if self.angles is not None and len(self.angles) != 4:
            raise ValidationError(f"chsh needs 4 angles, got {len(self.angles)}")
        if self.scan_points < 0:
            raise ValidationError(f"scan points must be >= 0, got {self.scan_points}")


@dataclass(frozen=True)
class DiagramBundle:
    """One labeled diagram: party factor map, Venn data, inequality audit."""

    party_factors: tuple[tuple[str, tuple[int, ...]], ...]
    venn: VennDiagram
    audit: InequalityAudit


@dataclass(frozen=True)
class DiagramReport:
    """Everything one scenario run produced, ready for serialization."""

    scenario: str
    parameters: dict
    seed: int | None = None
    diagram: DiagramBundle | None = None
    reduced: DiagramBundle | None = None
    ternary_center: float | None = None
    q_devices_mutual: float | None = None
    sampled: dict | None = None
    orthodox: dict | None = None
    chsh: dict | None = None
    tool_version: str = __version__


def _bundle(rho_state, partition: PartitionSpec) -> DiagramBundle:
    joints = joint_entropies(rho_state, partition)
    return DiagramBundle(
        party_factors=tuple((n, tuple(sorted(fs))) for n, fs in partition.parties),
        venn=venn_atoms(joints),
        audit=audit_inequalities(joints),
    )


def run_epr_pair() -> DiagramReport:
    """Venn diagram of the bare singlet under the (L, R) split."""
    state = epr_singlet()
    bundle = _bundle(state.to_density(), PartitionSpec.of(L=[0], R=[1]))
    return DiagramReport(scenario="epr_pair", parameters={}, diagram=bundle)


def _orthodox_case_for(theta1: float, theta2: float) -> str | None:
    z, x = 0.0, math.pi / 2.0
    def near(a, b):
        return abs(a - b) <= _ORTHODOX_MATCH_TOL
    if near(theta1, z) and near(theta2, z):
        return "parallel"
    if (near(theta1, z) and near(theta2, x)) or (near(theta1, x) and near(theta2, z)):
        return "orthogonal"
    return None


def orthodox_reference(case: str) -> dict:
    """The textbook three-circle diagram for the parallel or orthogonal
    device arrangement, as static reference data.

    Joint entropies are re-summed from the atoms so the two tables stay
    internally consistent; the block carries a warning because the two
    cases together admit no common classical model.
    """
    if case not in _ORTHODOX_ATOMS:
        raise ValidationError(f"unknown orthodox case {case!r}, expected parallel|orthogonal")
    atoms = dict(_ORTHODOX_ATOMS[case])
    joints = {
        u: sum(v for t, v in atoms.items() if set(t) & set(u))
        for u in atoms
    }
    return {
        "case": case,
        "label": ORTHODOX_LABEL,
        "parties": ("Q", "A1", "A2"),
        "joints": joints,
        "atoms": atoms,
        "consistent": False,
        "warning": ORTHODOX_WARNING,
    }


def _sampled_block(post, setup, shots: int, seed: int, chunk_size: int | None,
                   exact_mutual: float) -> dict:
    records = sample_records(post, setup, shots=shots, seed=seed, chunk_size=chunk_size)
    labels = setup.device_labels
    width = len(labels)
    counts = {format(i, f"0{width}b"): 0 for i in range(2**width)}
    for rec in records:
        counts["".join(str(b) for b in rec.bits)] += 1
    freqs = {k: v / shots for k, v in counts.items()}
    joint_p = np.array(list(freqs.values()))
    entropies: dict[str, float] = {}
    for i, lbl in enumerate(labels):
        p1 = sum(v for k, v in freqs.items() if k[i] == "1")
        entropies[lbl] = shannon_entropy([1.0 - p1, p1])
    entropies[",".join(labels)] = shannon_entropy(joint_p)
    block = {
        "shots": shots,
        "seed": seed,
        "chunk_size": chunk_size,
        "devices": labels,
        "counts": counts,
        "frequencies": freqs,
        "entropies": entropies,
    }
    if width == 2:
        block["mutual"] = (
            entropies[labels[0]] + entropies[labels[1]] - entropies[",".join(labels)]
        )
        block["exact_mutual"] = exact_mutual
    return block


def run_epr_measure(
    theta1,
    theta2,
    shots: int = 0,
    seed: int | None = None,
    chunk_size: int | None = None,
) -> DiagramReport:
    """Singlet with device A1 reading qubit 0 at theta1 and A2 reading
    qubit 1 at theta2.

    Reports the full (Q, A1, A2) diagram of the post-measurement pure
    state, the device-only diagram after tracing Q, the ternary center
    alongside the bipartite Q:(A1 A2) mutual entropy, optional sampled
    statistics, and the orthodox reference table when the angles are the
    parallel or orthogonal textbook arrangement.
    """
    t1, t2 = BasisAngle(float(theta1)).theta, BasisAngle(float(theta2)).theta
    setup = MeasurementSetup.of((0, t1, "A1"), (1, t2, "A2"))
    post = premeasure(epr_singlet(), setup)
    rho = post.to_density()

    full_part = full_partition(post, setup, system_label="Q")
    joints = joint_entropies(rho, full_part)
    full_bundle = DiagramBundle(
        party_factors=tuple((n, tuple(sorted(fs))) for n, fs in full_part.parties),
        venn=venn_atoms(joints),
        audit=audit_inequalities(joints),
    )
    center = ternary_center(full_bundle.venn)
    q_dev = mutual_entropy(joints, "Q", ("A1", "A2"))

    dev_part = device_partition(post, setup)
    dev_joints = device_joints(post, setup, dev_part)
    dev_bundle = DiagramBundle(
        party_factors=tuple((n, tuple(sorted(fs))) for n, fs in dev_part.parties),
        venn=venn_atoms(dev_joints),
        audit=audit_inequalities(dev_joints),
    )
    exact_mutual = mutual_entropy(dev_joints, "A1", "A2")

    sampled = None
    used_seed = seed
    if shots > 0:
        used_seed = 0 if seed is None else int(seed)
        sampled = _sampled_block(post, setup, shots, used_seed, chunk_size, exact_mutual)

    case = _orthodox_case_for(t1, t2)
    return DiagramReport(
        scenario="epr_measure",
        parameters={"theta1": t1, "theta2": t2, "shots": shots, "chunk_size": chunk_size},
        seed=used_seed,
        diagram=full_bundle,
        reduced=dev_bundle,
        ternary_center=center,
        q_devices_mutual=q_dev,
        sampled=sampled,
        orthodox=orthodox_reference(case) if case else None,
    )


def run_cat(with_observer: bool, grouping: str = "atom_gamma") -> DiagramReport:
    """Decay-chain diagram with the atomic party chosen by `grouping`.

    grouping "atom_gamma" groups factors {atom, gamma} as the atomic
    party; "atom" keeps only the atom there and leaves the gamma on the
    detector side with the cat, so the partition still covers the state.
    With an observer the report carries the three-party diagram, its
    center, and the reduced cat-observer diagram; without one, the
    two-party atomic-vs-cat diagram.
    """
    if grouping not in CAT_GROUPINGS:
        raise ValidationError(
            f"grouping must be one of {list(CAT_GROUPINGS)}, got {grouping!r}"
        )
    state = cat_chain(with_observer)
    rho = state.to_density()
    atomic = frozenset({0, 1}) if grouping == "atom_gamma" else frozenset({0})
    cat_side = frozenset({2}) if grouping == "atom_gamma" else frozenset({1, 2})

    if with_observer:
        partition = PartitionSpec(
            (("atomic", atomic), ("cat", cat_side), ("observer", frozenset({3})))
        )
    else:
        partition = PartitionSpec((("atomic", atomic), ("cat", cat_side)))

    joints = joint_entropies(rho, partition)
    bundle = DiagramBundle(
        party_factors=tuple((n, tuple(sorted(fs))) for n, fs in partition.parties),
        venn=venn_atoms(joints),
        audit=audit_inequalities(joints),
    )

    center = None
    reduced = None
    if with_observer:
        center = ternary_center(bundle.venn)
        q_dev = mutual_entropy(joints, "atomic", ("cat", "observer"))
        pair_part = PartitionSpec((("cat", cat_side), ("observer", frozenset({3}))))
        pair_joints = grouped_entropies(rho, pair_part)
        reduced = DiagramBundle(
            party_factors=tuple((n, tuple(sorted(fs))) for n, fs in pair_part.parties),
            venn=venn_atoms(pair_joints),
            audit=audit_inequalities(pair_joints),
        )
    else:
        q_dev = mutual_entropy(joints, "atomic", "cat")

    return DiagramReport(
        scenario="cat",
        parameters={"with_observer": bool(with_observer), "grouping": grouping},
        diagram=bundle,
        reduced=reduced,
        ternary_center=center,
        q_devices_mutual=q_dev,
    )


def run_chsh(
    angles: tuple[float, float, float, float] | None = None,
    scan_points: int = 0,
    seed: int | None = None,
) -> DiagramReport:
    """CHSH correlator sum for one angle set, optionally with a random scan.

    The scan draws angle quadruples uniformly from [0, 2 pi) and tracks the
    largest |S|; it can approach but never pass 2*sqrt(2).
    """
    if angles is None:
        angles = CANONICAL_CHSH_ANGLES
    angles = tuple(float(a) for a in angles)
    if len(angles) != 4:
        raise ValidationError(f"chsh needs 4 angles, got {len(angles)}")
    value = chsh_value(*angles)
    block = {
        "angles": angles,
        "value": value,
        "abs_value": abs(value),
        "classical_bound": CLASSICAL_BOUND,
        "tsirelson_bound": TSIRELSON_BOUND,
        "violates_classical": abs(value) > CLASSICAL_BOUND + 1e-9,
    }
    used_seed = seed
    if scan_points > 0:
        used_seed = 0 if seed is None else int(seed)
        rng = np.random.default_rng(used_seed)
        best = 0.0
        for quad in rng.uniform(0.0, 2.0 * math.pi, size=(int(scan_points), 4)):
            best = max(best, abs(chsh_value(*quad)))
        block["scan"] = {
            "points": int(scan_points),
            "seed": used_seed,
            "max_abs_value": best,
        }
    return DiagramReport(
        scenario="chsh",
        parameters={"angles": angles, "scan_points": int(scan_points)},
        seed=used_seed,
        chsh=block,
    )


def run_scenario(config: ScenarioConfig) -> DiagramReport:
    """Dispatch a validated config to its scenario."""
    if config.scenario_id == "epr_pair":
        return run_epr_pair()
    if config.scenario_id == "epr_measure":
        return run_epr_measure(
            config.theta1,
            config.theta2,
            shots=config.shots,
            seed=config.seed,
            chunk_size=config.chunk_size,
        )
    if config.scenario_id == "cat":
        return run_cat(config.with_observer, config.grouping)
    return run_chsh(config.angles, scan_points=config.scan_points, seed=config.seed)
