"""Measurement as unitary entanglement with ancilla pointers.

Nothing here collapses: premeasure appends one |0> ancilla per tapped
qubit and entangles it with the system in the tap's basis, so the joint
state stays pure.  Statistics come from reading the ancilla factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .entropy import PartitionSpec, grouped_entropies
from .linalg import PureState, partial_trace
from .states import BasisAngle, basis_rotation, epr_singlet, spin_observable

CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class MeasurementSetup:
    """Which qubits get a pointer, in which basis, under which label."""

    taps: tuple[tuple[int, BasisAngle, str], ...]

    def __post_init__(self):
        taps = tuple(
            (int(f), a if isinstance(a, BasisAngle) else BasisAngle(float(a)), str(lbl))
            for f, a, lbl in self.taps
        )
        if not taps:
            raise ValidationError("a measurement setup needs at least one tap")
        factors = [f for f, _, _ in taps]
        if len(set(factors)) != len(factors):
            raise ValidationError(f"tap factors must be distinct, got {factors}")
        labels = [lbl for _, _, lbl in taps]
        if len(set(labels)) != len(labels):
            raise ValidationError(f"device labels must be distinct, got {labels}")
        object.__setattr__(self, "taps", taps)

    @classmethod
    def of(cls, *taps) -> "MeasurementSetup":
        return cls(tuple(taps))

    @property
    def device_labels(self) -> tuple[str, ...]:
        return tuple(lbl for _, _, lbl in self.taps)


@dataclass(frozen=True)
class OutcomeRecord:
    """One sampled shot: a bit per device, plus where it came from."""

    shot: int
    bits: tuple[int, ...]
    devices: tuple[str, ...]
    lineage: tuple[int, int]  # (root seed, chunk index)


def _apply_single(t: np.ndarray, m: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(m, t, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _apply_cnot(t: np.ndarray, control: int, target: int) -> np.ndarray:
    out = t.copy()
    sel: list = [slice(None)] * t.ndim
    sel[control] = 1
    tgt = target - 1 if target > control else target
    out[tuple(sel)] = np.flip(t[tuple(sel)], axis=tgt)
    return out


def premeasure(state: PureState, setup: MeasurementSetup) -> PureState:
    """Append one |0> ancilla per tap and copy each tap's basis bit onto it.

    Per tap at angle theta the circuit is (R^dag on the qubit) o CNOT o
    (R on the qubit) with the ancilla as CNOT target, taking |b_theta>|0>
    to |b_theta>|b>.  Ancillas land after the existing factors, in tap
    order.  The output is still a pure state.
    """
    n = state.num_factors
    for factor, _, label in setup.taps:
        if not 0 <= factor < n:
            raise ValidationError(f"tap {label!r} targets factor {factor}, state has {n}")
        if state.dims[factor] != 2:
            raise ValidationError(f"tap {label!r} targets a dim-{state.dims[factor]} factor; taps need qubits")
    k = len(setup.taps)
    dims = state.dims + (2,) * k
    padding = np.zeros(2**k, dtype=complex)
    padding[0] = 1.0
    t = np.kron(state.amplitudes, padding).reshape(dims)
    for i, (factor, angle, _) in enumerate(setup.taps):
        ancilla = n + i
        rot = basis_rotation(angle)
        t = _apply_single(t, rot, factor)
        t = _apply_cnot(t, factor, ancilla)
        t = _apply_single(t, rot.conj().T, factor)
    return PureState(t.reshape(-1), dims)


def device_factors(post: PureState, setup: MeasurementSetup) -> dict[str, int]:
    """Ancilla factor index per device label, for a state premeasure built."""
    base = post.num_factors - len(setup.taps)
    if base < 0:
        raise ValidationError("state has fewer factors than the setup has taps")
    return {label: base + i for i, (_, _, label) in enumerate(setup.taps)}


def device_partition(post: PureState, setup: MeasurementSetup) -> PartitionSpec:
    """One party per device, covering only the ancilla factors."""
    return PartitionSpec(
        tuple((label, frozenset({f})) for label, f in device_factors(post, setup).items())
    )


def full_partition(post: PureState, setup: MeasurementSetup, system_label: str = "Q") -> PartitionSpec:
    """The system factors as one party plus one party per device."""
    devs = device_factors(post, setup)
    if system_label in devs:
        raise ValidationError(f"system label {system_label!r} collides with a device label")
    base = post.num_factors - len(setup.taps)
    parties = [(system_label, frozenset(range(base)))]
    parties += [(label, frozenset({f})) for label, f in devs.items()]
    return PartitionSpec(tuple(parties))


def device_joints(
    post: PureState, setup: MeasurementSetup, grouping: PartitionSpec | None = None
) -> dict[tuple[str, ...], float]:
    """Joint entropies of a grouping of the post-measurement state.

    The grouping may cover only part of the state (e.g. just the devices);
    uncovered factors are traced out first.  Defaults to the device-only
    grouping.
    """
    if grouping is None:
        grouping = device_partition(post, setup)
    return grouped_entropies(post.to_density(), grouping)


def _device_subset(setup: MeasurementSetup, devices) -> tuple[str, ...]:
    if devices is None:
        return setup.device_labels
    got = tuple(str(d) for d in devices)
    known = set(setup.device_labels)
    for d in got:
        if d not in known:
            raise ValidationError(f"unknown device {d!r}, have {list(setup.device_labels)}")
    if len(set(got)) != len(got):
        raise ValidationError(f"repeated device in {got}")
    # keep tap order regardless of how the caller listed them
    return tuple(d for d in setup.device_labels if d in got)


def outcome_probabilities(
    post: PureState, setup: MeasurementSetup, devices=None
) -> np.ndarray:
    """Probability of each device bitstring: the diagonal of the devices'
    reduced density operator in the computational basis.

    Bitstrings are indexed with the first listed device as the most
    significant bit."""
    labels = _device_subset(setup, devices)
    factors = [device_factors(post, setup)[lbl] for lbl in labels]
    reduced = partial_trace(post.to_density(), factors)
    p = reduced.matrix.diagonal().real.copy()
    p[p < 0.0] = 0.0  # kill round-off negatives on the diagonal
    return p


def sample_records(
    post: PureState,
    setup: MeasurementSetup,
    shots: int,
    seed: int,
    chunk_size: int | None = None,
    devices=None,
) -> list[OutcomeRecord]:
    """Draw iid shots from outcome_probabilities.

    Sampling is chunked: chunk i uses the i-th child of SeedSequence(seed),
    so the records depend only on (seed, shots, chunk_size) and chunks could
    be drawn in any order or in parallel without changing the result.
    """
    shots = int(shots)
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    chunk = shots if chunk_size is None else int(chunk_size)
    if chunk < 1:
        raise ValidationError(f"chunk_size must be >= 1, got {chunk}")
    labels = _device_subset(setup, devices)
    p = outcome_probabilities(post, setup, devices=labels)
    p = p / p.sum()
    width = len(labels)
    n_chunks = -(-shots // chunk)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    records: list[OutcomeRecord] = []
    shot = 0
    for ci, child in enumerate(children):
        take = min(chunk, shots - ci * chunk)
        rng = np.random.default_rng(child)
        draws = rng.choice(len(p), size=take, p=p)
        for d in draws:
            bits = tuple((int(d) >> (width - 1 - i)) & 1 for i in range(width))
            records.append(
                OutcomeRecord(shot=shot, bits=bits, devices=labels, lineage=(int(seed), ci))
            )
            shot += 1
    return records


def correlator(theta_1: float, theta_2: float) -> float:
    """<M(theta_1) x M(theta_2)> on the singlet, exactly."""
    psi = epr_singlet().amplitudes
    op = np.kron(spin_observable(theta_1), spin_observable(theta_2))
    return float(np.real(psi.conj() @ (op @ psi)))


def chsh_value(a: float, a_prime: float, b: float, b_prime: float) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b') from exact singlet correlators.

    Angles are raw radians (orientation matters here).  |S| <= 2*sqrt(2)
    for any choice; the canonical angles (0, pi/2, pi/4, 3pi/4) saturate it.
    """
    return (
        correlator(a, b)
        - correlator(a, b_prime)
        + correlator(a_prime, b)
        + correlator(a_prime, b_prime)
    )
