"""Command-line front end.

Exit codes: 0 on success, 2 for anything wrong with the input (bad
flags, malformed files, invalid angles or partitions), 1 for an internal
numerical fault.  Data goes to stdout, messages to stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .entropy import (
    PartitionSpec,
    audit_inequalities,
    grouped_entropies,
    ternary_center,
    venn_atoms,
)
from .errors import NumericalFaultError, ValidationError
from .report import (
    diagram_document,
    load_state,
    render_report_table,
    report_document,
    serialize_document,
)
from .scenarios import (
    SCENARIO_IDS,
    DiagramBundle,
    ScenarioConfig,
    run_scenario,
)
from .version import __version__

SEED_ENV_VAR = "ENTROSCOPE_SEED"

ANGLE_ALIASES = {"z": 0.0, "x": math.pi / 2.0}


def parse_angle(text: str) -> float:
    """Radians, or the aliases z (0) and x (pi/2)."""
    token = text.strip().lower()
    if token in ANGLE_ALIASES:
        return ANGLE_ALIASES[token]
    try:
        return float(token)
    except ValueError:
        raise ValidationError(
            f"bad angle {text!r}: expected radians or one of {sorted(ANGLE_ALIASES)}"
        ) from None


def parse_partition(text: str) -> PartitionSpec:
    """Parse 'Q=0,1;A1=2;A2=3' into a PartitionSpec."""
    parties = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, eq, factors = chunk.partition("=")
        if not eq or not name.strip():
            raise ValidationError(f"bad partition chunk {chunk!r}: expected NAME=i,j,...")
        try:
            fs = frozenset(int(f) for f in factors.split(","))
        except ValueError:
            raise ValidationError(f"bad factor list in {chunk!r}") from None
        parties.append((name.strip(), fs))
    if not parties:
        raise ValidationError(f"empty partition spec {text!r}")
    return PartitionSpec(tuple(parties))


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{SEED_ENV_VAR}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="entroscope",
        description="Entropy Venn diagrams and pre-measurement analysis for small quantum systems.",
    )
    ap.add_argument("--version", action="version", version=f"entroscope {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scenario", help="run a canned analysis")
    sc.add_argument("scenario_id", choices=SCENARIO_IDS)
    sc.add_argument("--theta1", type=parse_angle, help="first device angle (radians, or z|x)")
    sc.add_argument("--theta2", type=parse_angle, help="second device angle (radians, or z|x)")
    sc.add_argument("--shots", type=int, default=0, help="sample this many shots (0 = exact only)")
    sc.add_argument("--seed", type=int, default=None, help=f"sampling seed (default {SEED_ENV_VAR} or 0)")
    sc.add_argument("--grouping", choices=("atom", "atom_gamma"), default="atom_gamma",
                    help="which factors form the atomic party in the cat scenario")
    sc.add_argument("--observer", action="store_true", help="include the observer factor (cat scenario)")
    sc.add_argument("--format", choices=("json", "table"), default="table")

    dg = sub.add_parser("diagram", help="Venn diagram of a state file under a partition")
    dg.add_argument("--state", required=True, help="path to a state JSON file")
    dg.add_argument("--partition", required=True, help="e.g. 'Q=0,1;A1=2;A2=3'")
    dg.add_argument("--format", choices=("json", "table"), default="table")

    ch = sub.add_parser("chsh", help="CHSH correlator sum")
    ch.add_argument("--angles", help="a,a',b,b' in radians (or z|x); default canonical")
    ch.add_argument("--scan", type=int, default=0, metavar="N", help="also scan N random angle sets")
    ch.add_argument("--seed", type=int, default=None, help=f"scan seed (default {SEED_ENV_VAR} or 0)")
    ch.add_argument("--format", choices=("json", "table"), default="table")

    au = sub.add_parser("audit", help="entropy inequality audit of a state file")
    au.add_argument("--state", required=True, help="path to a state JSON file")
    au.add_argument("--partition", default=None, help="defaults to one party per factor")
    au.add_argument("--format", choices=("json", "table"), default="table")

    return ap


def _emit_doc(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(serialize_document(doc))
    else:
        print(render_report_table(doc))


def _cmd_scenario(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    config = ScenarioConfig(
        scenario_id=args.scenario_id,
        theta1=args.theta1,
        theta2=args.theta2,
        shots=args.shots,
        seed=seed,
        grouping=args.grouping,
        with_observer=args.observer,
    )
    report = run_scenario(config)
    _emit_doc(report_document(report), args.format)
    return 0


def _state_bundle(path: str, partition: PartitionSpec) -> tuple[DiagramBundle, float | None]:
    state = load_state(path)
    rho = state.to_density() if hasattr(state, "to_density") else state
    joints = grouped_entropies(rho, partition)
    venn = venn_atoms(joints)
    audit = audit_inequalities(joints)
    bundle = DiagramBundle(
        party_factors=tuple((n, tuple(sorted(fs))) for n, fs in partition.parties),
        venn=venn,
        audit=audit,
    )
    center = ternary_center(venn) if len(venn.parties) == 3 else None
    return bundle, center


def _cmd_diagram(args) -> int:
    bundle, center = _state_bundle(args.state, parse_partition(args.partition))
    _emit_doc(diagram_document(args.state, bundle, center), args.format)
    return 0


def _cmd_audit(args) -> int:
    state = load_state(args.state)
    if args.partition is not None:
        partition = parse_partition(args.partition)
    else:
        n = len(state.dims)
        if n > 5:
            raise ValidationError(
                f"state has {n} factors; pass --partition to group them into at most 5 parties"
            )
        partition = PartitionSpec(
            tuple((f"F{i}", frozenset({i})) for i in range(n))
        )
    bundle, center = _state_bundle(args.state, partition)
    _emit_doc(diagram_document(args.state, bundle, center), args.format)
    return 0


def _cmd_chsh(args) -> int:
    angles = None
    if args.angles is not None:
        tokens = [t for t in args.angles.split(",") if t.strip()]
        if len(tokens) != 4:
            raise ValidationError(f"--angles needs 4 comma-separated values, got {len(tokens)}")
        angles = tuple(parse_angle(t) for t in tokens)
    seed = args.seed if args.seed is not None else default_seed()
    config = ScenarioConfig(
        scenario_id="chsh", angles=angles, scan_points=args.scan, seed=seed
    )
    report = run_scenario(config)
    _emit_doc(report_document(report), args.format)
    return 0


_COMMANDS = {
    "scenario": _cmd_scenario,
    "diagram": _cmd_diagram,
    "chsh": _cmd_chsh,
    "audit": _cmd_audit,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse prints usage itself; keep its code
        return int(exc.code or 0)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFaultError as exc:
        print(f"numerical fault: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
