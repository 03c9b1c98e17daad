"""Canonical report documents, state files, and text tables.

Documents are plain dicts with a fixed key order and every float
quantized to nine fractional digits, so serializing the same report
twice yields byte-identical output and parse(serialize(doc)) == doc.
The table renderer works from the same document, which keeps the two
formats numerically identical.
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path

import numpy as np

from .entropy import InequalityAudit, VennDiagram
from .errors import ValidationError
from .linalg import DensityOperator, PureState
from .scenarios import DiagramBundle, DiagramReport
from .version import __version__

SCHEMA_VERSION = "1.0.0"
_SEMVER = re.compile(r"^\d+\.\d+\.\d+$")


def q9(x: float) -> float:
    """Quantize to 9 fractional digits; -0.0 becomes 0.0."""
    r = round(float(x), 9)
    return 0.0 if r == 0.0 else r


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValidationError(f"non-finite number in document: {x!r}")
    if x == 0.0:
        x = 0.0
    return f"{x:.9f}"


def _emit(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, float):
        out.append(_fmt_float(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(", ")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            if not isinstance(k, str):
                raise ValidationError(f"document keys must be strings, got {k!r}")
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    else:
        raise ValidationError(f"cannot serialize {type(value).__name__} in a document")


def serialize_document(doc: dict) -> str:
    """Render a document to its canonical JSON text (no trailing newline)."""
    out: list[str] = []
    _emit(doc, out)
    return "".join(out)


def parse_document(text: str) -> dict:
    """Parse canonical JSON and check the schema version tag."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    version = doc.get("schema_version")
    if not isinstance(version, str) or not _SEMVER.match(version):
        raise ValidationError(f"schema_version missing or not semver: {version!r}")
    return doc


def _subset_key(subset: tuple[str, ...]) -> str:
    return ",".join(subset)


def _audit_block(audit: InequalityAudit) -> dict:
    def slack(v):
        return None if v is None else q9(v)

    return {
        "monotonicity_violated": [
            {"subset": _subset_key(a), "superset": _subset_key(b)}
            for a, b in audit.monotonicity_violated
        ],
        "subadditivity_ok": audit.subadditivity_ok,
        "subadditivity_worst_slack": slack(audit.subadditivity_worst_slack),
        "triangle_ok": audit.triangle_ok,
        "triangle_worst_slack": slack(audit.triangle_worst_slack),
        "strong_subadditivity_ok": audit.strong_subadditivity_ok,
        "strong_subadditivity_worst_slack": slack(audit.strong_subadditivity_worst_slack),
    }


def _diagram_block(bundle: DiagramBundle) -> dict:
    venn = bundle.venn
    return {
        "parties": list(venn.parties),
        "factors": {name: list(factors) for name, factors in bundle.party_factors},
        "joints": {_subset_key(s): q9(v) for s, v in venn.joints.items()},
        "atoms": {_subset_key(s): q9(v) for s, v in venn.atoms.items()},
        "audit": _audit_block(bundle.audit),
    }


def _orthodox_block(orthodox: dict) -> dict:
    return {
        "case": orthodox["case"],
        "label": orthodox["label"],
        "parties": list(orthodox["parties"]),
        "joints": {_subset_key(s): q9(v) for s, v in orthodox["joints"].items()},
        "atoms": {_subset_key(s): q9(v) for s, v in orthodox["atoms"].items()},
        "consistent": orthodox["consistent"],
        "warning": orthodox["warning"],
    }


def _sampled_block(sampled: dict) -> dict:
    out = {
        "shots": sampled["shots"],
        "seed": sampled["seed"],
        "chunk_size": sampled["chunk_size"],
        "devices": list(sampled["devices"]),
        "counts": dict(sampled["counts"]),
        "frequencies": {k: q9(v) for k, v in sampled["frequencies"].items()},
        "entropies": {k: q9(v) for k, v in sampled["entropies"].items()},
    }
    if "mutual" in sampled:
        out["mutual"] = q9(sampled["mutual"])
        out["exact_mutual"] = q9(sampled["exact_mutual"])
    return out


def _chsh_block(chsh: dict) -> dict:
    out = {
        "angles": [q9(a) for a in chsh["angles"]],
        "value": q9(chsh["value"]),
        "abs_value": q9(chsh["abs_value"]),
        "classical_bound": q9(chsh["classical_bound"]),
        "tsirelson_bound": q9(chsh["tsirelson_bound"]),
        "violates_classical": chsh["violates_classical"],
    }
    if "scan" in chsh:
        scan = chsh["scan"]
        out["scan"] = {
            "points": scan["points"],
            "seed": scan["seed"],
            "max_abs_value": q9(scan["max_abs_value"]),
        }
    return out


def _parameters_block(parameters: dict) -> dict:
    out = {}
    for key, value in parameters.items():
        if isinstance(value, float):
            out[key] = q9(value)
        elif isinstance(value, (list, tuple)):
            out[key] = [q9(v) if isinstance(v, float) else v for v in value]
        else:
            out[key] = value
    return out


def report_document(report: DiagramReport) -> dict:
    """The canonical JSON-ready form of a scenario report."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": report.tool_version,
        "scenario": report.scenario,
        "parameters": _parameters_block(report.parameters),
        "seed": report.seed,
        "diagram": _diagram_block(report.diagram) if report.diagram else None,
        "reduced_diagram": _diagram_block(report.reduced) if report.reduced else None,
        "ternary_center": None if report.ternary_center is None else q9(report.ternary_center),
        "q_devices_mutual": (
            None if report.q_devices_mutual is None else q9(report.q_devices_mutual)
        ),
        "sampled": _sampled_block(report.sampled) if report.sampled else None,
        "orthodox": _orthodox_block(report.orthodox) if report.orthodox else None,
        "chsh": _chsh_block(report.chsh) if report.chsh else None,
    }


def diagram_document(source: str, bundle: DiagramBundle, center: float | None) -> dict:
    """Document for the CLI diagram/audit commands over a state file."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "state_file": source,
        "diagram": _diagram_block(bundle),
        "ternary_center": None if center is None else q9(center),
    }


# ---------------------------------------------------------------------------
# state files

def load_state(path) -> PureState | DensityOperator:
    """Read a state file: {"kind", "dims", "data"} with data as [re, im] pairs.

    Pure states list amplitudes; density operators list the matrix
    entries flattened row-major.  All construction invariants are
    enforced, including positive semidefiniteness for densities.
    """
    p = Path(path)
    try:
        raw = p.read_text()
    except OSError as exc:
        raise ValidationError(f"{p}: cannot read: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{p}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{p}: expected a JSON object")

    kind = doc.get("kind")
    if kind not in ("pure", "density"):
        raise ValidationError(f"{p}: kind: expected 'pure' or 'density', got {kind!r}")
    dims = doc.get("dims")
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) for d in dims):
        raise ValidationError(f"{p}: dims: expected a nonempty list of integers")
    data = doc.get("data")
    if not isinstance(data, list):
        raise ValidationError(f"{p}: data: expected a list of [re, im] pairs")

    values = np.empty(len(data), dtype=complex)
    for i, entry in enumerate(data):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, (int, float)) for x in entry)
        ):
            raise ValidationError(f"{p}: data[{i}]: expected [re, im]")
        values[i] = complex(entry[0], entry[1])

    d = math.prod(dims)
    if kind == "pure":
        if len(data) != d:
            raise ValidationError(
                f"{p}: data: {len(data)} amplitudes but dims {dims} need {d}"
            )
        return PureState(values, tuple(dims))
    if len(data) != d * d:
        raise ValidationError(
            f"{p}: data: {len(data)} entries but dims {dims} need {d * d}"
        )
    rho = DensityOperator(values.reshape(d, d), tuple(dims))
    rho.validate_psd()
    return rho


def state_document(state: PureState | DensityOperator) -> dict:
    """The JSON form load_state reads, for writing states out."""
    if isinstance(state, PureState):
        flat = state.amplitudes
        kind = "pure"
    else:
        flat = state.matrix.reshape(-1)
        kind = "density"
    return {
        "kind": kind,
        "dims": list(state.dims),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def serialize_state(state: PureState | DensityOperator) -> str:
    """Full-precision JSON for a state file.

    Report documents round to 9 fractional digits; state files must
    round-trip through load_state within 1e-12, so they keep the full
    float repr instead.
    """
    return json.dumps(state_document(state)) + "\n"


# ---------------------------------------------------------------------------
# tables

def _region_label(subset: tuple[str, ...], parties: tuple[str, ...]) -> str:
    rest = [prt for prt in parties if prt not in subset]
    if not rest:
        return ":".join(subset)
    return ":".join(subset) + "|" + ",".join(rest)


def render_venn_table(diagram: VennDiagram) -> str:
    """Fixed-width text table of Venn regions.

    Two and three parties get conditional/mutual region labels; larger
    diagrams fall back to a plain subset listing.  Atom values always
    carry an explicit sign.
    """
    if len(diagram.parties) <= 3:
        rows = [
            (_region_label(subset, diagram.parties), value)
            for subset, value in diagram.atoms.items()
        ]
    else:
        rows = [(_subset_key(subset), value) for subset, value in diagram.atoms.items()]
    width = max(len(label) for label, _ in rows)
    lines = [f"{'region':<{width}}  atom (bits)"]
    for label, value in rows:
        lines.append(f"{label:<{width}}  {q9(value):+.9f}")
    return "\n".join(lines)


def _joints_table(joints: dict[str, float]) -> list[str]:
    width = max(len(k) for k in joints)
    lines = [f"{'subset':<{width}}  entropy (bits)"]
    for key, value in joints.items():
        lines.append(f"{key:<{width}}  {value:.9f}")
    return lines


def _atoms_table(atoms: dict[str, float], parties: list[str]) -> list[str]:
    names = tuple(parties)
    if len(names) <= 3:
        rows = [(_region_label(tuple(k.split(",")), names), v) for k, v in atoms.items()]
    else:
        rows = list(atoms.items())
    width = max(len(label) for label, _ in rows)
    lines = [f"{'region':<{width}}  atom (bits)"]
    for label, value in rows:
        lines.append(f"{label:<{width}}  {value:+.9f}")
    return lines


def _audit_lines(audit: dict) -> list[str]:
    lines = []
    mono = audit["monotonicity_violated"]
    if mono:
        pairs = ", ".join(f"S({m['subset']}) > S({m['superset']})" for m in mono)
        lines.append(f"monotonicity violations: {pairs}")
    else:
        lines.append("monotonicity violations: none")
    for name, label in (
        ("subadditivity", "subadditivity"),
        ("triangle", "triangle"),
        ("strong_subadditivity", "strong subadditivity"),
    ):
        ok = audit[f"{name}_ok"]
        slack = audit[f"{name}_worst_slack"]
        if slack is None:
            lines.append(f"{label}: not applicable")
        else:
            lines.append(f"{label}: {'ok' if ok else 'VIOLATED'} (worst slack {slack:.9f})")
    return lines


def _diagram_lines(title: str, block: dict) -> list[str]:
    factors = "  ".join(
        f"{name}={','.join(str(f) for f in fs)}" for name, fs in block["factors"].items()
    )
    lines = [title, f"parties: {factors}", ""]
    lines += _joints_table(block["joints"])
    lines.append("")
    lines += _atoms_table(block["atoms"], block["parties"])
    lines.append("")
    lines += _audit_lines(block["audit"])
    return lines


def render_report_table(doc: dict) -> str:
    """Text rendering of a report document; numbers match the JSON exactly."""
    lines: list[str] = []
    if "scenario" in doc:
        lines.append(f"scenario: {doc['scenario']}")
        params = doc.get("parameters") or {}
        if params:
            lines.append(
                "parameters: "
                + "  ".join(f"{k}={_param_str(v)}" for k, v in params.items())
            )
        if doc.get("seed") is not None:
            lines.append(f"seed: {doc['seed']}")
    elif "state_file" in doc:
        lines.append(f"state: {doc['state_file']}")
    if doc.get("diagram"):
        lines.append("")
        lines += _diagram_lines("-- diagram --", doc["diagram"])
    if doc.get("reduced_diagram"):
        lines.append("")
        lines += _diagram_lines("-- reduced diagram --", doc["reduced_diagram"])
    if doc.get("ternary_center") is not None:
        lines.append("")
        lines.append(f"ternary center: {doc['ternary_center']:+.9f}")
    if doc.get("q_devices_mutual") is not None:
        lines.append(f"quantum:devices mutual: {doc['q_devices_mutual']:.9f}")
    if doc.get("sampled"):
        lines.append("")
        lines += _sampled_lines(doc["sampled"])
    if doc.get("orthodox"):
        lines.append("")
        lines += _orthodox_lines(doc["orthodox"])
    if doc.get("chsh"):
        lines.append("")
        lines += _chsh_lines(doc["chsh"])
    return "\n".join(lines)


def _param_str(value) -> str:
    if isinstance(value, float):
        return f"{value:.9f}"
    if isinstance(value, list):
        return "[" + ",".join(_param_str(v) for v in value) + "]"
    return str(value)


def _sampled_lines(block: dict) -> list[str]:
    lines = [
        f"sampled: shots={block['shots']} seed={block['seed']}"
        + (f" chunk_size={block['chunk_size']}" if block["chunk_size"] else "")
    ]
    counts = "  ".join(f"{k}:{v}" for k, v in block["counts"].items())
    lines.append(f"counts: {counts}")
    for key, value in block["entropies"].items():
        lines.append(f"H({key}) = {value:.9f}")
    if "mutual" in block:
        lines.append(
            f"empirical mutual = {block['mutual']:.9f} (exact {block['exact_mutual']:.9f})"
        )
    return lines


def _orthodox_lines(block: dict) -> list[str]:
    lines = [f"orthodox reference ({block['case']}): {block['label']}"]
    lines += _atoms_table(block["atoms"], block["parties"])
    lines.append(f"warning: {block['warning']}")
    return lines


def _chsh_lines(block: dict) -> list[str]:
    lines = [
        f"CHSH S = {block['value']:.9f}  (|S| = {block['abs_value']:.9f})",
    ]
    if block["violates_classical"]:
        lines.append(
            f"violates classical bound {block['classical_bound']:g} "
            f"(Tsirelson bound {block['tsirelson_bound']:.9f})"
        )
    else:
        lines.append(
            f"within classical bound {block['classical_bound']:g} "
            f"(Tsirelson bound {block['tsirelson_bound']:.9f})"
        )
    if "scan" in block:
        scan = block["scan"]
        lines.append(
            f"scan: max |S| = {scan['max_abs_value']:.9f} over {scan['points']} "
            f"random angle sets (seed {scan['seed']})"
        )
    return lines
