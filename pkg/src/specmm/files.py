"""Instance and report files.

Instances are JSON objects with declared dimensions and row-major payoff
matrices; loading validates shape agreement and symmetry before anything
numeric runs, and every diagnostic names the offending field. Reports are
flat JSON objects whose floats round-trip bit-exactly (shortest exact
decimal form, up to 17 significant digits).
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .domains import InstanceSet
from .saddle import SaddleCertificate
from .symmat import SymMatrix
from .tolerances import DEFAULT_TOLS, Tolerances

__all__ = [
    "InstanceFormatError",
    "Report",
    "load_instance",
    "parse_instance",
    "report_from_certificate",
    "report_to_json",
    "report_from_json",
    "report_to_text",
]

logger = logging.getLogger(__name__)


class InstanceFormatError(ValueError):
    """Malformed instance data; the message names the first bad field."""


def parse_instance(doc: object, tols: Tolerances = DEFAULT_TOLS) -> tuple[InstanceSet, list[str] | None]:
    """Validate a decoded instance document and build the matrix family.

    Expected shape: {"n": int, "m": int, "matrices": [[[row], ...], ...]}
    with an optional "labels" list. Matrices are symmetrized on ingestion;
    asymmetry above 1e-6 (max absolute difference against the transpose)
    is an error, above 1e-9 a logged warning.
    """
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be an object")
    for field in ("n", "m", "matrices"):
        if field not in doc:
            raise InstanceFormatError(f"missing field {field!r}")
    n, m = doc["n"], doc["m"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceFormatError(f"field 'n' must be a positive integer, got {n!r}")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InstanceFormatError(f"field 'm' must be a positive integer, got {m!r}")
    mats = doc["matrices"]
    if not isinstance(mats, list):
        raise InstanceFormatError("field 'matrices' must be a list")
    if len(mats) != m:
        raise InstanceFormatError(f"field 'matrices' has {len(mats)} entries, declared m={m}")
    out = []
    for i, raw in enumerate(mats):
        try:
            arr = np.asarray(raw, dtype=float)
        except (TypeError, ValueError):
            raise InstanceFormatError(f"matrices[{i}] is not numeric") from None
        if arr.shape != (n, n):
            raise InstanceFormatError(
                f"matrices[{i}] has shape {'x'.join(map(str, arr.shape))}, expected {n}x{n}"
            )
        if not np.isfinite(arr).all():
            raise InstanceFormatError(f"matrices[{i}] contains a non-finite entry")
        asym = float(np.abs(arr - arr.T).max())
        if asym > tols.asymmetry_error:
            raise InstanceFormatError(
                f"matrices[{i}] asymmetry {asym:.3e} exceeds {tols.asymmetry_error:.0e}"
            )
        if asym > tols.asymmetry_warn:
            logger.warning("matrices[%d] asymmetry %.3e symmetrized away", i, asym)
        out.append(SymMatrix(arr))
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != m or not all(
            isinstance(s, str) for s in labels
        ):
            raise InstanceFormatError(f"field 'labels' must be a list of {m} strings")
    return InstanceSet(tuple(out)), labels


def load_instance(path: str, tols: Tolerances = DEFAULT_TOLS) -> tuple[InstanceSet, list[str] | None]:
    """Read and validate an instance file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from None
    return parse_instance(doc, tols)


@dataclass(frozen=True)
class Report:
    """Flat result record for one solve, sufficient to recheck the bounds."""

    value: float
    upper: float
    lower: float
    gap: float
    converged: bool
    iterations: int
    x_bar: list
    y_bar: list
    shift: float
    tool_version: str


def report_from_certificate(cert: SaddleCertificate, shift: float = 0.0) -> Report:
    return Report(
        value=cert.midpoint,
        upper=cert.upper,
        lower=cert.lower,
        gap=cert.gap,
        converged=cert.converged,
        iterations=cert.iterations,
        x_bar=[[float(v) for v in row] for row in cert.x_bar.array],
        y_bar=[float(v) for v in cert.y_bar.weights],
        shift=float(shift),
        tool_version=__version__,
    )


def report_to_json(report: Report) -> str:
    """Serialize; floats use their shortest exact decimal form, so loading
    the text reproduces every scalar bit for bit."""
    return json.dumps(asdict(report), indent=2) + "\n"


def report_from_json(text: str) -> Report:
    doc = json.loads(text)
    try:
        return Report(**doc)
    except TypeError as exc:
        raise InstanceFormatError(f"malformed report: {exc}") from None


def report_to_text(report: Report) -> str:
    """Human-oriented rendering; numbers are printed in the same exact
    form the JSON rendering uses."""
    lines = [
        f"value       {report.value!r}",
        f"upper       {report.upper!r}",
        f"lower       {report.lower!r}",
        f"gap         {report.gap!r}",
        f"converged   {report.converged}",
        f"iterations  {report.iterations}",
        f"shift       {report.shift!r}",
        f"y_bar       {' '.join(repr(v) for v in report.y_bar)}",
        "x_bar",
    ]
    for row in report.x_bar:
        lines.append("  " + " ".join(repr(v) for v in row))
    lines.append(f"tool        specmm {report.tool_version}")
    return "\n".join(lines) + "\n"
