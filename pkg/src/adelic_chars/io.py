"""JSON documents: systems, characters, classification and verification reports.

Rationals are written as "num/den" strings.  Output is canonical
(sorted keys, two-space indent, trailing newline) so files can be compared
byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .adelic import INF, AdeleCharacter
from .chars import ClassificationReport
from .group import LeviSystem
from .nilpotent import LieAlgebra
from .qmod1 import Phase
from .ratlinalg import RatMatrix, Subspace

TOOL = "adelic-chars"
VERSION = "0.1.0"


class ParseError(ValueError):
    """Malformed document (bad JSON, missing keys, bad rationals)."""


def fmt_q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"rational expected as a string, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ParseError(f"rational expected as a string, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {s!r}") from None


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def load_file(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _get(doc, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing key {key!r}")
    return doc[key]


def matrix_to_json(m: RatMatrix) -> list[list[str]]:
    return [[fmt_q(x) for x in row] for row in m.to_rows()]


def matrix_from_json(rows, dim: int) -> RatMatrix:
    if not isinstance(rows, list) or len(rows) != dim or any(
            not isinstance(r, list) or len(r) != dim for r in rows):
        raise ParseError(f"expected a {dim}x{dim} matrix")
    return RatMatrix.from_rows([[parse_q(x) for x in r] for r in rows], dim)


def vector_to_json(v) -> list[str]:
    return [fmt_q(x) for x in v]


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "dim": s.dim, "basis": [vector_to_json(b) for b in s.vectors()]}


def subspace_from_json(doc) -> Subspace:
    d = _get(doc, "ambient_dim")
    return Subspace.span([[parse_q(x) for x in b] for b in _get(doc, "basis")], d)


# systems

def system_to_json(system: LeviSystem) -> dict:
    labels = list(system.central_labels)
    return {
        "name": system.name,
        "dim": system.dim,
        "basis_names": list(system.algebra.basis_names),
        "structure": [[i, j, k, fmt_q(c)] for i, j, k, c in system.algebra.triples()],
        "levi_generators": [matrix_to_json(m) for m in system.one_param_gens],
        "central_table": {
            "labels": labels,
            "actions": [matrix_to_json(m) for m in system.central_actions],
            "table": [[system.table[(a, b)] for b in labels] for a in labels],
        },
    }


def system_from_json(doc, check: bool = True) -> LeviSystem:
    """Build a system; with ``check`` an invalid one raises InvalidSystem."""
    dim = _get(doc, "dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise ParseError("dim must be a non-negative integer")
    triples = []
    for t in doc.get("structure", []):
        if not isinstance(t, list) or len(t) != 4:
            raise ParseError(f"structure entry {t!r} is not [i, j, k, c]")
        i, j, k, c = t
        if not all(isinstance(x, int) and 0 <= x < dim for x in (i, j, k)):
            raise ParseError(f"structure indices out of range in {t!r}")
        if i >= j:
            raise ParseError(f"structure entry {t!r} needs i < j")
        triples.append((i, j, k, parse_q(c)))
    names = doc.get("basis_names") or ()
    if names and len(names) != dim:
        raise ParseError("basis_names length differs from dim")
    algebra = LieAlgebra.from_triples(dim, triples, names)
    gens = [matrix_from_json(m, dim) for m in doc.get("levi_generators", [])]
    central = None
    table = None
    ct = doc.get("central_table")
    if ct is not None:
        labels = _get(ct, "labels")
        actions = _get(ct, "actions")
        if not isinstance(labels, list) or not labels or len(actions) != len(labels):
            raise ParseError("central_table needs matching non-empty labels and actions")
        central = [(str(lbl), matrix_from_json(m, dim)) for lbl, m in zip(labels, actions)]
        rows = ct.get("table")
        if rows is not None:
            if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
                raise ParseError("central_table.table must be square over the labels")
            table = {(a, b): str(rows[i][j]) for i, a in enumerate(labels) for j, b in enumerate(labels)}
    return LeviSystem.build(algebra, gens, central, table, name=str(doc.get("name", "")), check=check)


# characters

def lambda_to_json(lam: AdeleCharacter) -> dict:
    return {"dim": lam.dim,
            "components": [{"place": v, "vector": vector_to_json(vec)} for v, vec in lam.comps]}


def lambda_from_json(doc) -> AdeleCharacter:
    dim = _get(doc, "dim")
    comps = []
    for c in _get(doc, "components"):
        place = _get(c, "place")
        if place != INF and isinstance(place, str):
            try:
                place = int(place)
            except ValueError:
                raise ParseError(f"bad place {place!r}") from None
        comps.append((place, [parse_q(x) for x in _get(c, "vector")]))
    return AdeleCharacter.from_components(dim, comps)


# classification reports

def report_to_json(r: ClassificationReport, basis_names=()) -> dict:
    doc = {
        "tool": TOOL,
        "version": VERSION,
        "lambda": lambda_to_json(r.lam),
        "k": subspace_to_json(r.k),
        "p": subspace_to_json(r.p),
        "chi_on_p_basis": [str(ph) for ph in r.chi_on_p_basis],
        "orbit_V": subspace_to_json(r.orbit_V),
        "duality_ok": r.duality_ok,
        "l_lambda_samples": [{"element": e, "in_L_lambda": b} for e, b in r.l_lambda_samples],
    }
    if basis_names:
        doc["basis_names"] = list(basis_names)
    return doc


def report_from_json(doc) -> ClassificationReport:
    return ClassificationReport(
        lam=lambda_from_json(_get(doc, "lambda")),
        k=subspace_from_json(_get(doc, "k")),
        p=subspace_from_json(_get(doc, "p")),
        chi_on_p_basis=tuple(Phase.parse(s) for s in _get(doc, "chi_on_p_basis")),
        orbit_V=subspace_from_json(_get(doc, "orbit_V")),
        duality_ok=bool(_get(doc, "duality_ok")),
        l_lambda_samples=tuple((s["element"], bool(s["in_L_lambda"])) for s in _get(doc, "l_lambda_samples")),
    )


def _combo(v, names) -> str:
    terms = []
    for c, n in zip(v, names):
        if c:
            terms.append(n if c == 1 else f"-{n}" if c == -1 else f"{c}*{n}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def report_to_text(r: ClassificationReport, names) -> str:
    def span(s: Subspace) -> str:
        return "span{" + ", ".join(_combo(b, names) for b in s.vectors()) + "}"

    lines = [f"k_lambda (dim {r.k.dim}): {span(r.k)}",
             f"p_lambda (dim {r.p.dim}): {span(r.p)}",
             "chi_lambda on p basis: " + (", ".join(map(str, r.chi_on_p_basis)) or "-"),
             f"orbit direction V (dim {r.orbit_V.dim}): {span(r.orbit_V)}",
             f"duality p = ann(V): {'ok' if r.duality_ok else 'FAILED'}",
             "L_lambda membership:"]
    lines += [f"  {e}: {'yes' if b else 'no'}" for e, b in r.l_lambda_samples]
    return "\n".join(lines) + "\n"


# verification reports

@dataclass(frozen=True)
class CheckResult:
    check: str
    samples: int
    seed: int
    result: bool
    tolerance: str | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "samples": self.samples, "seed": self.seed,
                "result": "pass" if self.result else "fail", "tolerance": self.tolerance,
                "detail": self.detail}

    @classmethod
    def from_json(cls, doc) -> "CheckResult":
        return cls(_get(doc, "check"), _get(doc, "samples"), _get(doc, "seed"),
                   _get(doc, "result") == "pass", doc.get("tolerance"), doc.get("detail", ""))


def verification_to_json(system_name: str, seed: int, results) -> dict:
    return {"tool": TOOL, "version": VERSION, "system": system_name, "seed": seed,
            "passed": all(r.result for r in results),
            "results": [r.to_json() for r in results]}


def verification_from_json(doc) -> tuple[str, int, list[CheckResult]]:
    return (_get(doc, "system"), _get(doc, "seed"),
            [CheckResult.from_json(r) for r in _get(doc, "results")])
