"""adelic-chars: validate, classify, quasiorbit, verify, catalog.

Exit codes: 0 ok, 1 parse error, 2 invalid system, 3 dimension or other
semantic error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .adelic import AdeleCharacter
from .catalog import CATALOG_NAMES, catalog_fixture, standard_levi_samples
from .chars import classify, quasi_orbit_key, same_quasi_orbit
from .group import InvalidSystem, LeviSystem, validate_system
from .io import (
    ParseError,
    canonical_json,
    lambda_from_json,
    lambda_to_json,
    load_file,
    report_to_json,
    report_to_text,
    subspace_to_json,
    system_from_json,
    system_to_json,
    verification_to_json,
)
from .nilpotent import NotNilpotent
from .qmod1 import NotPrime
from .ratlinalg import DimensionError
from .sampling import random_levi
from .verify import SUITES, run_suites

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_SEMANTIC, EXIT_VERIFY = range(5)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_system(path) -> LeviSystem:
    doc = _load(path)
    try:
        return system_from_json(doc)
    except InvalidSystem as exc:
        raise CliError(EXIT_INVALID, "invalid system:\n  " + "\n  ".join(exc.problems)) from None
    except (ParseError, KeyError, TypeError, DimensionError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _load_lambda(path) -> AdeleCharacter:
    doc = _load(path)
    try:
        return lambda_from_json(doc)
    except NotPrime as exc:
        raise CliError(EXIT_SEMANTIC, f"{path}: {exc}") from None
    except (ParseError, KeyError, TypeError, DimensionError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _load(path):
    try:
        return load_file(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _check_dim(lam: AdeleCharacter, system: LeviSystem, path) -> None:
    if lam.dim != system.dim:
        raise CliError(EXIT_SEMANTIC, f"{path}: character of Q^{lam.dim} on an algebra of dimension {system.dim}")


def levi_samples(system: LeviSystem, extra: int, seed: int):
    """Identity, central labels, exp(N_i), then ``extra`` seeded random words."""
    out = standard_levi_samples(system)
    rng = random.Random(f"{seed}:levi-samples")
    out += [random_levi(rng, system) for _ in range(extra)]
    return out


def _write(text: str, out) -> None:
    out.write(text)


# commands

def cmd_validate(args, out) -> int:
    doc = _load(args.system)
    try:
        system = system_from_json(doc, check=False)
    except InvalidSystem as exc:
        problems = exc.problems
    except (ParseError, KeyError, TypeError, DimensionError) as exc:
        raise CliError(EXIT_PARSE, f"{args.system}: {exc}") from None
    else:
        problems = validate_system(system)
    if problems:
        _write("invalid system:\n" + "".join(f"  {p}\n" for p in problems), out)
        return EXIT_INVALID
    _write(f"ok: {system.name or args.system} (dim {system.dim}, "
           f"{len(system.one_param_gens)} generators, {len(system.central_labels)} central labels)\n", out)
    return EXIT_OK


def classification_document(system: LeviSystem, lam: AdeleCharacter, samples: int, seed: int) -> dict:
    report = classify(lam, system, levi_samples(system, samples, seed))
    doc = report_to_json(report, system.algebra.basis_names)
    doc["seed"] = seed
    return doc


def cmd_classify(args, out) -> int:
    system = _load_system(args.system)
    lam = _load_lambda(args.lam)
    _check_dim(lam, system, args.lam)
    if args.text:
        report = classify(lam, system, levi_samples(system, args.samples, args.seed))
        _write(report_to_text(report, system.algebra.basis_names), out)
    else:
        _write(canonical_json(classification_document(system, lam, args.samples, args.seed)), out)
    return EXIT_OK


def cmd_quasiorbit(args, out) -> int:
    system = _load_system(args.system)
    lam1, lam2 = _load_lambda(args.lam1), _load_lambda(args.lam2)
    _check_dim(lam1, system, args.lam1)
    _check_dim(lam2, system, args.lam2)
    same = same_quasi_orbit(lam1, lam2, system)
    keys = []
    for lam in (lam1, lam2):
        key = quasi_orbit_key(lam, system)
        keys.append({"p": subspace_to_json(key.p), "restriction": lambda_to_json(key.restriction),
                     "chi_values": [str(v) for v in key.chi_values]})
    if args.json:
        _write(canonical_json({"same": same, "keys": keys}), out)
    else:
        for i, key in enumerate(keys, 1):
            _write(f"key {i}: p dim {key['p']['dim']}, chi on p basis [{', '.join(key['chi_values'])}]\n", out)
        _write("same\n" if same else "different\n", out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    system = _load_system(args.system)
    results = run_suites(system, args.suite, args.seed, negative_control=args.negative_control)
    doc = verification_to_json(system.name or os.path.basename(args.system), args.seed, results)
    if args.json:
        _write(canonical_json(doc), out)
    else:
        for r in results:
            extra = f" ({r.detail})" if r.detail else ""
            _write(f"{'PASS' if r.result else 'FAIL'} {r.check} [{r.samples} samples]{extra}\n", out)
        _write(f"{'passed' if doc['passed'] else 'FAILED'}: {sum(r.result for r in results)}/{len(results)} checks\n", out)
    return EXIT_OK if doc["passed"] else EXIT_VERIFY


def emit_catalog(name: str, directory: str, samples: int = 2, seed: int = 0) -> list[str]:
    """Write system.json, lambda_<case>.json and expected_<case>.json; returns the paths."""
    fixture = catalog_fixture(name)
    os.makedirs(directory, exist_ok=True)
    written = []

    def dump(fname, doc):
        path = os.path.join(directory, fname)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(canonical_json(doc))
        written.append(path)

    dump("system.json", system_to_json(fixture.system))
    for case, lam in fixture.labeled_lambdas:
        dump(f"lambda_{case}.json", lambda_to_json(lam))
        dump(f"expected_{case}.json", classification_document(fixture.system, lam, samples, seed))
    return written


def cmd_catalog(args, out) -> int:
    try:
        fixture = catalog_fixture(args.name)
    except (KeyError, ValueError) as exc:
        raise CliError(EXIT_SEMANTIC, str(exc).strip("'\"")) from None
    if args.emit:
        for path in emit_catalog(args.name, args.emit):
            _write(path + "\n", out)
    else:
        _write(canonical_json(system_to_json(fixture.system)), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adelic-chars", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a system description")
    p.add_argument("system")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="compute k, p, chi, V and L_lambda samples")
    p.add_argument("system")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("--samples", type=int, default=2, help="random Levi words added to the fixed samples")
    p.add_argument("--seed", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="canonical JSON report (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable report")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quasiorbit", help="compare the quasi-orbits of two characters")
    p.add_argument("system")
    p.add_argument("lam1", metavar="lambda1")
    p.add_argument("lam2", metavar="lambda2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_quasiorbit)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("system")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--negative-control", action="store_true",
                   help="also check a deliberately broken trace (makes the run fail)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="print or emit a built-in example system")
    p.add_argument("name", help=", ".join(CATALOG_NAMES))
    p.add_argument("--emit", metavar="DIR", help="write system, lambda and expected report files")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except (DimensionError, NotNilpotent, NotPrime) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
