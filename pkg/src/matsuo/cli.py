"""Command-line front end: build, derive, classify-lines and verify.

Every command emits a versioned JSON report (schema 1) with exact scalars
serialized as strings.  Reports are byte-identical across runs for fixed
inputs and seed; wall-clock timing is only included on request since it
would break that guarantee.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
descriptor error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__, autos
from .algebra import AlgebraError, MatsuoAlgebra
from .deriv import (
    LinearEndo,
    derivation_basis,
    is_derivation,
    satisfies_r_system,
    spans_agree,
    vanishing_report,
)
from .fields import BadDescriptor, Field, FieldError, parse_field, sqrt_in_field
from .fischer import space_of
from .roots import parse_root_system
from .transpo import CATALOG, parse_group

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _positive_threads() -> int:
    raw = os.environ.get("MATSUO_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"MATSUO_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError("MATSUO_THREADS must be a positive integer")
    return n


def _parse_eta(field: Field, text: str):
    try:
        return field.coerce(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot parse eta {text!r}: {e}")


def _build_algebra(group_desc: str, field_desc: str, eta_text: str) -> MatsuoAlgebra:
    try:
        g = parse_group(group_desc)
    except ValueError as e:
        raise UsageError(str(e))
    try:
        field = parse_field(field_desc)
    except BadDescriptor as e:
        raise UsageError(str(e))
    eta = _parse_eta(field, eta_text)
    try:
        return MatsuoAlgebra(space_of(g), eta, field)
    except AlgebraError as e:
        raise UsageError(str(e))


def _report(args, command: str, results: dict, passed: bool = True) -> dict:
    doc = {
        "schema": 1,
        "version": __version__,
        "command": command,
        "group": getattr(args, "group", None),
        "field": getattr(args, "field", None),
        "eta": getattr(args, "eta", None),
        "seed": getattr(args, "seed", None),
        "passed": passed,
        "results": results,
    }
    if getattr(args, "timing", False):
        doc["duration_s"] = round(time.time() - args._t0, 3)
    return doc


# -- build -------------------------------------------------------------------


def cmd_build(args) -> tuple[dict, list[dict]]:
    A = _build_algebra(args.group, args.field, args.eta)
    fs = A.fs
    results = {
        "points": fs.n,
        "lines": len(fs.lines),
        "family": fs.family,
        "connected": fs.is_connected(),
    }
    if fs.family == "affine_weyl":
        vertical = [l for l in fs.lines if fs.line_orbit_class(l) == "vertical"]
        results["vertical_lines"] = len(vertical)
    if args.products:
        results["algebra"] = json.loads(A.to_json())
    table = [
        {"line": i, "points": " ".join(fs.labels[p] for p in line)}
        for i, line in enumerate(fs.lines)
    ]
    return _report(args, "build", results), table


# -- derive ------------------------------------------------------------------


def cmd_derive(args) -> tuple[dict, list[dict]]:
    A = _build_algebra(args.group, args.field, args.eta)
    systems = ("leibniz", "r") if args.system == "both" else (args.system,)
    bases = {}
    for s in systems:
        bases[s] = derivation_basis(A, system=s)
    results = {"dimension": {s: len(b) for s, b in bases.items()}}
    passed = True
    if len(bases) == 2:
        agree = spans_agree(A, bases["leibniz"], bases["r"])
        results["systems_agree"] = agree
        passed = agree
    basis = next(iter(bases.values()))
    results["basis"] = [
        [[a, b, A.field.format(v)] for a, col in enumerate(d.cols) for b, v in sorted(col.items())]
        for d in basis
    ]
    report = vanishing_report(A, basis)
    nonzero = sorted(pair for pair, vanishes in report.items() if not vanishes)
    results["nonvanishing_collinear_pairs"] = len(nonzero)
    table = [
        {"a": A.fs.labels[a], "b": A.fs.labels[b], "coefficient_vanishes": report[(a, b)]}
        for (a, b) in sorted(report)
    ]
    return _report(args, "derive", results, passed), table


# -- classify-lines ------------------------------------------------------------


def cmd_classify(args) -> tuple[dict, list[dict]]:
    try:
        g = parse_group(args.group)
    except ValueError as e:
        raise UsageError(str(e))
    fs = space_of(g)
    rows = []
    near = []
    for i, line in enumerate(fs.lines):
        ok, witness = fs.is_near_solid(line)
        row = {
            "line": i,
            "points": " ".join(fs.labels[p] for p in line),
            "near_solid": ok,
        }
        if fs.family == "affine_weyl":
            row["orbit"] = fs.line_orbit_class(line)
        if witness is not None:
            row["witness_type"] = witness["type"]
        rows.append(row)
        if ok:
            near.append(line)
    covered = sorted(p for line in near for p in line)
    spread = len(covered) == fs.n and len(set(covered)) == fs.n
    results = {
        "lines": len(fs.lines),
        "near_solid": len(near),
        "near_solid_lines_form_spread": spread,
    }
    if fs.family == "affine_weyl":
        results["vertical_near_solid"] = sum(
            1 for line in near if fs.line_orbit_class(line) == "vertical"
        )
    return _report(args, "classify-lines", results), rows


# -- verify ------------------------------------------------------------------


def _suite_fusion(field: Field, groups, ledger: list) -> None:
    half = field.coerce(Fraction(1, 2))
    for gdesc in groups:
        A = MatsuoAlgebra(space_of(parse_group(gdesc)), half, field)
        bad = []
        for a in range(A.dim):
            dec = A.eigendecompose(a)
            if sum(dec.dims) != A.dim:
                bad.append({"axis": a, "reason": "eigenspace dims do not sum"})
            bad.extend(A.check_fusion(a))
        ledger.append({"check": f"fusion {gdesc}", "passed": not bad, "detail": bad[:3]})


def _suite_equivalence(field: Field, groups, rng: random.Random, trials: int, ledger: list) -> None:
    half = field.coerce(Fraction(1, 2))
    for gdesc in groups:
        A = MatsuoAlgebra(space_of(parse_group(gdesc)), half, field)
        b1 = derivation_basis(A, system="leibniz")
        b2 = derivation_basis(A, system="r")
        ok = len(b1) == len(b2) and spans_agree(A, b1, b2)
        detail = {"leibniz": len(b1), "r": len(b2)}
        for _ in range(trials):
            cols = [
                {b: field.coerce(rng.randrange(-3, 4)) for b in rng.sample(range(A.dim), 3)}
                for _ in range(A.dim)
            ]
            d = LinearEndo(A.dim, [{b: v for b, v in c.items() if not field.is_zero(v)} for c in cols])
            if satisfies_r_system(A, d) != is_derivation(A, d):
                ok = False
                detail["random_map_disagreement"] = True
                break
        ledger.append({"check": f"equivalence {gdesc}", "passed": ok, "detail": detail})


def _suite_model(field: Field, types, ledger: list) -> None:
    half = field.coerce(Fraction(1, 2))
    for t in types:
        try:
            rs = parse_root_system(t)
            B = autos.ModelB(rs, field)
            M = MatsuoAlgebra(space_of(parse_group(f"3W:{t}")), half, field)
            autos.model_b_iso(B, M)
            ledger.append({"check": f"model {t}", "passed": True, "detail": {"dim": B.dim}})
        except autos.VerificationFailure as e:
            ledger.append({"check": f"model {t}", "passed": False, "detail": str(e)})


def _suite_torus(field: Field, types, rng: random.Random, trials: int, ledger: list) -> None:
    for t in types:
        rs = parse_root_system(t)
        B = autos.ModelB(rs, field)
        ok, detail = True, {}
        try:
            for _ in range(trials):
                p1 = [_random_param(field, rng) for _ in range(rs.rank)]
                p2 = [_random_param(field, rng) for _ in range(rs.rank)]
                r1 = autos.torus_automorphism(B, p1)
                r2 = autos.torus_automorphism(B, p2)
                r12 = autos.torus_automorphism(
                    B, [autos.so2_mul(field, a, b) for a, b in zip(p1, p2)]
                )
                comp = r1.compose(B, r2)
                if any(B.sub(a, b) for a, b in zip(comp.cols, r12.cols)):
                    ok = False
                    detail["composition"] = "homomorphism property failed"
                    break
            if ok:
                detail["trials"] = trials
                detail["fixed_space_dim"] = _generic_fixed_dim(B, rng)
        except autos.AutosError as e:
            ok, detail = False, {"error": str(e)}
        ledger.append({"check": f"torus {t}", "passed": ok, "detail": detail})


def _random_param(field: Field, rng: random.Random):
    while True:
        t = Fraction(rng.randrange(-20, 21), rng.randrange(1, 12))
        try:
            return autos.pythagorean_param(field, t)
        except autos.CircleRelationViolated:
            continue


def _generic_fixed_dim(B: autos.ModelB, rng: random.Random) -> int:
    rho = autos.torus_automorphism(
        B, [_nontrivial_param(B.field, rng) for _ in range(B.rs.rank)], verify=False
    )
    return sum(
        1
        for i in range(B.dim)
        if not B.sub(rho.cols[i], B.basis_element(i))
    )


def _nontrivial_param(field: Field, rng: random.Random):
    while True:
        p = _random_param(field, rng)
        if not field.is_zero(p[1]):
            return p


def _suite_section(field: Field, types, ledger: list) -> None:
    half = field.coerce(Fraction(1, 2))
    for t in types:
        rs = parse_root_system(t)
        M = MatsuoAlgebra(space_of(parse_group(f"3W:{t}")), half, field)
        ok, detail = True, {}
        try:
            for i, s in enumerate(rs.simple_roots()):
                autos.root_automorphism(M, autos.weyl_reflection_matrix(rs, s))
            detail["weyl_reflections"] = rs.rank
            flip = _diagram_flip(rs)
            if flip is not None:
                autos.root_automorphism(M, autos.diagram_automorphism_matrix(rs, flip))
                detail["diagram_flip"] = True
            if sqrt_in_field(field, -1) is not None and sqrt_in_field(field, 3) is not None:
                B = autos.ModelB(rs, field)
                rep = autos.character_report(
                    B, [autos.pythagorean_param(field, Fraction(k + 1, 7)) for k in range(rs.rank)]
                )
                detail["character_additivity"] = rep["additive"]
                detail["pair_products_proportional"] = rep["pair_products_proportional"]
                ok = ok and rep["additive"] and rep["pair_products_proportional"]
        except (autos.AutosError, FieldError) as e:
            ok, detail = False, {"error": str(e)}
        ledger.append({"check": f"section {t}", "passed": ok, "detail": detail})


def _diagram_flip(rs) -> list | None:
    if rs.type_name == "A" and rs.rank >= 2:
        return list(range(rs.rank - 1, -1, -1))
    if rs.type_name == "D":
        perm = list(range(rs.rank))
        perm[-1], perm[-2] = perm[-2], perm[-1]
        return perm
    return None


def cmd_verify(args) -> tuple[dict, list[dict]]:
    try:
        field = parse_field(args.field)
    except BadDescriptor as e:
        raise UsageError(str(e))
    rng = random.Random(args.seed)
    groups = [args.group] if args.group else list(CATALOG)
    types = [args.type] if args.type else ["A2", "A3"]
    if args.suite in ("all", "model", "torus", "section") and sqrt_in_field(field, 3) is None:
        raise UsageError(f"suite {args.suite!r} needs a field containing sqrt(3)")
    if field.characteristic == 3:
        raise UsageError("verification suites need char k != 3")
    ledger: list[dict] = []
    suites = {
        "fusion": lambda: _suite_fusion(field, groups, ledger),
        "equivalence": lambda: _suite_equivalence(field, groups, rng, args.trials, ledger),
        "model": lambda: _suite_model(field, types, ledger),
        "torus": lambda: _suite_torus(field, types, rng, args.trials, ledger),
        "section": lambda: _suite_section(field, types, ledger),
    }
    if args.suite == "all":
        for run in suites.values():
            run()
    elif args.suite in suites:
        suites[args.suite]()
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    passed = all(item["passed"] for item in ledger)
    results = {"checks": ledger, "failed": sum(1 for i in ledger if not i["passed"])}
    table = [
        {"check": i["check"], "passed": i["passed"]} for i in ledger
    ]
    return _report(args, "verify", results, passed), table


# -- plumbing ------------------------------------------------------------------


def _emit(args, report: dict, table: list[dict]) -> None:
    if args.csv:
        buf = io.StringIO()
        if table:
            fields = list(dict.fromkeys(k for row in table for k in row))
            writer = csv.DictWriter(buf, fieldnames=fields)
            writer.writeheader()
            for row in table:
                writer.writerow(row)
        text = buf.getvalue()
    elif args.json:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        lines = [f"{report['command']}: {'pass' if report['passed'] else 'FAIL'}"]
        for k, v in report["results"].items():
            if k not in ("checks", "basis", "algebra"):
                lines.append(f"  {k}: {v}")
        for item in report["results"].get("checks", []):
            lines.append(f"  [{'pass' if item['passed'] else 'FAIL'}] {item['check']}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser, group: bool = True) -> None:
    if group:
        p.add_argument("group", help="group descriptor, e.g. S5, W:D4, 3W:A3, M3:3")
    p.add_argument("--field", default="Q", help="field descriptor (Q, F7, Q(sqrt:3))")
    p.add_argument("--eta", default="1/2", help="fusion parameter as a rational")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--csv", action="store_true", help="emit the tabular payload as CSV")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.add_argument("--timing", action="store_true", help="include wall-clock duration")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matsuo", description="Exact computations in Matsuo algebras"
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("build", help="construct an algebra and summarize its geometry")
    _add_common(p)
    p.add_argument("--products", action="store_true", help="include the product table")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("derive", help="derivation dimension and vanishing report")
    _add_common(p)
    p.add_argument("--system", choices=("leibniz", "r", "both"), default="both")
    p.set_defaults(func=cmd_derive)

    for name in ("classify-lines", "classify"):
        p = sub.add_parser(name, help="near-solid line classification")
        _add_common(p)
        p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "suite", choices=("all", "fusion", "equivalence", "model", "torus", "section")
    )
    p.add_argument("--group", default=None, help="restrict to one group descriptor")
    p.add_argument("--type", default=None, help="root system type for model/torus/section")
    p.add_argument("--trials", type=int, default=25, help="randomized trials per check")
    _add_common(p, group=False)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    args._t0 = time.time()
    try:
        _positive_threads()
        report, table = args.func(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    _emit(args, report, table)
    return EXIT_OK if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
