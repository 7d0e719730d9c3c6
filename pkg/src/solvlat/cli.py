"""Command-line entry point.

Exit codes: 0 for success or an affirmative verdict, 2 when a computation
completes but answers "no" (a failed Lefschetz test, a rejected cubic, a
failed certificate check, an inconclusive obstruction), 1 for usage or
input errors.  Scripts rely on the 0/2 distinction.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cohomology, lattice, liealg, obstruct
from .exact import Q


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; usage errors are 1
        self.print_usage(sys.stderr)
        raise SystemExit(_fail_usage(message))


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


# ---------------------------------------------------------------------------
# the builtin algebra registry
# ---------------------------------------------------------------------------

def _registry():
    """Name -> (factory, dim text, provenance line).  Parametric entries
    take arguments after a colon, e.g. g65:2 or abelian:4."""
    return (
        ("example2", lambda a: liealg.example2(), "dim 8",
         "completely solvable, free 2-step nilradical, weights (-1,-2,3)"),
        ("example3", lambda a: liealg.example3(), "dim 8",
         "completely solvable, nilradical n3+n3, weights diag(1,-2,-1,-1,2,1)"),
        ("modified-family", _make_modified, "dim 8",
         "one-parameter variant modified-family:l1,l2 (default -1,-2)"),
        ("g65", _make_g65, "dim 6",
         "rational form of n3+n3; g65:q with q >= 0 squarefree (0 = split)"),
        ("n3n3", lambda a: liealg.n3n3(), "dim 6",
         "split product of two Heisenberg algebras"),
        ("heisenberg3", lambda a: liealg.heisenberg3(), "dim 3",
         "the 3-dimensional Heisenberg algebra"),
        ("free2step", _make_free2step, "dim k(k+1)/2",
         "free 2-step nilpotent algebra free2step:k (default 3)"),
        ("kodaira-thurston", lambda a: liealg.kodaira_thurston(), "dim 4",
         "Heisenberg times a line; symplectic but not Lefschetz"),
        ("abelian", _make_abelian, "dim n",
         "abelian algebra abelian:n (default 4)"),
    )


def _make_modified(arg: str | None):
    if not arg:
        return liealg.modified_family(-1, -2)
    try:
        l1, l2 = (Fraction(x) for x in arg.split(","))
    except ValueError:
        raise ValueError("modified-family takes two rationals, e.g."
                         " modified-family:-1,-2")
    return liealg.modified_family(l1, l2)


def _make_g65(arg: str | None):
    return liealg.g65(int(arg) if arg else 2)


def _make_free2step(arg: str | None):
    return liealg.free2step(int(arg) if arg else 3)


def _make_abelian(arg: str | None):
    return liealg.abelian(int(arg) if arg else 4)


def resolve_algebra(target: str) -> liealg.LieAlgebra:
    """Builtin name (with optional :args) or a path to an algebra file."""
    name, _, arg = target.partition(":")
    for key, factory, _, _ in _registry():
        if key == name:
            return factory(arg or None)
    path = Path(target)
    if path.exists():
        return liealg.parse_algebra(path.read_text(encoding="utf-8"))
    raise ValueError(f"unknown algebra {target!r} (try 'solvlat list-examples'"
                     " or pass a file path)")


def _default_omega(L: liealg.LieAlgebra):
    if set(("A", "B", "X1", "Z1", "X2", "Z2", "X3", "Z3")) <= set(L.labels):
        return cohomology.standard_omega(L)
    raise ValueError("no default two-form for this algebra; pass --omega")


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------

def _emit(args, document: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        payload = json.dumps(document, indent=2)
    else:
        payload = "\n".join(text_lines)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    L = resolve_algebra(args.target)
    report = liealg.validate(L)
    if args.dump_algebra:
        Path(args.dump_algebra).write_text(liealg.to_text(L), encoding="utf-8")
    doc = {"algebra": args.target, "dim": L.dim, "valid": report.ok,
           "violation": None if report.ok else
           {"kind": report.kind, "basis": list(report.triple)}}
    lines = [f"{args.target}: dim {L.dim}",
             "valid: antisymmetry and Jacobi hold" if report.ok else
             f"INVALID: {report.kind} fails at {report.triple}"]
    _emit(args, doc, lines)
    return 0 if report.ok else 2


def cmd_betti(args) -> int:
    L = resolve_algebra(args.target)
    b = cohomology.betti(L)
    doc = {"algebra": args.target, "betti": list(b)}
    _emit(args, doc, [f"{args.target}: betti {list(b)}"])
    return 0


def cmd_cohomology(args) -> int:
    L = resolve_algebra(args.target)
    ring = cohomology.CohomologyRing(L)
    b = ring.betti()
    spot = cohomology.cup_welldefined_spot_check(L, seed=args.seed)
    doc = {"algebra": args.target, "betti": list(b),
           "poincare_duality": all(b[k] == b[L.dim - k] for k in range(L.dim + 1)),
           "euler_characteristic": sum((-1) ** k * x for k, x in enumerate(b)),
           "cup_spot_check_seed": args.seed,
           "cup_spot_check": spot}
    lines = [f"{args.target}: betti {list(b)}",
             f"poincare duality: {doc['poincare_duality']}",
             f"euler characteristic: {doc['euler_characteristic']}",
             f"cup product representative independence (seed {args.seed}): {spot}"]
    _emit(args, doc, lines)
    return 0


def cmd_symplectic(args) -> int:
    L = resolve_algebra(args.target)
    omega = (cohomology.TwoForm.parse(args.omega, L) if args.omega
             else _default_omega(L))
    res = cohomology.symplectic_check(L, omega)
    doc = {"algebra": args.target, "omega": str(omega),
           "closed": res.closed, "nondegenerate": res.nondegenerate,
           "symplectic": res.symplectic}
    lines = [f"omega = {omega}",
             f"closed: {res.closed}",
             f"nondegenerate: {res.nondegenerate}",
             f"symplectic: {res.symplectic}"]
    _emit(args, doc, lines)
    return 0 if res.symplectic else 2


def cmd_hard_lefschetz(args) -> int:
    L = resolve_algebra(args.target)
    omega = (cohomology.TwoForm.parse(args.omega, L) if args.omega
             else _default_omega(L))
    check = cohomology.symplectic_check(L, omega)
    if not check.closed:
        return _fail_usage("omega is not closed; its cohomology class is undefined")
    res = cohomology.hard_lefschetz(L, omega)
    doc = {"algebra": args.target, "omega": str(omega), "holds": res.holds,
           "failing_degree": res.failing_degree}
    lines = [f"omega = {omega}",
             f"hard lefschetz: {'holds' if res.holds else 'fails'}"
             + ("" if res.holds else f" at k = {res.failing_degree}")]
    _emit(args, doc, lines)
    return 0 if res.holds else 2


def cmd_obstruct(args) -> int:
    name = args.target.partition(":")[0]
    if name == "example2":
        report = obstruct.example2_obstruction()
    elif name == "example3":
        report = obstruct.example3_obstruction()
    else:
        return _fail_usage("obstruct supports the targets example2 and example3")
    doc = report.to_dict()
    lines = [f"{name}: {report.conclusion}"]
    for case in report.cases:
        lines.extend(_case_lines(case, 1))
    _emit(args, doc, lines)
    return 0 if report.conclusion == "obstructed" else 2


def _case_lines(case, depth):
    out = ["  " * depth + f"{case.name} -> {case.resolution}"]
    for child in case.children:
        out.extend(_case_lines(child, depth + 1))
    return out


def cmd_build_lattice(args) -> int:
    check = lattice.validate_cubic(args.p, args.q)
    if not check:
        doc = {"cubic": {"p": args.p, "q": args.q}, "ok": False,
               "reason": check.reason}
        _emit(args, doc, [f"rejected: {check.reason}"])
        return 2
    cert = lattice.build_lattice(args.p, args.q, width=Fraction(args.width))
    payload = cert.to_json()
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        print(f"certificate written to {args.out}")
    else:
        print(payload)
    return 0


def cmd_verify(args) -> int:
    path = Path(args.target)
    if not path.exists():
        return _fail_usage(f"no such file: {args.target}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        return _fail_usage(f"malformed JSON in {args.target}: {e}")
    if "cubic" in data:
        cert = lattice.LatticeCertificate.from_dict(data)
        res = lattice.verify_certificate(cert)
        doc = {"file": args.target, "kind": "lattice-certificate",
               "ok": res.ok, "failed_check": res.failed_check}
        lines = ["certificate ok: every check passes"] if res.ok else \
                [f"certificate FAILED at check: {res.failed_check}"]
        _emit(args, doc, lines)
        return 0 if res.ok else 2
    if "conclusion" in data:
        ok = obstruct.verify_report(data)
        doc = {"file": args.target, "kind": "obstruction-report", "ok": ok}
        _emit(args, doc, ["report verifies" if ok else "report FAILS verification"])
        return 0 if ok else 2
    return _fail_usage("unrecognized certificate format")


def cmd_list_examples(args) -> int:
    rows = [{"name": name, "dim": dim, "provenance": prov}
            for name, _, dim, prov in _registry()]
    lines = [f"{r['name']:<18} {r['dim']:<14} {r['provenance']}" for r in rows]
    _emit(args, {"examples": rows}, lines)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="solvlat",
                     description="exact certificates for lattices in"
                                 " solvable Lie groups")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, target=True):
        if target:
            p.add_argument("target", help="builtin algebra name or file path")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized spot checks")
        p.add_argument("--order", choices=("lex", "grevlex"), default="lex",
                       help="monomial order for basis computations"
                            " (the obstruction pipeline pins lex)")
        return p

    p = common(sub.add_parser("validate", help="check antisymmetry and Jacobi"))
    p.add_argument("--dump-algebra", help="also write the algebra file here")
    p.set_defaults(func=cmd_validate)

    common(sub.add_parser("betti", help="Betti numbers")).set_defaults(func=cmd_betti)
    common(sub.add_parser("cohomology", help="ring summary and spot checks")) \
        .set_defaults(func=cmd_cohomology)

    p = common(sub.add_parser("symplectic", help="closedness and nondegeneracy"))
    p.add_argument("--omega", help="two-form, e.g. \"A^B + X1^Z1 + X2^Z2 + X3^Z3\"")
    p.set_defaults(func=cmd_symplectic)

    p = common(sub.add_parser("hard-lefschetz", help="the Lefschetz isomorphisms"))
    p.add_argument("--omega", help="two-form on the dual basis")
    p.set_defaults(func=cmd_hard_lefschetz)

    common(sub.add_parser("obstruct", help="run a non-existence pipeline")) \
        .set_defaults(func=cmd_obstruct)

    p = common(sub.add_parser("build-lattice",
                              help="certificate for x^3 - p x^2 + q x - 1"),
               target=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--width", default="1/100000000",
                   help="rational width for root isolation")
    p.set_defaults(func=cmd_build_lattice)

    common(sub.add_parser("verify", help="re-check a certificate file")) \
        .set_defaults(func=cmd_verify)

    p = common(sub.add_parser("list-examples", help="builtin algebras"),
               target=False)
    p.set_defaults(func=cmd_list_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    try:
        return args.func(args)
    except (ValueError, liealg.AlgebraFileError) as e:
        return _fail_usage(str(e))


if __name__ == "__main__":
    sys.exit(main())
