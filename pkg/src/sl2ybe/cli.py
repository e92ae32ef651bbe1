"""Command-line surface: exact checks with deterministic, machine-readable
reports.

All spins are given in "p/2" or integer notation and all sample points as
exact rationals "p/q"; floating-point input is rejected at the boundary.
JSON payloads are byte-stable for identical invocations (wall time is
shown only in the human-readable summary).  SL2YBE_THREADS > 1 runs the
independent suite criteria in a thread pool; the result order and the
payload stay identical either way.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .acceptance import run_all
from .amatrix import a_matrix, eta
from .classify import (constant_m_prime, constant_roots, degeneracy_scan,
                       permutation_rigidity, projector_obstruction_check)
from .exact import DomainError, HalfInt, format_rational, parse_rational
from .oracle import (IDENTITY_TOL, YBE_TOL, dense_operator_identities,
                     dense_ybe_residual, reduction_consistency)
from .sixj import SixJArgs, sixj
from .spectral import (PoleError, check_regularity_unitarity, family_from_json,
                       make_family)
from .ybe import (constant_check, default_grid, full_check, second_grid,
                  unitarity_samples)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SL2YBE_THREADS", "1")))
    except ValueError:
        return 1


def _emit(doc, args, human_lines=None):
    if getattr(args, "json", False):
        payload = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        print(payload)
        if getattr(args, "out", None):
            with open(args.out, "w") as fh:
                fh.write(payload + "\n")
    else:
        for line in human_lines if human_lines is not None else [json.dumps(doc, indent=2, sort_keys=True)]:
            print(line)
        if getattr(args, "out", None):
            with open(args.out, "w") as fh:
                fh.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def _parse_levels(text: str | None):
    if text is None:
        return None
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    return [int(text)]


def _load_family(args):
    if getattr(args, "family_file", None):
        with open(args.family_file) as fh:
            return family_from_json(json.load(fh))
    tag = args.family
    s = HalfInt.parse(args.s) if getattr(args, "s", None) else None
    return make_family(tag, s, getattr(args, "m", None))


def _dense_grid(fam):
    """Product grid exceeding the catalog degree bound (<= 12 per variable)."""
    if fam.multiplicative:
        points = [Fraction(v) for v in range(2, 15)]
    else:
        points = [Fraction(p, q) for p, q in
                  ((1, 7), (1, 5), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3),
                   (1, 1), (4, 3), (3, 2), (2, 1), (7, 3), (3, 1))]
    return [(a, b) for a in points for b in points]


def cmd_sixj(args):
    value = sixj(SixJArgs.coerce(*args.labels))
    doc = {"check": "sixj", "args": args.labels, "value": str(value)}
    _emit(doc, args, [str(value)])
    return EXIT_PASS


def cmd_amat(args):
    a = a_matrix(HalfInt.parse(args.s), args.n)
    rng = a.range
    doc = {
        "check": "recoupling-matrix", "s": str(rng.s), "n": rng.n,
        "k_min": rng.k_min, "k_max": rng.k_max,
    }
    if args.gauge:
        doc["weights"] = [format_rational(w) for w in a.weights]
        doc["core"] = [[format_rational(x) for x in row] for row in a.core]
        lines = [f"A(s={rng.s}, n={rng.n}) in gauge form, indices {rng.k_min}..{rng.k_max}",
                 "u = [" + ", ".join(doc["weights"]) + "]"]
        lines += ["M: " + "  ".join(row) for row in doc["core"]]
    else:
        entries = [[str(a.entry(k, kp)) for kp in rng.indices()] for k in rng.indices()]
        doc["entries"] = entries
        lines = [f"A(s={rng.s}, n={rng.n}), indices {rng.k_min}..{rng.k_max}"]
        lines += ["  ".join(row) for row in entries]
    _emit(doc, args, lines)
    return EXIT_PASS


def cmd_eta(args):
    value = eta(HalfInt.parse(args.s), args.m, args.n)
    doc = {"check": "diagonal-constant", "s": args.s, "m": args.m, "n": args.n,
           "value": format_rational(value)}
    _emit(doc, args, [format_rational(value)])
    return EXIT_PASS


def cmd_family(args):
    fam = _load_family(args)
    doc = {
        "check": "family-show", "tag": fam.tag, "s": str(fam.s),
        "m": fam.m, "constant": fam.constant,
        "multiplicative": fam.multiplicative,
        "discriminant": fam.discriminant,
        "defined_coefficients": fam.defined(),
    }
    samples = ([Fraction(2), Fraction(3)] if fam.multiplicative
               else [Fraction(0), Fraction(1, 2), Fraction(1)])
    values = {}
    for x in samples:
        try:
            values[str(x)] = {str(j): str(fam.eval_coeff(j, x)) for j in fam.defined()}
        except PoleError:
            values[str(x)] = "pole"
    doc["values"] = values
    lines = [f"{fam.tag}: s={fam.s}, m={fam.m}, field=Q"
             + (f"(sqrt({fam.discriminant}))" if fam.discriminant != 1 else ""),
             f"defined coefficients: r_j for j in {fam.defined()}",
             ("multiplicative samples t" if fam.multiplicative else "additive samples lambda")]
    for x, vals in values.items():
        lines.append(f"  at {x}: " + (vals if isinstance(vals, str) else
                                      ", ".join(f"r_{j}={v}" for j, v in vals.items())))
    _emit(doc, args, lines)
    return EXIT_PASS


def cmd_verify(args):
    fam = _load_family(args)
    levels = _parse_levels(args.levels)
    if args.grid == "dense":
        samples, grid_note = _dense_grid(fam), "dense 13x13 product grid"
    else:
        samples = list(default_grid(fam)) + list(second_grid(fam))
        grid_note = "two disjoint 6-point grids"
    start = time.monotonic()
    if fam.constant:
        report = constant_check(fam, levels=levels)
    else:
        report = full_check(fam, levels=levels, samples=samples)
        unit = unitarity_samples(fam)
        report["regularity_samples"] = [str(x) for x in unit]
        report["regularity"] = check_regularity_unitarity(fam, unit)["pass"]
    elapsed = time.monotonic() - start
    report.update({"check": "reduced-braid", "grid": grid_note,
                   "version": __version__, "command": args.command_echo})
    status = "PASS" if report["pass"] else "FAIL"
    lines = [f"{status} {fam.tag} s={fam.s}: levels "
             f"{[lvl['n'] for lvl in report['levels']]} on {grid_note}",
             f"elapsed {elapsed:.2f}s"]
    _emit(report, args, lines)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def cmd_scan(args):
    scan = degeneracy_scan(args.max_2s)
    records = []
    for rec in scan.records:
        records.append({
            "check": "degeneracy-cell", "s": str(rec.s), "m": rec.m, "n": rec.n,
            "dim": rec.dim, "shifted": rec.shifted,
            "transpose_pair": rec.holds_transpose,
            "scalar_multiple": rec.holds_multiple,
            "beta": None if rec.beta is None else format_rational(rec.beta),
            "beta_tilde": None if rec.beta_tilde is None else format_rational(rec.beta_tilde),
            "rank": rec.rank,
            "index_condition_a": rec.cond_a, "index_condition_b": rec.cond_b,
        })
    if args.json:
        for rec in records:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        for cell in scan.skipped:
            print(json.dumps({"check": "degeneracy-cell", "skipped": cell},
                             sort_keys=True, separators=(",", ":")))
    else:
        degen = [(str(r.s), r.m, r.n) for r in scan.degeneracies]
        print(f"scanned {len(scan.records)} cells (2s <= {args.max_2s}), "
              f"skipped {len(scan.skipped)} out-of-range cells")
        print(f"degenerate cells: {degen}")
        print(f"unshifted degenerate cells: "
              f"{[(str(r.s), r.m, r.n) for r in scan.unshifted_degeneracies()]}")
        nonzero = scan.beta_tilde_nonzero()
        print(f"cells with nonzero second decomposition coefficient: {len(nonzero)}")
    return EXIT_PASS


def cmd_classify_constant(args):
    s = HalfInt.parse(args.s)
    plus, minus = constant_roots(s, args.m)
    mprime = constant_m_prime(s, args.m)
    obstruction = projector_obstruction_check(s, args.m)
    doc = {"check": "constant-analysis", "s": str(s), "m": args.m,
           "roots": [str(plus), str(minus)], "discriminant": plus.d,
           "next_incompatible_level": mprime, "obstruction_holds": obstruction}
    lines = [f"quadratic roots at (s={s}, m={args.m}): {plus}  |  {minus}",
             f"field: Q(sqrt({plus.d}))",
             f"lowest incompatible continuation: m' = {mprime}",
             f"projector obstruction: {obstruction}"]
    _emit(doc, args, lines)
    return EXIT_PASS if obstruction else EXIT_FAIL


def cmd_rigidity(args):
    s = HalfInt.parse(args.s)
    rigid = permutation_rigidity(s, args.m)
    doc = {"check": "permutation-rigidity", "s": str(s), "m": args.m, "rigid": rigid}
    _emit(doc, args, [f"rigid: {rigid}"])
    return EXIT_PASS if rigid else EXIT_FAIL


def cmd_oracle(args):
    fam = _load_family(args)
    lam, mu = parse_rational(args.lam), parse_rational(args.mu)
    residual = dense_ybe_residual(fam, lam, mu)
    identities = dense_operator_identities(fam.s) if fam.s.twice <= 3 else None
    consistency = reduction_consistency(fam, [(lam, mu)])
    case = consistency["cases"][0]
    doc = {"check": "dense-oracle", "family": fam.tag, "s": str(fam.s),
           "lambda": str(lam), "mu": str(mu),
           "braid_residual": residual, "braid_tolerance": YBE_TOL,
           "identity_tolerance": IDENTITY_TOL,
           "dense_zero": case["dense_zero"], "exact_zero": case["exact_zero"],
           "consistent": case["consistent"]}
    lines = [f"dense braid residual: {residual:.3e} (tolerance {YBE_TOL:.0e})",
             f"exact reduced verdict: {'zero' if case['exact_zero'] else 'nonzero'}",
             f"dense/exact consistent: {case['consistent']}"]
    if identities is not None:
        doc["identities_max_residual"] = identities["max_residual"]
        doc["identities_pass"] = identities["pass"]
        lines.append(f"operator identities max residual: "
                     f"{identities['max_residual']:.3e}"
                     f" (tolerance {IDENTITY_TOL:.0e})")
    _emit(doc, args, lines)
    return EXIT_PASS if case["consistent"] else EXIT_FAIL


def cmd_suite(args):
    start = time.monotonic()
    workers = _thread_count()
    if workers > 1:
        from .acceptance import run_plan
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(job) for job in run_plan(args.max_2s)]
            results = [f.result() for f in futures]
    else:
        results = run_all(args.max_2s)
    elapsed = time.monotonic() - start
    overall = all(r.passed for r in results)
    doc = {"check": "acceptance-suite", "version": __version__,
           "command": args.command_echo, "max_2s": args.max_2s,
           "criteria": [{"number": r.number, "title": r.title, "pass": r.passed,
                         "details": r.details,
                         "documented_discrepancy": r.defect}
                        for r in results],
           "pass": overall}
    lines = []
    for r in results:
        lines.append(r.line())
        for d in r.details:
            lines.append(f"    {d}")
    lines.append(f"suite: {'PASS' if overall else 'FAIL'} "
                 f"({sum(r.passed for r in results)}/{len(results)} criteria)"
                 f" in {elapsed:.1f}s")
    _emit(doc, args, lines)
    return EXIT_PASS if overall else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2ybe",
        description="Exact verification of sl2-invariant R-matrices and the "
                    "reduced braid-form equation.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sixj", help="exact 6-j symbol {a b e; c d f}")
    p.add_argument("labels", nargs=6, metavar=("a", "b", "e", "c", "d", "f"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_sixj)

    p = sub.add_parser("amat", help="exact recoupling matrix at one level")
    p.add_argument("--s", required=True)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--gauge", action="store_true",
                   help="print weights and rational core instead of entries")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_amat)

    p = sub.add_parser("eta", help="diagonal constant (-1)^n A_mm at one level")
    p.add_argument("--s", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_eta)

    p = sub.add_parser("family", help="inspect a coefficient family")
    family_sub = p.add_subparsers(dest="family_command", required=True)
    q = family_sub.add_parser("show")
    q.add_argument("--tag", dest="family")
    q.add_argument("--s")
    q.add_argument("--m", type=int)
    q.add_argument("--file", dest="family_file")
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_family)

    p = sub.add_parser("verify", help="reduced-equation residuals for a family")
    p.add_argument("--family")
    p.add_argument("--family-file", dest="family_file")
    p.add_argument("--s")
    p.add_argument("--m", type=int)
    p.add_argument("--levels", help="single level or a..b range")
    p.add_argument("--grid", choices=("default", "dense"), default="default")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan-degeneracy", help="four-matrix degeneracy scan")
    p.add_argument("--max-2s", dest="max_2s", type=int, default=6)
    p.add_argument("--json", action="store_true",
                   help="emit one JSON record per scanned cell")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("classify-constant", help="constant R-matrix analysis")
    p.add_argument("--s", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify_constant)

    p = sub.add_parser("rigidity", help="permutation rigidity at one index")
    p.add_argument("--s", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_rigidity)

    p = sub.add_parser("oracle", help="dense cross-check at one sample pair")
    p.add_argument("--family", required=True)
    p.add_argument("--s")
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("suite", help="run the whole acceptance battery")
    p.add_argument("--max-2s", dest="max_2s", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(argv) if argv is not None else sys.argv[1:]
    args = parser.parse_args(argv)
    args.command_echo = " ".join(argv)
    try:
        return args.fn(args)
    except (DomainError, PoleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
