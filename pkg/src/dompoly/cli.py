"""Command-line interface: ``dompoly test|stability|bounds|census|batch|random``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .bistritz import count_outside, t_sequence_scaled
from .bounds import bound_set, mahler_upper
from .census import FAMILIES, CensusCapExceeded, CensusSpec, DEFAULT_CAP, render_table, run_census
from .dominance import decide, is_dominant, is_dominant_irreducible, is_dominant_simple
from .factor import irreducible_over_q
from .poly import IntPolynomial, PolynomialParseError, parse_poly, strip_zero_roots

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_CAP = 3

ALGORITHMS = ("auto", "simple", "efficient", "irreducible")


class UsageError(RuntimeError):
    pass


def _emit(obj, out=None) -> None:
    (out or sys.stdout).write(json.dumps(obj, sort_keys=True) + "\n")


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def verdict_for(f: IntPolynomial, algorithm: str = "auto", filters: bool = True) -> dict:
    if algorithm == "auto":
        v = decide(f, filters=filters)
    elif algorithm == "simple":
        v = is_dominant_simple(f)
    elif algorithm == "efficient":
        v = is_dominant(f)
    elif algorithm == "irreducible":
        g, k = strip_zero_roots(f)
        if g.degree >= 2 and not irreducible_over_q(g.coeffs):
            raise UsageError("the irreducible algorithm needs an irreducible input")
        v = is_dominant_irreducible(f)
    else:
        raise UsageError(f"unknown algorithm {algorithm!r}")
    return v.as_dict()


def _oracle_record(f: IntPolynomial) -> dict:
    # imported lazily: the oracle pulls in sympy, numpy and mpmath
    from .oracle import numeric_roots, oracle_dominant

    cl = numeric_roots(f)
    return {
        "dominant": oracle_dominant(f),
        "precision_bits": cl.precision_bits,
        "roots": [
            {
                "re": str(r.value.real),
                "im": str(r.value.imag),
                "multiplicity": r.multiplicity,
                "radius": float(r.radius),
            }
            for r in cl.roots
        ],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_test(args) -> int:
    f = parse_poly(args.poly)
    t0 = time.perf_counter()
    rec = {"input": str(f), "polynomial": f.pretty()}
    rec.update(verdict_for(f, args.algorithm, not args.no_filters))
    rec["elapsed"] = round(time.perf_counter() - t0, 6)
    if args.oracle:
        rec["oracle"] = _oracle_record(f)
    _emit(rec)
    return EXIT_OK


def cmd_stability(args) -> int:
    f = parse_poly(args.poly)
    rep = count_outside(f)
    rec = {"input": str(f), **rep.as_dict()}
    if rep.kind != "one_point_fail":
        weight = rep.patches[0].weight if rep.patches else 1
        seq = t_sequence_scaled(f, weight)
        rec["t_values_at_one"] = seq.values_at_one
    _emit(rec)
    return EXIT_OK


def cmd_bounds(args) -> int:
    f = parse_poly(args.poly)
    g, k = strip_zero_roots(f)
    if g.degree < 2:
        raise UsageError("bounds need degree >= 2 after removing zero roots")
    rec = {"input": str(f), "zero_roots": k, "height": g.height, "degree": g.degree}
    rec.update(bound_set(g).as_dict())
    m = mahler_upper(g)
    rec["mahler_upper"] = {"sqrt_of": m.radicand * m.height**2, "ceiling": m.ceiling}
    _emit(rec)
    return EXIT_OK


def cmd_census(args) -> int:
    spec = CensusSpec(
        degree=args.degree,
        height=args.height,
        family=args.family,
        symmetry_reduction=not args.no_symmetry,
        chunk_count=args.chunks,
        workers=args.workers,
    )
    rep = run_census(spec, checkpoint=args.resume, cap=args.cap, force=args.force)
    if args.csv:
        Path(args.csv).write_text(render_table([rep], "csv"))
    sys.stdout.write(render_table([rep], "text"))
    if args.json:
        _emit(rep.as_dict())
    return EXIT_OK


def _batch_line(job) -> dict:
    lineno, text, algorithm, filters = job
    t0 = time.perf_counter()
    try:
        f = parse_poly(text)
        rec = {"line": lineno, "input": text}
        rec.update(verdict_for(f, algorithm, filters))
    except (PolynomialParseError, UsageError) as exc:
        return {"line": lineno, "input": text, "error": str(exc)}
    rec["elapsed"] = round(time.perf_counter() - t0, 6)
    return rec


def run_batch(path, algorithm: str = "auto", filters: bool = True, workers: int = 1, out=None):
    """Write one JSON record per non-blank input line, in input order."""
    lines = Path(path).read_text().splitlines()
    jobs = [
        (i, line.strip(), algorithm, filters)
        for i, line in enumerate(lines, 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_batch_line, jobs, chunksize=16))
    else:
        records = [_batch_line(j) for j in jobs]
    for rec in records:
        _emit(rec, out)
    return records


def cmd_batch(args) -> int:
    run_batch(args.file, args.algorithm, not args.no_filters, args.workers)
    return EXIT_OK


def random_polynomials(seed: int, count: int, min_degree: int, max_degree: int, height: int):
    """Seeded uniform draws from the general box, degree uniform in the range."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_degree, max_degree)
        a0 = 0
        while a0 == 0:
            a0 = rng.randint(-height, height)
        out.append(IntPolynomial([a0] + [rng.randint(-height, height) for _ in range(n)]))
    return out


def cmd_random(args) -> int:
    for f in random_polynomials(args.seed, args.count, args.min_degree, args.max_degree, args.height):
        sys.stdout.write(str(f) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dompoly",
        description="Decide whether integer polynomials are dominant, and count them.",
        epilog="Polynomials are comma-separated integer coefficients, highest power first: "
        "'1,0,-2' is X^2 - 2.  Exit codes: 0 ok, 1 other error, 2 parse error, 3 census cap refused.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def algo_flags(sp):
        sp.add_argument("--algorithm", choices=ALGORITHMS, default="auto",
                        help="auto dispatches on irreducibility (default)")
        sp.add_argument("--no-filters", action="store_true",
                        help="skip coefficient-pattern shortcuts (auto only)")

    sp = sub.add_parser("test", help="decide dominance of one polynomial")
    sp.add_argument("poly")
    algo_flags(sp)
    sp.add_argument("--oracle", action="store_true", help="add the numeric oracle's view (diagnostics)")
    sp.set_defaults(func=cmd_test)

    sp = sub.add_parser("stability", help="Bistritz report for roots outside the unit circle")
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("bounds", help="root-modulus and separation bounds")
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("census", help="count dominant polynomials in a height box")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--family", choices=FAMILIES, default="both")
    sp.add_argument("--chunks", type=int, default=1)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--resume", type=Path, default=None, help="JSONL checkpoint file (created if missing)")
    sp.add_argument("--csv", type=Path, default=None)
    sp.add_argument("--json", action="store_true", help="also print the full report as JSON")
    sp.add_argument("--no-symmetry", action="store_true", help="enumerate the full box")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--force", action="store_true", help="run even above the cap")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("batch", help="decide every polynomial in a file (JSON lines out)")
    sp.add_argument("file", type=Path)
    algo_flags(sp)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_batch)

    sp = sub.add_parser("random", help="print seeded random polynomials")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--min-degree", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=5)
    sp.add_argument("--height", type=int, default=100)
    sp.set_defaults(func=cmd_random)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PolynomialParseError as exc:
        print(f"dompoly: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CensusCapExceeded as exc:
        print(f"dompoly: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ValueError, OSError) as exc:
        print(f"dompoly: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
