"""Exhaustive census of dominant polynomials in a height box.

For degree n and height H the boxes are

* monic:   X^n + a1 X^(n-1) + ... + an,          |a_i| <= H   ((2H+1)^n vectors)
* general: a0 X^n + ... + an, a0 != 0,           |a_i| <= H   (2H (2H+1)^n vectors)

and the census reports D (dominant count) and, for the general box, the
number of dominant polynomials that are irreducible over Q.

Symmetry reduction uses two verdict-preserving maps: f -> -f, and
f -> (-1)^n f(-X), which flips the sign of every odd-index coefficient
a1, a3, ... and keeps a0.  Only a0 >= 1 is enumerated (the count is doubled
for -f), and within that half every orbit {f, s(f)} is visited once:

* vectors whose first nonzero odd-index coefficient is positive count twice;
* vectors with every odd-index coefficient zero are the fixed points of s,
  enumerated in their own pass with weight one.

Work is split into blocks keyed by (a0, a1).  Each block yields its counts
and a SHA-256 digest of its verdict stream; the run digest hashes the block
digests in block order, so it does not depend on how blocks are chunked.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .dominance import decide
from .factor import irreducible_over_q

log = logging.getLogger(__name__)

MONIC = "monic"
GENERAL = "general"
BOTH = "both"
FAMILIES = (MONIC, GENERAL, BOTH)

DEFAULT_CAP = 2_000_000


class CensusCapExceeded(RuntimeError):
    """The estimated number of decisions exceeds the configured cap."""


@dataclass(frozen=True)
class CensusSpec:
    degree: int
    height: int
    family: str = BOTH
    symmetry_reduction: bool = True
    chunk_count: int = 1
    workers: Optional[int] = None  # default: min(chunk_count, cpu count)

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be >= 2")
        if self.height < 1:
            raise ValueError("height must be >= 1")
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.chunk_count < 1:
            raise ValueError("chunk_count must be positive")

    @property
    def needs_general(self) -> bool:
        return self.family in (GENERAL, BOTH)

    @property
    def needs_monic(self) -> bool:
        return self.family in (MONIC, BOTH)

    def leading_range(self) -> list[int]:
        h = self.height
        if not self.needs_general:
            return [1]
        if self.symmetry_reduction:
            return list(range(1, h + 1))
        return [a for a in range(-h, h + 1) if a != 0]

    def blocks(self) -> list[tuple[int, int]]:
        h = self.height
        a1s = range(0, h + 1) if self.symmetry_reduction else range(-h, h + 1)
        return [(a0, a1) for a0 in self.leading_range() for a1 in a1s]

    def estimated_decisions(self) -> int:
        box = len(self.leading_range()) * (2 * self.height + 1) ** self.degree
        return box // 2 + 1 if self.symmetry_reduction else box


@dataclass(frozen=True)
class BlockResult:
    a0: int
    a1: int
    dominant: int  # weighted count inside the enumerated half (or full box)
    dominant_irreducible: int
    visited: int
    digest: str

    def to_json(self, spec: CensusSpec) -> str:
        return json.dumps(
            {
                "n": spec.degree,
                "H": spec.height,
                "reduced": spec.symmetry_reduction,
                "counts_irreducible": spec.needs_general,
                "a0": self.a0,
                "a1": self.a1,
                "dominant": self.dominant,
                "dominant_irreducible": self.dominant_irreducible,
                "visited": self.visited,
                "digest": self.digest,
            },
            sort_keys=True,
        )


@dataclass
class CensusReport:
    n: int
    H: int
    D_n: Optional[int]
    D_n_star: Optional[int]
    D_irred_star: Optional[int]
    M_n: Optional[Fraction]
    P_n: Optional[Fraction]
    Q_n: Optional[Fraction]
    wall_time: float
    digest: str
    block_digests: dict = field(default_factory=dict)
    visited: int = 0

    def rendered(self) -> dict:
        return {k: None if v is None else round_half_up(v) for k, v in
                (("M_n", self.M_n), ("P_n", self.P_n), ("Q_n", self.Q_n))}

    def as_dict(self) -> dict:
        def frac(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "n": self.n,
            "H": self.H,
            "D_n": self.D_n,
            "D_n_star": self.D_n_star,
            "D_irred_star": self.D_irred_star,
            "M_n": frac(self.M_n),
            "P_n": frac(self.P_n),
            "Q_n": frac(self.Q_n),
            "rendered": self.rendered(),
            "wall_time": round(self.wall_time, 3),
            "visited": self.visited,
            "digest": self.digest,
        }


def round_half_up(x: Fraction, places: int = 4) -> str:
    """Decimal rendering rounded half-up (on the magnitude), exact throughout."""
    scale = 10**places
    neg = x < 0
    q = (abs(x) * scale * 2 + 1) // 2
    whole, frac = divmod(int(q), scale)
    return f"{'-' if neg and q else ''}{whole}.{frac:0{places}d}"


# ---------------------------------------------------------------------------
# block enumeration
# ---------------------------------------------------------------------------

def _tails(n: int, h: int, a1: int, reduced: bool) -> Iterator[tuple[tuple[int, ...], int]]:
    """(a2..an, weight) for one (a0, a1) block."""
    rng = range(-h, h + 1)
    if not reduced or a1 > 0:
        for t in product(rng, repeat=n - 1):
            yield t, (2 if reduced else 1)
        return
    # a1 == 0: orbit representatives have their first nonzero odd-index entry positive
    odd = [i for i in range(2, n + 1) if i % 2 == 1]  # coefficient indices a3, a5, ...
    for t in product(rng, repeat=n - 1):
        lead_odd = 0
        for i in odd:
            v = t[i - 2]
            if v:
                lead_odd = v
                break
        if lead_odd > 0:
            yield t, 2
    # fixed points of the sign flip: every odd-index coefficient zero
    even_slots = [i for i in range(2, n + 1) if i % 2 == 0]
    for vals in product(rng, repeat=len(even_slots)):
        t = [0] * (n - 1)
        for i, v in zip(even_slots, vals):
            t[i - 2] = v
        yield tuple(t), 1


def run_block(n: int, h: int, a0: int, a1: int, reduced: bool, with_irreducible: bool) -> BlockResult:
    sha = hashlib.sha256()
    dom = dom_irr = visited = 0
    for tail, w in _tails(n, h, a1, reduced):
        cs = (a0, a1) + tail
        v = decide(cs, witness=False)
        visited += 1
        code = 0
        if v.dominant:
            dom += w
            if with_irreducible and cs[-1] != 0:
                irr = v.irreducible if v.irreducible is not None else irreducible_over_q(cs)
                if irr:
                    dom_irr += w
                    code = 2
                else:
                    code = 1
            else:
                code = 1
        sha.update(bytes((code, w)))
    return BlockResult(a0, a1, dom, dom_irr, visited, sha.hexdigest())


def _run_chunk(args) -> list[BlockResult]:
    n, h, blocks, reduced, with_irr = args
    return [run_block(n, h, a0, a1, reduced, with_irr) for a0, a1 in blocks]


def _split(items: list, k: int) -> list[list]:
    k = max(1, min(k, len(items)))
    size, extra = divmod(len(items), k)
    out, i = [], 0
    for j in range(k):
        step = size + (1 if j < extra else 0)
        out.append(items[i : i + step])
        i += step
    return out


# ---------------------------------------------------------------------------
# checkpointing
# ---------------------------------------------------------------------------

def load_checkpoint(path: Path, spec: CensusSpec) -> dict[tuple[int, int], BlockResult]:
    done = {}
    if not path.exists():
        return done
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                # a torn final line from an interrupted run
                log.warning("skipping unreadable checkpoint line %d", lineno)
                continue
            if (rec["n"], rec["H"], rec["reduced"]) != (
                spec.degree,
                spec.height,
                spec.symmetry_reduction,
            ):
                continue
            if spec.needs_general and not rec.get("counts_irreducible", False):
                # a monic-only run left the irreducible count at zero
                continue
            done[(rec["a0"], rec["a1"])] = BlockResult(
                rec["a0"], rec["a1"], rec["dominant"], rec["dominant_irreducible"],
                rec["visited"], rec["digest"],
            )
    return done


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def run_census(
    spec: CensusSpec,
    checkpoint: Optional[Path] = None,
    cap: Optional[int] = DEFAULT_CAP,
    force: bool = False,
) -> CensusReport:
    est = spec.estimated_decisions()
    if cap is not None and est > cap and not force:
        raise CensusCapExceeded(f"about {est:,} decisions exceed the cap of {cap:,}; override with --force")
    t0 = time.perf_counter()
    n, h = spec.degree, spec.height
    blocks = spec.blocks()
    done: dict[tuple[int, int], BlockResult] = {}
    if checkpoint is not None:
        checkpoint = Path(checkpoint)
        done = load_checkpoint(checkpoint, spec)
        if done:
            log.info("resuming: %d of %d blocks already done", len(done), len(blocks))
    todo = [b for b in blocks if b not in done]
    with_irr = spec.needs_general
    chunks = _split(todo, spec.chunk_count) if todo else []
    workers = spec.workers or min(spec.chunk_count, os.cpu_count() or 1)
    sink = _open_sink(checkpoint) if checkpoint is not None else None
    try:
        jobs = [(n, h, c, spec.symmetry_reduction, with_irr) for c in chunks]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = pool.map(_run_chunk, jobs)
                for res in results:
                    _record(res, done, sink, spec)
        else:
            # block by block, so an interrupted serial run keeps what it finished
            for block in todo:
                _record(_run_chunk((n, h, [block], spec.symmetry_reduction, with_irr)), done, sink, spec)
    finally:
        if sink is not None:
            sink.close()
    return _aggregate(spec, [done[b] for b in blocks], time.perf_counter() - t0)


def _open_sink(path: Path):
    # a torn last line from an interrupted run must not swallow the next record
    needs_newline = False
    if path.exists() and path.stat().st_size:
        with path.open("rb") as fh:
            fh.seek(-1, os.SEEK_END)
            needs_newline = fh.read(1) != b"\n"
    sink = path.open("a")
    if needs_newline:
        sink.write("\n")
    return sink


def _record(res: Iterable[BlockResult], done: dict, sink, spec: CensusSpec) -> None:
    for br in res:
        done[(br.a0, br.a1)] = br
        if sink is not None:
            sink.write(br.to_json(spec) + "\n")
            sink.flush()


def _aggregate(spec: CensusSpec, results: list[BlockResult], wall: float) -> CensusReport:
    n, h = spec.degree, spec.height
    sign_weight = 2 if spec.symmetry_reduction else 1
    monic = [r for r in results if r.a0 == 1]
    general_den = 2 * h * (2 * h + 1) ** n
    monic_den = (2 * h + 1) ** n
    d_n = sum(r.dominant for r in monic) if spec.needs_monic else None
    d_star = d_irr = None
    if spec.needs_general:
        d_star = sign_weight * sum(r.dominant for r in results)
        d_irr = sign_weight * sum(r.dominant_irreducible for r in results)
    run = hashlib.sha256()
    digests = {}
    for r in results:
        run.update(bytes.fromhex(r.digest))
        digests[f"{r.a0},{r.a1}"] = r.digest
    return CensusReport(
        n=n,
        H=h,
        D_n=d_n,
        D_n_star=d_star,
        D_irred_star=d_irr,
        M_n=None if d_n is None else Fraction(d_n, monic_den),
        P_n=None if d_star is None else Fraction(d_star, general_den),
        Q_n=None if d_irr is None else Fraction(d_irr, general_den),
        wall_time=wall,
        digest=run.hexdigest(),
        block_digests=digests,
        visited=sum(r.visited for r in results),
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

_COLUMNS = ("quantity", "n", "H", "D", "denominator", "proportion_exact", "proportion_4dp")


def _rows(reports: Iterable[CensusReport]) -> list[tuple]:
    rows = []
    for rep in reports:
        mono = (2 * rep.H + 1) ** rep.n
        gen = 2 * rep.H * mono
        for name, count, den in (
            ("M", rep.D_n, mono),
            ("P", rep.D_n_star, gen),
            ("Q", rep.D_irred_star, gen),
        ):
            if count is None:
                continue
            x = Fraction(count, den)
            rows.append((name, rep.n, rep.H, count, den, f"{x.numerator}/{x.denominator}",
                         round_half_up(x)))
    return rows


def render_table(reports: Iterable[CensusReport], fmt: str = "text") -> str:
    rows = _rows(reports)
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_COLUMNS)
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError("fmt must be 'text' or 'csv'")
    cells = [_COLUMNS] + [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(_COLUMNS))]
    lines = ["  ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"
