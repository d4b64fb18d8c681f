"""Query interfaces for point tables and lines tables.

Verifiers only ever see oracles: a point oracle maps F_q^s -> F_q and a lines
oracle maps a pair (a, b) to the d+1 coefficients of the restriction along
the line a + t b.  Honest implementations are polynomial-backed and lazy —
materializing a lines table over F_q^{2s} is hopeless even at desk scale —
while small domains can be materialized into real tables for exhaustive work.

Corruption wrappers flip a keyed pseudorandom δ-fraction of entries by adding
a nonzero offset, so the corrupted set is exactly the disagreement set and is
a pure function of (key, input), independent of query order.

Every oracle counts its queries (one increment per query, lock-protected);
the verifiers' per-invocation totals are checked against these counters.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import struct
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .field import Field
from .poly import MultiPoly, UniPoly


class OracleBudgetError(ValueError):
    """Domain too large for materialization; keep the oracle lazy."""


class _Counted:
    """Base class providing the thread-safe query counter."""

    def __init__(self):
        self._lock = threading.Lock()
        self._queries = 0

    @property
    def queries(self) -> int:
        return self._queries

    def _tick(self) -> None:
        with self._lock:
            self._queries += 1


class PointOracle(_Counted):
    """f: F_q^s -> F_q with query accounting."""

    def __init__(self, field: Field, s: int, degree: int):
        super().__init__()
        self.field = field
        self.s = s
        self.degree = degree

    def query(self, point: Sequence[int]) -> int:
        if len(point) != self.s:
            raise ValueError(f"point arity {len(point)} != {self.s}")
        self._tick()
        return self._answer(tuple(x % self.field.q for x in point))

    def _answer(self, point: tuple[int, ...]) -> int:
        raise NotImplementedError


class LinesOracle(_Counted):
    """(a, b) -> restriction coefficients, always degree+1 of them."""

    def __init__(self, field: Field, s: int, degree: int):
        super().__init__()
        self.field = field
        self.s = s
        self.degree = degree

    def query(self, a: Sequence[int], b: Sequence[int]) -> UniPoly:
        if len(a) != self.s or len(b) != self.s:
            raise ValueError(f"line arity ({len(a)},{len(b)}) != {self.s}")
        self._tick()
        q = self.field.q
        entry = self._answer(tuple(x % q for x in a), tuple(x % q for x in b))
        if len(entry.coeffs) != self.degree + 1:
            raise AssertionError("lines entry has wrong width")  # pragma: no cover
        return entry

    def _answer(self, a: tuple[int, ...], b: tuple[int, ...]) -> UniPoly:
        raise NotImplementedError


# -- honest (polynomial-backed) oracles --------------------------------------

class PolyPointOracle(PointOracle):
    def __init__(self, poly: MultiPoly, degree: int):
        super().__init__(poly.field, poly.nvars, degree)
        self.poly = poly

    def _answer(self, point):
        return self.poly.eval(point)


class PolyLinesOracle(LinesOracle):
    def __init__(self, poly: MultiPoly, degree: int):
        super().__init__(poly.field, poly.nvars, degree)
        self.poly = poly

    def _answer(self, a, b):
        return self.poly.restrict(a, b)


def honest_oracles(poly: MultiPoly, degree: int) -> tuple[PointOracle, LinesOracle]:
    """Lazy point + lines oracles for a polynomial of degree <= ``degree``."""
    if poly.degree() > degree:
        raise ValueError(f"polynomial degree {poly.degree()} exceeds declared bound {degree}")
    capped = poly if poly.cap == degree else poly.with_cap(degree)
    return PolyPointOracle(capped, degree), PolyLinesOracle(capped, degree)


# -- table-backed oracles ----------------------------------------------------

class TablePointOracle(PointOracle):
    def __init__(self, field: Field, s: int, degree: int, table: dict[tuple[int, ...], int]):
        super().__init__(field, s, degree)
        self.table = table

    def _answer(self, point):
        return self.table[point]


class TableLinesOracle(LinesOracle):
    def __init__(self, field: Field, s: int, degree: int,
                 table: dict[tuple[tuple[int, ...], tuple[int, ...]], UniPoly]):
        super().__init__(field, s, degree)
        self.table = table

    def _answer(self, a, b):
        return self.table[(a, b)]


def materialize(oracle: PointOracle | LinesOracle, budget: int = 10 ** 6):
    """Evaluate the oracle on its whole domain into a table-backed copy."""
    q = oracle.field.q
    s = oracle.s
    if isinstance(oracle, PointOracle):
        size = q ** s
        if size > budget:
            raise OracleBudgetError(
                f"point domain q^s = {size} exceeds budget {budget}; keep the oracle lazy"
            )
        table = {p: oracle._answer(p) for p in itertools.product(range(q), repeat=s)}
        return TablePointOracle(oracle.field, s, oracle.degree, table)
    size = q ** (2 * s)
    if size > budget:
        raise OracleBudgetError(
            f"lines domain q^2s = {size} exceeds budget {budget}; keep the oracle lazy"
        )
    table = {}
    for a in itertools.product(range(q), repeat=s):
        for b in itertools.product(range(q), repeat=s):
            table[(a, b)] = oracle._answer(a, b)
    return TableLinesOracle(oracle.field, s, oracle.degree, table)


# -- corruption --------------------------------------------------------------

@dataclass(frozen=True)
class CorruptionSpec:
    """Keyed δ-fraction corruption.

    ``mode`` records which half of an oracle pair a harness adversary touches;
    ``corrupt`` itself always corrupts the oracle it is handed.
    """

    delta: float
    key: int
    mode: str = "point"  # point | lines | both

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must be in [0, 1]")
        if self.mode not in ("point", "lines", "both"):
            raise ValueError(f"unknown corruption mode {self.mode!r}")


def _digest(key: int, payload: tuple[int, ...]) -> bytes:
    h = hashlib.blake2b(digest_size=16, key=key.to_bytes(8, "little", signed=False))
    h.update(struct.pack(f"<{len(payload)}I", *payload))
    return h.digest()


def _hit(digest: bytes, delta: float) -> bool:
    u = int.from_bytes(digest[:8], "little") / 2 ** 64
    return u < delta


class CorruptPointOracle(PointOracle):
    """Adds a keyed nonzero offset on a Bernoulli(δ) subset of points."""

    def __init__(self, base: PointOracle, spec: CorruptionSpec):
        super().__init__(base.field, base.s, base.degree)
        self.base = base
        self.spec = spec

    def _answer(self, point):
        value = self.base._answer(point)
        d = _digest(self.spec.key, point)
        if _hit(d, self.spec.delta):
            offset = 1 + int.from_bytes(d[8:16], "little") % (self.field.q - 1)
            value = (value + offset) % self.field.q
        return value


class CorruptLinesOracle(LinesOracle):
    """Adds a keyed nonzero offset to one coefficient on a Bernoulli(δ) subset."""

    def __init__(self, base: LinesOracle, spec: CorruptionSpec):
        super().__init__(base.field, base.s, base.degree)
        self.base = base
        self.spec = spec

    def _answer(self, a, b):
        entry = self.base._answer(a, b)
        d = _digest(self.spec.key, a + b)
        if _hit(d, self.spec.delta):
            raw = int.from_bytes(d[8:16], "little")
            idx = raw % (self.degree + 1)
            offset = 1 + (raw >> 32) % (self.field.q - 1)
            coeffs = list(entry.coeffs)
            coeffs[idx] = (coeffs[idx] + offset) % self.field.q
            entry = UniPoly(self.field, coeffs)
        return entry


def corrupt(base: PointOracle | LinesOracle, spec: CorruptionSpec):
    """Lazy keyed corruption wrapper of the same oracle kind."""
    if isinstance(base, PointOracle):
        return CorruptPointOracle(base, spec)
    return CorruptLinesOracle(base, spec)


def corrupt_exact(base: PointOracle, count: int, key: int,
                  budget: int = 10 ** 6) -> TablePointOracle:
    """Materialized corruption of exactly ``count`` points (keyed choice).

    Used when an experiment needs a known exact distance from the base.
    """
    table_oracle = materialize(base, budget)
    domain = sorted(table_oracle.table)
    if not 0 <= count <= len(domain):
        raise ValueError("corruption count out of range")
    rng = random.Random(key)
    chosen = rng.sample(range(len(domain)), count)
    q = base.field.q
    table = dict(table_oracle.table)
    for i in chosen:
        p = domain[i]
        offset = 1 + rng.randrange(q - 1)
        table[p] = (table[p] + offset) % q
    return TablePointOracle(base.field, base.s, base.degree, table)


# -- debug dumps -------------------------------------------------------------

_HEADER = struct.Struct("<HHH")  # (s, degree, q), 16-bit each


def dump_table(oracle: TablePointOracle | TableLinesOracle, path: str | Path) -> None:
    """Binary golden dump: header (s, d, q), then row-major 16-bit residues.

    Point tables store one residue per domain point; lines tables store the
    d+1 coefficients of each entry.  Domain enumeration is lexicographic.
    """
    q = oracle.field.q
    if q >= 1 << 16:
        raise ValueError("dump format is 16-bit per residue")
    s = oracle.s
    out = bytearray(_HEADER.pack(s, oracle.degree, q))
    if isinstance(oracle, TablePointOracle):
        for p in itertools.product(range(q), repeat=s):
            out += struct.pack("<H", oracle.table[p])
    else:
        for a in itertools.product(range(q), repeat=s):
            for b in itertools.product(range(q), repeat=s):
                entry = oracle.table[(a, b)]
                out += struct.pack(f"<{len(entry.coeffs)}H", *entry.coeffs)
    Path(path).write_bytes(bytes(out))


def load_point_table(path: str | Path) -> TablePointOracle:
    blob = Path(path).read_bytes()
    s, degree, q = _HEADER.unpack_from(blob)
    field = Field(q)
    values = struct.unpack_from(f"<{q ** s}H", blob, _HEADER.size)
    table = dict(zip(itertools.product(range(q), repeat=s), values))
    return TablePointOracle(field, s, degree, table)
