"""Dense multivariate and univariate polynomials over a prime field.

``MultiPoly`` keeps a map from exponent vectors to nonzero residues plus a
declared degree cap; ``UniPoly`` is a fixed-length coefficient vector (index =
power of t, trailing zeros retained) as handed out by lines tables.

The canonical monomial order used for matrix columns, coefficient vectors and
text output is graded lexicographic: monomials grouped by total degree, and
within a degree block ordered by descending exponent tuple.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .field import Field


def monomials_exact(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree exactly ``degree``, desc-lex order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= ``degree``, degree blocks ascending.

    Lower-degree blocks are a prefix of higher-degree enumerations, which is
    what lets evaluation matrices grow by appending columns.
    """
    out = []
    for k in range(degree + 1):
        out.extend(monomials_exact(nvars, k))
    return out


class DegreeCapError(ValueError):
    """A term exceeds the polynomial's declared degree cap."""


class MultiPoly:
    """Polynomial in F_q[x_1..x_m] with a declared degree cap."""

    __slots__ = ("field", "nvars", "cap", "terms", "_var_maxes")

    def __init__(self, field: Field, nvars: int, terms: dict[tuple[int, ...], int], cap: int):
        q = field.q
        clean: dict[tuple[int, ...], int] = {}
        for exps, c in terms.items():
            c %= q
            if not c:
                continue
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong arity (nvars={nvars})")
            if sum(exps) > cap:
                raise DegreeCapError(f"term {exps} exceeds degree cap {cap}")
            clean[tuple(exps)] = c
        self.field = field
        self.nvars = nvars
        self.cap = cap
        self.terms = clean
        self._var_maxes: tuple[int, ...] | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int, cap: int = 0) -> "MultiPoly":
        return cls(field, nvars, {}, cap)

    @classmethod
    def constant(cls, field: Field, nvars: int, value: int, cap: int = 0) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: value}, cap)

    @classmethod
    def variable(cls, field: Field, nvars: int, index: int, cap: int = 1) -> "MultiPoly":
        e = [0] * nvars
        e[index] = 1
        return cls(field, nvars, {tuple(e): 1}, cap)

    @classmethod
    def from_vector(cls, field: Field, nvars: int, degree: int, coeffs: Sequence[int]) -> "MultiPoly":
        """Inverse of ``to_vector``: coefficients in graded-lex order up to ``degree``."""
        monos = monomials_upto(nvars, degree)
        if len(coeffs) != len(monos):
            raise ValueError(f"expected {len(monos)} coefficients, got {len(coeffs)}")
        return cls(field, nvars, dict(zip(monos, coeffs)), degree)

    def to_vector(self, degree: int | None = None) -> list[int]:
        d = self.cap if degree is None else degree
        if self.degree() > d:
            raise DegreeCapError(f"degree {self.degree()} does not fit vector bound {d}")
        monos = monomials_upto(self.nvars, d)
        return [self.terms.get(e, 0) for e in monos]

    # -- structure ----------------------------------------------------------

    def degree(self) -> int:
        """Actual total degree (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def with_cap(self, cap: int) -> "MultiPoly":
        return MultiPoly(self.field, self.nvars, self.terms, cap)

    def shift_vars(self, nvars: int, offset: int) -> "MultiPoly":
        """Embed into a larger variable space, old x_i becoming x_{i+offset}."""
        if offset < 0 or offset + self.nvars > nvars:
            raise ValueError("shift out of range")
        pre = (0,) * offset
        post = (0,) * (nvars - offset - self.nvars)
        return MultiPoly(
            self.field, nvars, {pre + e + post: c for e, c in self.terms.items()}, self.cap
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and other.field == self.field
            and other.nvars == self.nvars
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.text()!r}, nvars={self.nvars}, cap={self.cap})"

    # -- arithmetic ---------------------------------------------------------

    def _binop_check(self, other: "MultiPoly") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("mixed polynomial rings")

    def add(self, other: "MultiPoly") -> "MultiPoly":
        self._binop_check(other)
        q = self.field.q
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = (terms.get(e, 0) + c) % q
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return MultiPoly(self.field, self.nvars, terms, max(self.cap, other.cap))

    def sub(self, other: "MultiPoly") -> "MultiPoly":
        return self.add(other.scale(-1))

    def scale(self, c: int) -> "MultiPoly":
        q = self.field.q
        c %= q
        return MultiPoly(self.field, self.nvars, {e: (v * c) % q for e, v in self.terms.items()}, self.cap)

    def add_constant(self, c: int) -> "MultiPoly":
        return self.add(MultiPoly.constant(self.field, self.nvars, c))

    def mul(self, other: "MultiPoly") -> "MultiPoly":
        self._binop_check(other)
        q = self.field.q
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = acc.get(e, 0) + c1 * c2
                acc[e] = v
        cap = self.cap + other.cap
        return MultiPoly(self.field, self.nvars, {e: v % q for e, v in acc.items()}, cap)

    # -- evaluation and restriction ----------------------------------------

    def _maxes(self) -> tuple[int, ...]:
        m = self._var_maxes
        if m is None:
            acc = [0] * self.nvars
            for e in self.terms:
                for i, x in enumerate(e):
                    if x > acc[i]:
                        acc[i] = x
            m = self._var_maxes = tuple(acc)
        return m

    def eval(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise ValueError(f"point arity {len(point)} != {self.nvars}")
        if not self.terms:
            return 0
        q = self.field.q
        pows: list[list[int]] = []
        for i, mx in enumerate(self._maxes()):
            lst = [1] * (mx + 1)
            x = point[i] % q
            cur = 1
            for e in range(1, mx + 1):
                cur = cur * x % q
                lst[e] = cur
            pows.append(lst)
        total = 0
        for exps, coeff in self.terms.items():
            v = coeff
            for i, e in enumerate(exps):
                if e:
                    v = v * pows[i][e] % q
            total += v
        return total % q

    def restrict(self, a: Sequence[int], b: Sequence[int]) -> "UniPoly":
        """Formal composition P(a + t b), expanded in t.

        Purely symbolic — each coordinate of the line is the linear polynomial
        a_i + b_i t and powers are expanded by convolution — so the result is
        exact even when the cap is >= q.  Returns exactly cap+1 coefficients.
        """
        if len(a) != self.nvars or len(b) != self.nvars:
            raise ValueError("line arity mismatch")
        q = self.field.q
        acc = [0] * (self.cap + 1)
        if not self.terms:
            return UniPoly(self.field, acc)
        pow_cache: list[list[list[int]] | None] = [None] * self.nvars
        for exps, coeff in self.terms.items():
            prod = [coeff]
            for i, e in enumerate(exps):
                if not e:
                    continue
                cache_i = pow_cache[i]
                if cache_i is None:
                    cache_i = pow_cache[i] = [[1]]
                while len(cache_i) <= e:
                    prev = cache_i[-1]
                    ai = a[i] % q
                    bi = b[i] % q
                    nxt = [0] * (len(prev) + 1)
                    for j, v in enumerate(prev):
                        if v:
                            nxt[j] = (nxt[j] + v * ai) % q
                            nxt[j + 1] = (nxt[j + 1] + v * bi) % q
                    cache_i.append(nxt)
                pw = cache_i[e]
                out = [0] * (len(prod) + e)
                for j, u in enumerate(prod):
                    if u:
                        for l, w in enumerate(pw):
                            if w:
                                out[j + l] += u * w
                prod = [x % q for x in out]
            for j, v in enumerate(prod):
                if v:
                    acc[j] += v
        return UniPoly(self.field, [x % q for x in acc])

    # -- text form ----------------------------------------------------------

    def text(self) -> str:
        """Canonical form: graded-lex terms like ``3*x1^2 + x1*x2 + 4``."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)


class UniPoly:
    """Univariate polynomial as a fixed-length coefficient vector.

    ``coeffs[j]`` is the coefficient of t^j; the length is the declared
    bound + 1 and trailing zeros are kept, because lines-table entries have a
    fixed width regardless of the actual degree.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[int]):
        q = field.q
        self.field = field
        self.coeffs = [c % q for c in coeffs]

    def bound(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, t: int) -> int:
        q = self.field.q
        t %= q
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % q
        return acc

    def at_zero(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def resized(self, bound: int) -> "UniPoly":
        if bound + 1 < len(self.coeffs) and any(self.coeffs[bound + 1:]):
            raise DegreeCapError("cannot truncate nonzero coefficients")
        out = self.coeffs[: bound + 1] + [0] * (bound + 1 - len(self.coeffs))
        return UniPoly(self.field, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"UniPoly({self.coeffs})"


@dataclass(frozen=True)
class Line:
    """ℓ_{a,b}(t) = a + t b in F_q^s."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("base and slope have different dimensions")

    def at(self, t: int, field: Field) -> tuple[int, ...]:
        q = field.q
        return tuple((x + t * y) % q for x, y in zip(self.a, self.b))


def line_restrict(poly: MultiPoly, line: Line) -> UniPoly:
    """Lines-table entry for ``poly`` along ``line`` (symbolic composition)."""
    return poly.restrict(line.a, line.b)


def interpolate(field: Field, points: Iterable[tuple[int, int]], degree: int) -> UniPoly:
    """Lagrange interpolation through ``points``, degree bound ``degree``.

    Needs degree+1 distinct abscissae and degree < q.  If more points are
    supplied, the extras must lie on the interpolant.
    """
    pts = [(x % field.q, y % field.q) for x, y in points]
    if degree >= field.q:
        raise ValueError(f"degree {degree} needs {degree + 1} distinct abscissae but q={field.q}")
    seen = set()
    for x, _ in pts:
        if x in seen:
            raise ValueError(f"duplicate abscissa {x}")
        seen.add(x)
    if len(pts) < degree + 1:
        raise ValueError(f"need at least {degree + 1} points, got {len(pts)}")
    q = field.q
    nodes = pts[: degree + 1]
    acc = [0] * (degree + 1)
    for i, (xi, yi) in enumerate(nodes):
        if yi == 0:
            continue
        # basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        num = [1]
        denom = 1
        for j, (xj, _) in enumerate(nodes):
            if j == i:
                continue
            nxt = [0] * (len(num) + 1)
            for k, v in enumerate(num):
                nxt[k] = (nxt[k] - v * xj) % q
                nxt[k + 1] = v
            num = nxt
            denom = denom * (xi - xj) % q
        scale = yi * field.inv(denom) % q
        for k, v in enumerate(num):
            acc[k] = (acc[k] + v * scale) % q
    result = UniPoly(field, acc)
    for x, y in pts[degree + 1:]:
        if result.eval(x) != y:
            raise ValueError("points do not lie on a single degree-bounded polynomial")
    return result


def random_poly(
    field: Field,
    nvars: int,
    degree: int,
    rng: random.Random,
    require_top: bool = False,
) -> MultiPoly:
    """Coefficient-uniform polynomial of degree <= ``degree``.

    With ``require_top``, redraw until some degree-``degree`` coefficient is
    nonzero (so the actual degree equals the bound).
    """
    monos = monomials_upto(nvars, degree)
    top = [e for e in monos if sum(e) == degree]
    while True:
        terms = {e: field.sample(rng) for e in monos}
        if not require_top or any(terms[e] for e in top):
            return MultiPoly(field, nvars, terms, degree)


def distance(f, g, mode: str = "exact", samples: int | None = None,
             seed: int | None = None, max_points: int = 10 ** 6) -> Fraction:
    """Disagreement fraction Pr_x[f(x) != g(x)] between two point oracles.

    ``exact`` enumerates the whole domain (bounded by ``max_points``);
    ``sampled`` draws ``samples`` uniform points with the given seed.  Both
    return the observed fraction as an exact rational.
    """
    if f.s != g.s or f.field != g.field:
        raise ValueError("oracles live on different domains")
    q = f.field.q
    s = f.s
    if mode == "exact":
        total = q ** s
        if total > max_points:
            raise ValueError(
                f"exact distance over {total} points exceeds budget {max_points}; use sampled mode"
            )
        bad = 0
        for x in itertools.product(range(q), repeat=s):
            if f.query(x) != g.query(x):
                bad += 1
        return Fraction(bad, total)
    if mode == "sampled":
        if not samples or samples < 1:
            raise ValueError("sampled mode needs a positive sample count")
        rng = random.Random(seed)
        bad = 0
        for _ in range(samples):
            x = tuple(rng.randrange(q) for _ in range(s))
            if f.query(x) != g.query(x):
                bad += 1
        return Fraction(bad, samples)
    raise ValueError(f"unknown distance mode {mode!r}")
