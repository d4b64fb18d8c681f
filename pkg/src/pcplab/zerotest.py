"""Zero-on-variety proof system.

To certify that a degree-d polynomial P vanishes on a variety V, the prover
publishes the certificate polynomial M(x, y) = Σ h_g(x)·y_g (plus its lines
table).  M has degree <= d, vanishes on the y=0 slice, and turns back into P
under the substitution y = φ(x), so a verifier can check "P|_V = 0" with seven
queries: a low-degree test on M, a corrected read of M at (α, 0) which must be
zero, and a corrected read at (α, φ(α)) which must match f(α).

The verifier never short-circuits: all seven queries are issued regardless of
which check fails, keeping the query count constant per invocation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ldt import ldt_check, local_correct, Verdict
from .oracles import honest_oracles, LinesOracle, PointOracle
from .poly import MultiPoly
from .variety import (
    GrobnerSet,
    NoCertificateError,
    certificate_poly,
    vanishes_on,
    vanishing_certificate,
)


@dataclass(frozen=True)
class ZeroProof:
    """Oracle pair for the certificate polynomial M over F_q^{m+k}."""

    point: PointOracle
    lines: LinesOracle


@dataclass(frozen=True)
class ZeroRandomness:
    """One verifier coin toss: a, b ∈ F_q^{m+k}, alpha ∈ F_q^m, t ∈ F_q^×."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    alpha: tuple[int, ...]
    t: int

    @classmethod
    def sample(cls, gset: GrobnerSet, rng) -> "ZeroRandomness":
        """Draw order is fixed (a, b, alpha, t); budget accounting relies on it."""
        field = gset.variety.field
        m = gset.variety.m
        s = m + gset.complexity
        a = tuple(rng.randrange(field.q) for _ in range(s))
        b = tuple(rng.randrange(field.q) for _ in range(s))
        alpha = tuple(rng.randrange(field.q) for _ in range(m))
        t = 1 + rng.randrange(field.q - 1)
        return cls(a, b, alpha, t)


def zero_prove(poly: MultiPoly, gset: GrobnerSet, degree: int) -> ZeroProof:
    """Honest proof that ``poly`` (degree <= ``degree``) vanishes on the variety.

    Builds the certificate, packages it as M, sanity-checks the structural
    identities symbolically, and exposes lazy honest oracles for M.
    """
    variety = gset.variety
    if poly.nvars != variety.m:
        raise ValueError("polynomial/variety dimension mismatch")
    if poly.degree() > degree:
        raise ValueError(f"degree {poly.degree()} exceeds the declared bound {degree}")
    if not vanishes_on(poly, variety):
        raise NoCertificateError("no certificate: polynomial does not vanish on the variety")

    cert = vanishing_certificate(poly, gset)
    mpoly = certificate_poly(cert, gset, cap=degree)

    # Structural identities. Every term of M carries exactly one y variable,
    # so M(x, 0) = 0 holds by construction; the substitution identity
    # M(x, φ(x)) = P is equivalent to the certificate residual, re-checked here.
    assert all(any(e[variety.m:]) for e in mpoly.poly.terms)
    recombined = MultiPoly.zero(poly.field, variety.m)
    for h, g in zip(mpoly.cofactors, gset.gens):
        recombined = recombined.add(h.mul(g))
    assert recombined == poly
    assert mpoly.poly.degree() <= degree

    point, lines = honest_oracles(mpoly.poly, degree)
    return ZeroProof(point, lines)


def zero_verify(gset: GrobnerSet, degree: int, f: PointOracle,
                proof: ZeroProof, r: ZeroRandomness) -> Verdict:
    """Seven-query check that the function behind ``f`` vanishes on the variety.

    1. low-degree test on (M, M') at (a, b, t)            — 2 queries
    2. corrected read of M at (alpha, 0), direction a      — 2 queries, must be 0
    3. corrected read of M at (alpha, φ(alpha)), dir. a    — 2 queries
    4. point read f[alpha]                                 — 1 query, must match 3
    """
    variety = gset.variety
    m = variety.m
    k = gset.complexity
    if len(r.alpha) != m or len(r.a) != m + k or len(r.b) != m + k:
        raise ValueError("randomness dimensions do not match the variety")
    if f.s != m:
        raise ValueError("f must be an oracle over the variety's ambient space")

    ldt_v = ldt_check(degree, proof.point, proof.lines, r.a, r.b, r.t)
    at_zero = local_correct(degree, proof.point, proof.lines,
                            r.alpha + (0,) * k, r.a, r.t)
    at_phi = local_correct(degree, proof.point, proof.lines,
                           r.alpha + gset.phi(r.alpha), r.a, r.t)
    f_value = f.query(r.alpha)

    ok = (
        ldt_v.accepted
        and at_zero.accepted and at_zero.value == 0
        and at_phi.accepted and at_phi.value == f_value
    )
    return Verdict(ok)


def randomness_space_size(gset: GrobnerSet) -> int:
    """Number of distinct ZeroRandomness tuples (exhaustive-mode size)."""
    q = gset.variety.field.q
    s = gset.variety.m + gset.complexity
    return q ** (2 * s) * q ** gset.variety.m * (q - 1)


def enumerate_randomness(gset: GrobnerSet):
    """All ZeroRandomness tuples in lexicographic order."""
    import itertools

    q = gset.variety.field.q
    m = gset.variety.m
    s = m + gset.complexity
    for a in itertools.product(range(q), repeat=s):
        for b in itertools.product(range(q), repeat=s):
            for alpha in itertools.product(range(q), repeat=m):
                for t in range(1, q):
                    yield ZeroRandomness(a, b, alpha, t)
