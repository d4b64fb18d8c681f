"""PCP for graph 3-coloring over a variety-indexed vertex set.

Vertices are identified with the points of a variety V ⊆ F_q^m through the
fixed lexicographic point enumeration (graphs smaller than |V| are padded
with isolated points colored 0).  A coloring with colors {-1, 0, 1} (residues
{q-1, 0, 1}) is lifted to its low-degree extension χ̂, and two derived
polynomials carry the claim:

* validity  A(x)  = χ̂(x)(χ̂(x)-1)(χ̂(x)+1)        — vanishes on V iff every
  vertex got a legal color;
* conflict  B(x,y) = Ê(x,y)·Π_{c∈{±1,±2}}(χ̂(x)-χ̂(y)-c) — vanishes on V×V iff
  no edge joins two equal colors (Ê is the low-degree extension of the
  symmetric 0/1 edge indicator).

The honest proof is ten oracles: point+lines pairs for χ̂, A, B, and
zero-on-variety certificate pairs for A on V and for B on V×V.  The verifier
spends 24 queries: 4 direct reads, 3 low-degree tests (6), and two 7-query
zero tests, plus two local identity checks that cost no extra queries.  All
queries are issued unconditionally so the count is constant per invocation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .field import Field
from .ldt import ldt_check, Verdict
from .oracles import honest_oracles, LinesOracle, PointOracle
from .poly import MultiPoly
from .variety import GrobnerSet, product
from .zerotest import ZeroProof, ZeroRandomness, zero_prove, zero_verify


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, pairs: Sequence[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            edges.add((min(u, v), max(u, v)))
        return cls(n, frozenset(edges))

    @classmethod
    def from_file(cls, path: str | Path) -> "Graph":
        """Line 1: vertex count; then one ``u v`` pair per line (0-indexed).

        Duplicate edges are ignored; blank lines and ``#`` comments allowed.
        """
        lines = [
            ln.strip() for ln in Path(path).read_text().splitlines()
            if ln.strip() and not ln.strip().startswith("#")
        ]
        if not lines:
            raise ValueError(f"empty graph file {path}")
        n = int(lines[0])
        pairs = []
        for ln in lines[1:]:
            u, v = (int(x) for x in ln.split())
            pairs.append((u, v))
        return cls.from_edges(n, pairs)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (min(u, v), max(u, v)) in self.edges

    def conflicts(self, colors: Sequence[int], q: int) -> int:
        """Number of edges whose endpoints share a color (as residues)."""
        return sum(1 for u, v in self.edges if colors[u] % q == colors[v] % q)


def color_residues(field: Field) -> tuple[int, int, int]:
    """The three legal colors {-1, 0, 1} as canonical residues."""
    return (field.q - 1, 0, 1)


def validate_coloring(field: Field, graph: Graph, colors: Sequence[int]) -> list[int]:
    if len(colors) != graph.n:
        raise ValueError(f"coloring has {len(colors)} entries for {graph.n} vertices")
    legal = set(color_residues(field))
    out = [c % field.q for c in colors]
    bad = [c for c in out if c not in legal]
    if bad:
        raise ValueError(f"colors must lie in {{-1,0,1}} mod q; got residue {bad[0]}")
    return out


def proper_3_coloring(graph: Graph, field: Field) -> list[int] | None:
    """First proper coloring in lexicographic color order, or None.

    Plain backtracking; fine for the toy graphs this artifact handles.
    """
    palette = color_residues(field)
    colors: list[int | None] = [None] * graph.n
    adj: list[list[int]] = [[] for _ in range(graph.n)]
    for u, v in graph.edges:
        adj[u].append(v)
        adj[v].append(u)

    def place(v: int) -> bool:
        if v == graph.n:
            return True
        for c in palette:
            if all(colors[w] != c for w in adj[v]):
                colors[v] = c
                if place(v + 1):
                    return True
                colors[v] = None
        return False

    if place(0):
        return [c for c in colors if c is not None]
    return None


def best_effort_coloring(graph: Graph, field: Field) -> list[int]:
    """Coloring with the fewest conflicting edges (exhaustive for small n)."""
    palette = color_residues(field)
    if graph.n > 12:
        raise ValueError("exhaustive best-coloring search is capped at 12 vertices")
    best, best_bad = None, None
    for assignment in itertools.product(palette, repeat=graph.n):
        bad = graph.conflicts(assignment, field.q)
        if best_bad is None or bad < best_bad:
            best, best_bad = list(assignment), bad
            if bad == 0:
                break
    assert best is not None
    return best


class PcpInstance:
    """Shared prover/verifier context for one (variety, graph) pair.

    Holds the product variety V×V with its union generating set, and the edge
    extension Ê, all computed once.
    """

    __slots__ = ("gset", "graph", "d", "gset2", "kprime", "edge_poly")

    def __init__(self, gset: GrobnerSet, graph: Graph):
        variety = gset.variety
        if graph.n > len(variety.points):
            raise ValueError(
                f"graph has {graph.n} vertices but the variety only {len(variety.points)} points"
            )
        self.gset = gset
        self.graph = graph
        self.d = variety.degree_bound
        _, self.gset2 = product(variety, gset, variety, gset)
        self.kprime = self.gset2.complexity
        self.edge_poly = _edge_extension(self.gset2, variety, graph)

    @property
    def field(self) -> Field:
        return self.gset.variety.field

    @property
    def m(self) -> int:
        return self.gset.variety.m

    @property
    def k(self) -> int:
        return self.gset.complexity


def _edge_extension(gset2: GrobnerSet, variety, graph: Graph) -> MultiPoly:
    m = variety.m
    values = []
    for pp in gset2.variety.points:
        i = variety.index_of(pp[:m])
        j = variety.index_of(pp[m:])
        inside = i < graph.n and j < graph.n
        values.append(1 if inside and graph.has_edge(i, j) else 0)
    return gset2.variety.low_degree_extension(values)


def edge_extension(gset: GrobnerSet, graph: Graph) -> MultiPoly:
    """Low-degree extension over V×V of the symmetric 0/1 edge indicator."""
    variety = gset.variety
    _, gset2 = product(variety, gset, variety, gset)
    return _edge_extension(gset2, variety, graph)


CONFLICT_OFFSETS = (1, -1, 2, -2)


@dataclass(frozen=True)
class PcpProof:
    """The ten proof oracles (two of the pairs live inside ZeroProofs)."""

    color: PointOracle          # χ̂,  degree tag d
    color_lines: LinesOracle
    validity: PointOracle       # A,   degree tag 3d
    validity_lines: LinesOracle
    validity_cert: ZeroProof    # M_A pair, degree tag 3d
    conflict: PointOracle       # B,   degree tag 6d, over F_q^{2m}
    conflict_lines: LinesOracle
    conflict_cert: ZeroProof    # M_B pair, degree tag 6d


@dataclass(frozen=True)
class PcpRandomness:
    a: tuple[int, ...]       # F_q^m
    b: tuple[int, ...]       # F_q^m
    alpha: tuple[int, ...]   # F_q^{2m}
    beta: tuple[int, ...]    # F_q^{2m}
    gamma1: tuple[int, ...]  # F_q^{m+k}
    gamma2: tuple[int, ...]  # F_q^{m+k}
    mu1: tuple[int, ...]     # F_q^{2m+k'}
    mu2: tuple[int, ...]     # F_q^{2m+k'}
    t: int

    @classmethod
    def sample(cls, inst: PcpInstance, rng) -> "PcpRandomness":
        """Fixed draw order (a, b, alpha, beta, gamma1, gamma2, mu1, mu2, t)."""
        q = inst.field.q
        m = inst.m

        def point(s: int) -> tuple[int, ...]:
            return tuple(rng.randrange(q) for _ in range(s))

        return cls(
            a=point(m), b=point(m),
            alpha=point(2 * m), beta=point(2 * m),
            gamma1=point(m + inst.k), gamma2=point(m + inst.k),
            mu1=point(2 * m + inst.kprime), mu2=point(2 * m + inst.kprime),
            t=1 + rng.randrange(q - 1),
        )


def claim_polynomials(
    inst: PcpInstance, colors: Sequence[int]
) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """(χ̂, validity, conflict) for a coloring with legal residues.

    The coloring need not be proper; the conflict polynomial then simply fails
    to vanish on V×V, which is exactly what soundness experiments want.
    """
    variety = inst.gset.variety
    field = inst.field
    chi_values = validate_coloring(field, inst.graph, colors)
    chi_values += [0] * (len(variety.points) - inst.graph.n)

    chi = variety.low_degree_extension(chi_values)
    validity = chi.mul(chi.add_constant(-1)).mul(chi.add_constant(1))

    m2 = 2 * inst.m
    chi_x = chi.shift_vars(m2, 0)
    chi_y = chi.shift_vars(m2, inst.m)
    diff = chi_x.sub(chi_y)
    conflict = inst.edge_poly
    for c in CONFLICT_OFFSETS:
        conflict = conflict.mul(diff.add_constant(-c))
    return chi, validity, conflict


def pcp_prove(inst: PcpInstance, colors: Sequence[int]) -> PcpProof:
    """Honest proof for a coloring; improper colorings die in zero_prove.

    The conflict polynomial of an improper edge evaluates to
    Ê(u,v)·Π_{c∈{±1,±2}}(-c) = 4 ≠ 0, so the certificate solve for B reports
    "no certificate" — that error is the prover-side properness check.
    """
    chi, validity, conflict = claim_polynomials(inst, colors)
    d = inst.d
    validity_cert = zero_prove(validity, inst.gset, 3 * d)
    conflict_cert = zero_prove(conflict, inst.gset2, 6 * d)

    color_pt, color_ln = honest_oracles(chi, d)
    validity_pt, validity_ln = honest_oracles(validity, 3 * d)
    conflict_pt, conflict_ln = honest_oracles(conflict, 6 * d)
    return PcpProof(color_pt, color_ln, validity_pt, validity_ln, validity_cert,
                    conflict_pt, conflict_ln, conflict_cert)


def pcp_verify(inst: PcpInstance, proof: PcpProof, r: PcpRandomness) -> Verdict:
    """24 queries: 4 direct reads + 3 LDTs (6) + two zero tests (14)."""
    q = inst.field.q
    d = inst.d

    # direct reads (4)
    ca = proof.color.query(r.a)
    cb = proof.color.query(r.b)
    va = proof.validity.query(r.a)
    wab = proof.conflict.query(r.a + r.b)

    # low-degree tests (2 queries each)
    ldt_color = ldt_check(d, proof.color, proof.color_lines, r.a, r.b, r.t)
    ldt_validity = ldt_check(3 * d, proof.validity, proof.validity_lines, r.a, r.b, r.t)
    ldt_conflict = ldt_check(6 * d, proof.conflict, proof.conflict_lines,
                             r.alpha, r.beta, r.t)

    # local identity checks (no queries; Ê is the verifier's own polynomial)
    validity_ok = va == ca * (ca - 1) % q * (ca + 1) % q
    expected = inst.edge_poly.eval(r.a + r.b)
    for c in CONFLICT_OFFSETS:
        expected = expected * (ca - cb - c) % q
    conflict_ok = wab == expected

    # zero tests (7 queries each)
    z_validity = zero_verify(inst.gset, 3 * d, proof.validity, proof.validity_cert,
                             ZeroRandomness(r.gamma1, r.gamma2, r.a, r.t))
    z_conflict = zero_verify(inst.gset2, 6 * d, proof.conflict, proof.conflict_cert,
                             ZeroRandomness(r.mu1, r.mu2, r.alpha, r.t))

    ok = (
        ldt_color.accepted and ldt_validity.accepted and ldt_conflict.accepted
        and validity_ok and conflict_ok
        and z_validity.accepted and z_conflict.accepted
    )
    return Verdict(ok)


def pcp_verify_amplified(inst: PcpInstance, proof: PcpProof, reps: int, rng) -> Verdict:
    """Reject iff any of ``reps`` independent invocations rejects."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    ok = True
    for _ in range(reps):
        r = PcpRandomness.sample(inst, rng)
        if not pcp_verify(inst, proof, r).accepted:
            ok = False
    return Verdict(ok)


def implied_proof_size(inst: PcpInstance) -> dict[str, int]:
    """Length/alphabet accounting for the (never materialized) proof string."""
    import math

    q = inst.field.q
    m, k, kp, d = inst.m, inst.k, inst.kprime, inst.d
    entry_bits = math.ceil(math.log2(q))
    domains = {
        "color": q ** m,
        "color_lines": q ** (2 * m),
        "validity": q ** m,
        "validity_lines": q ** (2 * m),
        "validity_cert": q ** (m + k),
        "validity_cert_lines": q ** (2 * (m + k)),
        "conflict": q ** (2 * m),
        "conflict_lines": q ** (4 * m),
        "conflict_cert": q ** (2 * m + kp),
        "conflict_cert_lines": q ** (2 * (2 * m + kp)),
    }
    widths = {
        "color": 1, "validity": 1, "conflict": 1,
        "validity_cert": 1, "conflict_cert": 1,
        "color_lines": d + 1,
        "validity_lines": 3 * d + 1,
        "validity_cert_lines": 3 * d + 1,
        "conflict_lines": 6 * d + 1,
        "conflict_cert_lines": 6 * d + 1,
    }
    return {
        name: domains[name] * widths[name] * entry_bits for name in domains
    } | {"total_bits": sum(domains[n] * widths[n] * entry_bits for n in domains)}
