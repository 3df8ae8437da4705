"""Difference graphs on GF(q): power-residue connection sets, orbital
families, union graphs, complements, and multiplier permutations.

Vertices are always the element codes 0..q-1; no relabeling happens
anywhere, so multiplication maps act literally on indices.  Adjacency is
stored as one bitmask per vertex, which makes complementation and the
clique solver word-parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadDivisorError,
    BadInputError,
    DegenerateMError,
    EmptySubsetError,
    NotUndirectedError,
)
from .gf import FieldTables, subgroup_coset


@dataclass(frozen=True)
class PaleyParams:
    """Normalized residue parameters: r = (q-1)/m, and the adjusted pair
    (r_bar, m_bar) with r_bar even, r_bar * m_bar = q - 1."""

    q: int
    m: int
    r: int
    r_bar: int
    m_bar: int
    graph_valid: bool  # 2m | q-1, i.e. the m-th power residues are symmetric


def normalize_params(q: int, m: int) -> PaleyParams:
    if m < 1 or (q - 1) % m:
        raise BadDivisorError(f"m={m} does not divide q-1={q - 1}")
    r = (q - 1) // m
    if r % 2 == 0:
        r_bar, m_bar = r, m
    else:
        if m % 2:  # q-1 = r*m odd: impossible for odd q
            raise BadInputError(f"q={q} must be odd")
        r_bar, m_bar = 2 * r, m // 2
    return PaleyParams(q, m, r, r_bar, m_bar, graph_valid=(r % 2 == 0))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n_vertices-1 with bitmask rows."""

    n_vertices: int
    adjacency: tuple[int, ...]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adjacency[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.adjacency[v])

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n_vertices):
            row = self.adjacency[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    yield (u, v)
                row >>= 1
                v += 1

    def is_regular(self) -> bool:
        degs = {row.bit_count() for row in self.adjacency}
        return len(degs) == 1


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def validate_graph(g: Graph) -> None:
    """Raise BadInputError unless adjacency is symmetric and irreflexive."""
    n = g.n_vertices
    if len(g.adjacency) != n:
        raise BadInputError("adjacency length differs from n_vertices")
    for v, row in enumerate(g.adjacency):
        if row >> n:
            raise BadInputError(f"row {v} has bits beyond the vertex range")
        if (row >> v) & 1:
            raise BadInputError(f"vertex {v} is self-adjacent")
    for u in range(n):
        for v in iter_bits(g.adjacency[u]):
            if not (g.adjacency[v] >> u) & 1:
                raise BadInputError(f"edge ({u},{v}) is not symmetric")


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise BadInputError(f"bad edge ({u},{v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complement(g: Graph) -> Graph:
    n = g.n_vertices
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adjacency)))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of g under the vertex map v -> perm[v]."""
    n = g.n_vertices
    rows = [0] * n
    for v in range(n):
        r = 0
        for u in iter_bits(g.adjacency[v]):
            r |= 1 << perm[u]
        rows[perm[v]] = r
    return Graph(n, tuple(rows))


def _difference_graph(field: FieldTables, diffs: frozenset[int]) -> Graph:
    """Graph with u ~ v iff u - v lies in diffs (assumed symmetric, 0-free)."""
    q = field.q
    if field.n == 1:
        row0 = 0
        for s in diffs:
            row0 |= 1 << s
        mask = (1 << q) - 1
        rows = [((row0 << u) | (row0 >> (q - u))) & mask if u else row0 for u in range(q)]
    else:
        add = field.add
        rows = [0] * q
        for u in range(q):
            r = 0
            for s in diffs:
                r |= 1 << add(u, s)
            rows[u] = r
    return Graph(q, tuple(rows))


def build_paley(field: FieldTables, m: int) -> Graph:
    """Generalized Paley graph: u ~ v iff u - v is a nonzero m-th power.

    Needs 2m | q-1 so that -1 is an m-th power (else the relation is not
    symmetric) and m >= 2 (m = 1 would be the complete graph).
    """
    q = field.q
    if m < 2:
        raise DegenerateMError(f"m={m} < 2 gives the complete graph; not a Paley graph")
    if (q - 1) % (2 * m):
        raise NotUndirectedError(f"2m={2 * m} does not divide q-1={q - 1}; difference set not symmetric")
    return _difference_graph(field, subgroup_coset(field, m, 0))


@dataclass(frozen=True)
class OrbitalFamily:
    """The m_bar difference cosets gamma^i * {m_bar-th powers}; coset i is the
    edge-difference set of the i-th undirected orbital graph."""

    field: FieldTables
    params: PaleyParams
    difference_cosets: tuple[frozenset[int], ...]

    @property
    def m_bar(self) -> int:
        return self.params.m_bar


def orbital_family(field: FieldTables, m: int) -> OrbitalFamily:
    params = normalize_params(field.q, m)
    mb = params.m_bar
    cosets = tuple(subgroup_coset(field, mb, j) for j in range(mb))
    neg = field.neg
    for coset in cosets:  # r_bar even makes every coset negation-closed
        for s in coset:
            if neg(s) not in coset:
                raise BadInputError("difference coset is not negation-closed")
            break
    return OrbitalFamily(field, params, cosets)


def union_graph(family: OrbitalFamily, subset: Iterable[int]) -> Graph:
    indices = sorted(set(subset))
    if not indices:
        raise EmptySubsetError("orbital subset must be nonempty")
    if indices[0] < 0 or indices[-1] >= family.m_bar:
        raise BadInputError(f"orbital indices {indices} out of range [0, {family.m_bar})")
    diffs: set[int] = set()
    for i in indices:
        diffs |= family.difference_cosets[i]
    return _difference_graph(family.field, frozenset(diffs))


def multiplier_map(field: FieldTables, i: int) -> tuple[int, ...]:
    """Vertex permutation v -> v * gamma**i (fixes 0)."""
    if i < 0:
        raise BadInputError(f"i={i} must be nonnegative")
    g = field.exp[i % (field.q - 1)]
    mul = field.mul
    return tuple(mul(v, g) for v in range(field.q))
