"""Spectra of power-residue graphs via additive character sums, the closed-form
Lovasz theta for vertex- and edge-transitive graphs, and the divisibility /
eigenvalue filter for clique-number-equals-chromatic-number candidates.

A residue graph on GF(q) is a Cayley graph of the additive group, so its
nonprincipal eigenvalues are the m period sums eta_j = sum over the j-th
residue coset of cos(2*pi*Tr(s)/p), each with multiplicity (q-1)/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateMError, NotUndirectedError, TooLargeError
from .gf import FieldTables, build_field, divisors, prime_power
from .paley import Graph

EIGEN_CAP = 200
INTEGER_EIGENVALUE_TOL = 1e-6
PRODUCT_TOL = 1e-9


def _validate_residue_params(q: int, m: int) -> None:
    if m < 2:
        raise DegenerateMError(f"m={m} < 2")
    if (q - 1) % (2 * m):
        raise NotUndirectedError(f"2m={2 * m} does not divide q-1={q - 1}")


def gauss_periods(field: FieldTables, m: int) -> tuple[float, ...]:
    """The m period sums eta_j, j = 0..m-1.

    eta_j is the character sum over the coset gamma^j * {m-th powers}; the
    sums are real because every coset is negation-closed.  Terms with equal
    trace residue are aggregated first and the final sum is compensated
    (math.fsum), so accuracy is limited only by the cosine table.
    """
    q, p = field.q, field.p
    _validate_residue_params(q, m)
    cos_t = [math.cos(2.0 * math.pi * t / p) for t in range(p)]
    counts = [[0] * p for _ in range(m)]
    tr = field.trace
    ex = field.exp
    for k in range(q - 1):
        counts[k % m][tr[ex[k]]] += 1
    return tuple(
        math.fsum(cnt[t] * cos_t[t] for t in range(p) if cnt[t]) for cnt in counts
    )


@dataclass(frozen=True)
class SpectralReport:
    """Eigenvalue summary of one residue graph: degree (= largest eigenvalue),
    the m periods (each of multiplicity (q-1)/m), and the theta pair."""

    q: int
    m: int
    degree: int
    periods: tuple[float, ...]
    lambda_min: float
    theta: float
    theta_complement: float
    tolerance: float

    def eigenvalue_multiset(self) -> list[float]:
        mult = (self.q - 1) // self.m
        values = [float(self.degree)]
        for eta in self.periods:
            values.extend([eta] * mult)
        return sorted(values, reverse=True)

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "degree": self.degree,
            "periods": list(self.periods),
            "lambda_min": self.lambda_min,
            "theta": self.theta,
            "theta_complement": self.theta_complement,
            "tolerance": self.tolerance,
        }


def theta_pair(field: FieldTables, m: int) -> SpectralReport:
    """Closed-form Lovasz theta of the residue graph and of its complement.

    For a regular edge-transitive graph theta = -n*lambda_min/(lambda_1 -
    lambda_min) with lambda_1 = degree; vertex-transitivity then gives
    theta(complement) = n / theta.
    """
    q = field.q
    _validate_residue_params(q, m)
    periods = gauss_periods(field, m)
    degree = (q - 1) // m
    lam_min = min(periods)
    theta = -q * lam_min / (degree - lam_min)
    return SpectralReport(
        q=q,
        m=m,
        degree=degree,
        periods=periods,
        lambda_min=lam_min,
        theta=theta,
        theta_complement=q / theta,
        tolerance=PRODUCT_TOL,
    )


def eigen_oracle(g: Graph) -> list[float]:
    """Dense symmetric eigensolver on the adjacency matrix, descending order.
    Validation oracle only; capped at 200 vertices."""
    import numpy as np

    n = g.n_vertices
    if n > EIGEN_CAP:
        raise TooLargeError(f"{n} vertices exceeds the eigensolver cap {EIGEN_CAP}")
    mat = np.zeros((n, n))
    for u in range(n):
        row = g.adjacency[u]
        v = 0
        while row:
            if row & 1:
                mat[u, v] = 1.0
            row >>= 1
            v += 1
    vals = np.linalg.eigvalsh(mat)
    return [float(x) for x in vals[::-1]]


def feasible_clique_sizes(
    q: int,
    m: int,
    field: FieldTables | None = None,
    tolerance: float = INTEGER_EIGENVALUE_TOL,
) -> frozenset[int]:
    """All k = p^t (t | n, t < n) that survive the necessary conditions for the
    residue graph to have clique number = chromatic number = k:
    (k-1) must divide the degree and the least eigenvalue must equal
    -degree/(k-1).  An empty result proves the two invariants differ."""
    p, n = prime_power(q)
    _validate_residue_params(q, m)
    if n == 1:
        return frozenset()
    if field is None:
        field = build_field(p, n)
    degree = (q - 1) // m
    lam_min = min(gauss_periods(field, m))
    out = set()
    for t in divisors(n):
        if t >= n:
            continue
        k = p**t
        if degree % (k - 1):
            continue
        if abs(lam_min + degree / (k - 1)) < tolerance:
            out.add(k)
    return frozenset(out)
