import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from paleysync import build_field, build_paley, graph_from_edges, paley_certificate, prime_power


def field_for(q):
    p, n = prime_power(q)
    return build_field(p, n)


def valid_graph_ms(q):
    """All m >= 2 with 2m | q-1 (the residue graph exists and is undirected)."""
    return [m for m in range(2, q) if (q - 1) % (2 * m) == 0]


def residue_graph(q, m):
    return build_paley(field_for(q), m)


def random_graph(n, seed, p_edge=0.5):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p_edge]
    return graph_from_edges(n, edges)


@pytest.fixture(scope="session")
def square_field_sweep():
    """Exact certificates for every valid (q, m) with q in {9, 25, 49}.

    Shared by the quadratic-extension acceptance sweep, the eigenvalue
    necessity check, and several invariant property tests.
    """
    results = {}
    for q in (9, 25, 49):
        field = field_for(q)
        for m in valid_graph_ms(q):
            results[(q, m)] = paley_certificate(field, m)
    return results


def odd_prime_powers(limit):
    out = []
    for q in range(3, limit + 1, 2):
        try:
            p, _ = prime_power(q)
        except ValueError:
            continue
        if p != 2:
            out.append(q)
    return out


@pytest.fixture(scope="session")
def sweep_q81():
    """Budgeted invariants plus spectral report for every valid (q, m),
    q <= 81.  A few dense instances time out at this budget and are
    excluded wherever exactness is required (the checks say so)."""
    from paleysync import theta_pair

    results = {}
    for q in odd_prime_powers(81):
        field = field_for(q)
        for m in valid_graph_ms(q):
            cert = paley_certificate(field, m, budget=150_000)
            results[(q, m)] = (cert, theta_pair(field, m))
    return results
