"""Exact clique, independence, and chromatic numbers with verified witnesses.

The clique solver is a bitset branch-and-bound with greedy-coloring upper
bounds at every node (vertices pre-ordered by degeneracy).  The chromatic
solver tests k-colorability for k = lower, lower+1, ... with MRV branching,
canonical introduction of new colors, and clique-seeded pre-coloring.  Both
honor a node budget and report explicit timeout bounds instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .errors import (
    BadDivisorError,
    BadInputError,
    InvalidWitnessError,
    NotUndirectedError,
    TooLargeError,
)
from .gf import FieldTables, divisors, subfield_elements
from .paley import Graph, build_paley, complement, iter_bits
from .spectral import theta_pair

DEFAULT_BUDGET = 10**8
BRUTE_FORCE_CAP = 16


class _Exhausted(Exception):
    pass


class _Done(Exception):
    pass


class _Budget:
    __slots__ = ("remaining", "spent")

    def __init__(self, limit: int):
        self.remaining = limit
        self.spent = 0

    def step(self) -> None:
        self.remaining -= 1
        self.spent += 1
        if self.remaining < 0:
            raise _Exhausted


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one exact search: either exact (lower == upper) with a
    verified witness, or a timeout carrying sound bracketing bounds."""

    exact: bool
    lower: int
    upper: int
    witness: tuple[int, ...]
    nodes: int

    @property
    def value(self) -> int:
        if not self.exact:
            raise RuntimeError(f"search timed out with bounds [{self.lower}, {self.upper}]")
        return self.lower


def _degeneracy_order(adj: list[int], n: int) -> tuple[list[int], int]:
    """Min-degree elimination order (ties broken by smallest index)."""
    alive = (1 << n) - 1
    degs = [adj[v].bit_count() for v in range(n)]
    order = []
    degeneracy = 0
    for _ in range(n):
        best_v, best_d = -1, n + 1
        m = alive
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            if degs[v] < best_d:
                best_d = degs[v]
                best_v = v
        degeneracy = max(degeneracy, best_d)
        order.append(best_v)
        alive ^= 1 << best_v
        for u in iter_bits(adj[best_v] & alive):
            degs[u] -= 1
    return order, degeneracy


def _greedy_clique(adj: list[int], n: int, seeds: list[int]) -> list[int]:
    """Deterministic greedy clique used to seed the branch-and-bound."""
    best: list[int] = []
    for seed in seeds:
        clique = [seed]
        cand = adj[seed]
        while cand:
            pick, pick_key = -1, (-1, 0)
            m = cand
            while m:
                b = m & -m
                v = b.bit_length() - 1
                m ^= b
                key = ((adj[v] & cand).bit_count(), -v)
                if key > pick_key:
                    pick_key = key
                    pick = v
            clique.append(pick)
            cand &= adj[pick]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def _dsatur_coloring(adj: list[int], n: int) -> list[int]:
    """Greedy saturation-degree coloring; deterministic tie-breaking."""
    colors = [-1] * n
    sat = [0] * n
    degs = [adj[v].bit_count() for v in range(n)]
    for _ in range(n):
        best_v, best_key = -1, (-1, -1, 1)
        for v in range(n):
            if colors[v] < 0:
                key = (sat[v].bit_count(), degs[v], -v)
                if key > best_key:
                    best_key = key
                    best_v = v
        c = 0
        used = sat[best_v]
        while (used >> c) & 1:
            c += 1
        colors[best_v] = c
        for u in iter_bits(adj[best_v]):
            if colors[u] < 0:
                sat[u] |= 1 << c
    return colors


def _check_clique(adj: list[int], vertices) -> bool:
    vs = list(vertices)
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if not (adj[u] >> v) & 1:
                return False
    return True


def _check_independent(adj: list[int], vertices) -> bool:
    vs = list(vertices)
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if (adj[u] >> v) & 1:
                return False
    return True


class _CliqueState:
    __slots__ = ("adj", "best_len", "best", "stack", "budget", "cap")

    def __init__(self, adj, best, budget, cap):
        self.adj = adj
        self.best = list(best)
        self.best_len = len(best)
        self.stack: list[int] = []
        self.budget = budget
        self.cap = cap


def _clique_expand(state: _CliqueState, r_len: int, cand: int) -> None:
    state.budget.step()
    adj = state.adj
    # Greedy color partition of the candidate set; the class index bounds the
    # clique size attainable from each vertex.
    order: list[int] = []
    bound: list[int] = []
    q = cand
    c = 0
    while q:
        c += 1
        avail = q
        while avail:
            b = avail & -avail
            v = b.bit_length() - 1
            order.append(v)
            bound.append(c)
            avail &= ~adj[v] & ~b
            q ^= b
    stack = state.stack
    for i in range(len(order) - 1, -1, -1):
        if r_len + bound[i] <= state.best_len:
            return
        v = order[i]
        cand &= ~(1 << v)
        sub = cand & adj[v]
        stack.append(v)
        if sub:
            _clique_expand(state, r_len + 1, sub)
        elif r_len + 1 > state.best_len:
            state.best_len = r_len + 1
            state.best = stack.copy()
            if state.best_len >= state.cap:
                raise _Done
        stack.pop()


def clique_number(
    g: Graph,
    lower_hint: int = 0,
    upper_hint: int | None = None,
    budget: int | None = None,
    witness_hint=None,
) -> SearchResult:
    """Exact maximum clique with witness.

    upper_hint must be a sound upper bound (it prunes; it is also used for
    early exit once matched).  witness_hint, when given, must be a clique and
    seeds the incumbent.  lower_hint is advisory only.
    """
    n = g.n_vertices
    adj = list(g.adjacency)
    if n == 0:
        return SearchResult(True, 0, 0, (), 0)
    order, degeneracy = _degeneracy_order(adj, n)
    cap = min(upper_hint if upper_hint is not None else n, degeneracy + 1, n)

    start = _greedy_clique(adj, n, list(reversed(order))[: min(n, 48)])
    if witness_hint:
        wit = sorted(witness_hint)
        if not _check_clique(adj, wit):
            raise InvalidWitnessError("witness_hint is not a clique")
        if len(wit) > len(start):
            start = wit
    if len(start) >= cap:
        return SearchResult(True, len(start), len(start), tuple(sorted(start)), 0)

    # Search in degeneracy-ranked labels.
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    adj2 = [0] * n
    for v in range(n):
        r = 0
        for u in iter_bits(adj[v]):
            r |= 1 << rank[u]
        adj2[rank[v]] = r
    bud = _Budget(budget if budget is not None else DEFAULT_BUDGET)
    state = _CliqueState(adj2, [rank[v] for v in start], bud, cap)
    exact = True
    try:
        _clique_expand(state, 0, (1 << n) - 1)
    except _Done:
        pass
    except _Exhausted:
        exact = False
    witness = tuple(sorted(order[i] for i in state.best))
    if exact:
        return SearchResult(True, len(witness), len(witness), witness, bud.spent)
    return SearchResult(False, len(witness), cap, witness, bud.spent)


def independence_number(g: Graph, budget: int | None = None, upper_hint: int | None = None,
                        witness_hint=None) -> SearchResult:
    """Exact independence number: maximum clique of the complement."""
    return clique_number(complement(g), upper_hint=upper_hint, budget=budget,
                         witness_hint=witness_hint)


def _k_colorable(adj: list[int], n: int, k: int, seed_clique, budget: _Budget):
    """Decide proper k-colorability.  Returns ("sat", coloring) /
    ("unsat", None); raises _Exhausted on budget."""
    if n == 0:
        return "sat", ()
    if k <= 0:
        return "unsat", None
    if len(seed_clique) > k:
        return "unsat", None
    if k >= n:
        return "sat", tuple(range(n))
    full = (1 << k) - 1
    color = [-1] * n
    domain = [full] * n
    degs = [adj[v].bit_count() for v in range(n)]
    used = 0
    for v in seed_clique:
        c = used
        color[v] = c
        used += 1
        bit = 1 << c
        for u in iter_bits(adj[v]):
            if color[u] < 0:
                domain[u] &= ~bit
                if domain[u] == 0:
                    return "unsat", None
    remaining = n - len(seed_clique)
    trail: list[tuple[int, int]] = []  # (vertex, cleared color bit), for undo

    def _propagate(v: int, c: int, used: int, remaining: int):
        """Assign color c to v, then keep assigning every forced vertex (one
        whose only current option is a single existing color, or a fresh color
        when every existing one is excluded).  Assignment effects are applied
        immediately and forcedness is re-validated when a vertex is popped, so
        cascades can never produce a conflicting pair.  Everything is recorded
        for undo."""
        mark = len(trail)
        assigned: list[int] = []
        pending: list[int] = []

        def apply(u: int, cu: int) -> bool:
            nonlocal used, remaining
            color[u] = cu
            assigned.append(u)
            if cu == used:
                used += 1
            remaining -= 1
            bit = 1 << cu
            for w in iter_bits(adj[u]):
                if color[w] < 0 and domain[w] & bit:
                    domain[w] ^= bit
                    trail.append((w, bit))
                    if domain[w] == 0:
                        return False
                    pending.append(w)
            return True

        ok = apply(v, c)
        while ok and pending:
            u = pending.pop()
            if color[u] >= 0:
                continue
            opts = domain[u] & ((1 << used) - 1)
            if used < k:
                if opts == 0:
                    # every used color is excluded by a colored neighbor, so u
                    # takes an unused color in any completion; WLOG the lowest.
                    ok = apply(u, used)
            elif opts == 0:
                ok = False
            elif opts & (opts - 1) == 0:
                ok = apply(u, opts.bit_length() - 1)
        return ok, used, remaining, mark, assigned

    def _undo(mark: int, assigned: list[int]) -> None:
        for u in assigned:
            color[u] = -1
        while len(trail) > mark:
            u, bit = trail.pop()
            domain[u] |= bit

    def solve(remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        budget.step()
        used_mask = (1 << used) - 1
        new_allowed = used < k
        best_v, best_key = -1, None
        for v in range(n):
            if color[v] < 0:
                cnt = (domain[v] & used_mask).bit_count() + (1 if new_allowed else 0)
                key = (cnt, -degs[v], v)
                if best_key is None or key < best_key:
                    best_key = key
                    best_v = v
                    if cnt == 0:
                        break
        v = best_v
        options = domain[v] & used_mask
        while options:
            b = options & -options
            options ^= b
            if _branch(v, b.bit_length() - 1, used, remaining):
                return True
        if new_allowed:
            # Color `used` was never assigned anywhere, so it is still in the
            # domain; introducing exactly the lowest unused color keeps the
            # search complete while killing color-permutation symmetry.
            if _branch(v, used, used, remaining):
                return True
        return False

    def _branch(v: int, c: int, used: int, remaining: int) -> bool:
        ok, used2, remaining2, mark, assigned = _propagate(v, c, used, remaining)
        if ok and solve(remaining2, used2):
            return True
        _undo(mark, assigned)
        return False

    if solve(remaining, used):
        return "sat", tuple(color)
    return "unsat", None


def k_colorable(g: Graph, k: int, budget: int | None = None, clique_hint=()):
    """Public k-colorability test: returns (status, coloring, nodes) with
    status "sat" | "unsat" | "timeout"."""
    adj = list(g.adjacency)
    seed = sorted(clique_hint)
    if seed and not _check_clique(adj, seed):
        raise InvalidWitnessError("clique_hint is not a clique")
    bud = _Budget(budget if budget is not None else DEFAULT_BUDGET)
    try:
        status, coloring = _k_colorable(adj, g.n_vertices, k, seed, bud)
    except _Exhausted:
        return "timeout", None, bud.spent
    return status, coloring, bud.spent


def _normalize_coloring(coloring) -> tuple[int, ...]:
    """Renumber colors in order of first appearance (deterministic witness)."""
    seen: dict[int, int] = {}
    out = []
    for c in coloring:
        if c not in seen:
            seen[c] = len(seen)
        out.append(seen[c])
    return tuple(out)


def chromatic_number(
    g: Graph,
    lower: int | None = None,
    upper: int | None = None,
    budget: int | None = None,
    clique_hint=None,
) -> SearchResult:
    """Exact chromatic number with a proper coloring witness.

    k-colorability is tested upward from the lower bound, so the first
    satisfiable k is exact.  `lower` must be sound if supplied; the clique
    witness (computed here when not passed in) seeds every k-test.  The
    search's own upper bound always comes from a greedy coloring it can
    exhibit; a supplied `upper` is only cross-checked, and a proved
    contradiction with it raises BadInputError instead of returning.
    """
    n = g.n_vertices
    if n == 0:
        return SearchResult(True, 0, 0, (), 0)
    adj = list(g.adjacency)
    bud_total = budget if budget is not None else DEFAULT_BUDGET
    spent = 0

    clique = sorted(clique_hint) if clique_hint else None
    if clique is not None and not _check_clique(adj, clique):
        raise InvalidWitnessError("clique_hint is not a clique")
    if clique is None:
        cres = clique_number(g, budget=bud_total)
        spent += cres.nodes
        clique = list(cres.witness)

    greedy = _dsatur_coloring(adj, n)
    ub = max(greedy) + 1
    ub_witness = _normalize_coloring(greedy)
    lo = max(lower if lower is not None else 1, len(clique), 1)
    if lo > ub:
        raise BadInputError(f"chromatic lower bound {lo} exceeds the verified upper bound {ub}")

    k = lo
    while k < ub:
        status, coloring, nodes = k_colorable(g, k, budget=bud_total - spent, clique_hint=clique)
        spent += nodes
        if status == "sat":
            return SearchResult(True, k, k, _normalize_coloring(coloring), spent)
        if status == "timeout":
            return SearchResult(False, k, ub, ub_witness, spent)
        if upper is not None and k >= upper:
            raise BadInputError(f"claimed upper bound {upper} refuted: not {k}-colorable")
        k += 1
    return SearchResult(True, ub, ub, ub_witness, spent)


@dataclass(frozen=True)
class InvariantCertificate:
    """Exact invariants of one graph with checkable witnesses.

    For status "timeout" the unknown numbers are None and `bounds` brackets
    them; witnesses always satisfy their defining conditions.
    """

    omega: int | None
    alpha: int | None
    chi: int | None
    clique: tuple[int, ...]
    independent_set: tuple[int, ...]
    coloring: tuple[int, ...] | None
    status: str  # "exact" | "timeout"
    bounds: dict

    def to_json_dict(self) -> dict:
        return {
            "omega": self.omega,
            "alpha": self.alpha,
            "chi": self.chi,
            "clique": list(self.clique),
            "independent_set": list(self.independent_set),
            "coloring": list(self.coloring) if self.coloring is not None else None,
            "status": self.status,
            "bounds": {key: list(val) for key, val in self.bounds.items()},
        }


def verify_certificate(g: Graph, cert: InvariantCertificate) -> None:
    """Raise InvalidWitnessError unless every witness checks out against g."""
    adj = list(g.adjacency)
    if not _check_clique(adj, cert.clique):
        raise InvalidWitnessError("clique witness is not a clique")
    if not _check_independent(adj, cert.independent_set):
        raise InvalidWitnessError("independent-set witness is not independent")
    if cert.omega is not None and len(cert.clique) != cert.omega:
        raise InvalidWitnessError("clique witness size differs from omega")
    if cert.alpha is not None and len(cert.independent_set) != cert.alpha:
        raise InvalidWitnessError("independent-set witness size differs from alpha")
    if cert.coloring is not None:
        if len(cert.coloring) != g.n_vertices:
            raise InvalidWitnessError("coloring length differs from vertex count")
        for u in range(g.n_vertices):
            for v in iter_bits(adj[u]):
                if v > u and cert.coloring[u] == cert.coloring[v]:
                    raise InvalidWitnessError(f"coloring is not proper on edge ({u},{v})")
        n_colors = len(set(cert.coloring))
        if cert.chi is not None and n_colors != cert.chi:
            raise InvalidWitnessError("coloring does not use exactly chi colors")
    if cert.omega is not None and cert.chi is not None and cert.omega > cert.chi:
        raise InvalidWitnessError("omega exceeds chi")


def product_certificate(g: Graph, clique, independent_set):
    """If |C|*|A| equals the vertex count of a vertex-transitive graph, C and A
    are extremal, so (omega, alpha) is exact without any search."""
    adj = list(g.adjacency)
    c = sorted(set(clique))
    a = sorted(set(independent_set))
    if not _check_clique(adj, c):
        raise InvalidWitnessError("supplied clique is not a clique")
    if not _check_independent(adj, a):
        raise InvalidWitnessError("supplied independent set is not independent")
    if len(c) * len(a) == g.n_vertices:
        return len(c), len(a)
    return None


def subfield_clique(field: FieldTables, m: int, t: int):
    """Subfield GF(p^t) as a clique of the m-th power residue graph, present
    exactly when (p^t - 1) | (q-1)/m (the subfield's units are residues)."""
    q = field.q
    if (q - 1) % (2 * m):
        raise NotUndirectedError(f"2m={2 * m} does not divide q-1={q - 1}")
    if t < 1 or field.n % t:
        raise BadDivisorError(f"t={t} does not divide n={field.n}")
    sub_order = field.p**t - 1
    if ((q - 1) // m) % sub_order:
        return None
    return tuple(sorted(subfield_elements(field, t)))


def brute_force_invariants(g: Graph) -> InvariantCertificate:
    """Oracle: omega/alpha by full subset enumeration, chi by exhaustive
    sequential backtracking.  Hard-capped at 16 vertices."""
    n = g.n_vertices
    if n > BRUTE_FORCE_CAP:
        raise TooLargeError(f"{n} vertices exceeds the brute-force cap {BRUTE_FORCE_CAP}")
    adj = list(g.adjacency)
    cadj = list(complement(g).adjacency)

    def max_subset(rows) -> tuple[int, ...]:
        best_mask, best_size = 0, 0
        for mask in range(1, 1 << n):
            size = mask.bit_count()
            if size <= best_size:
                continue
            ok = True
            m = mask
            while m:
                b = m & -m
                v = b.bit_length() - 1
                m ^= b
                if (rows[v] & mask) != (mask & ~(1 << v)):
                    ok = False
                    break
            if ok:
                best_mask, best_size = mask, size
        return tuple(iter_bits(best_mask))

    clique = max_subset(adj)
    independent = max_subset(cadj)

    def colorable(k: int):
        colors = [-1] * n

        def rec(v: int, used: int):
            if v == n:
                return True
            cap = min(k, used + 1)
            for c in range(cap):
                ok = True
                for u in iter_bits(adj[v]):
                    if u < v and colors[u] == c:
                        ok = False
                        break
                if ok:
                    colors[v] = c
                    if rec(v + 1, max(used, c + 1)):
                        return True
                    colors[v] = -1
            return False

        if rec(0, 0):
            return tuple(colors)
        return None

    k = len(clique)
    while True:
        coloring = colorable(k)
        if coloring is not None:
            break
        k += 1
    cert = InvariantCertificate(
        omega=len(clique),
        alpha=len(independent),
        chi=k,
        clique=clique,
        independent_set=independent,
        coloring=_normalize_coloring(coloring),
        status="exact",
        bounds={"omega": (len(clique),) * 2, "alpha": (len(independent),) * 2, "chi": (k, k)},
    )
    verify_certificate(g, cert)
    return cert


def _coset_coloring(field: FieldTables, subgroup) -> tuple[int, ...]:
    """Color map whose classes are the additive cosets of `subgroup`."""
    q = field.q
    add = field.add
    members = sorted(subgroup)
    color = [-1] * q
    next_color = 0
    for v in range(q):
        if color[v] < 0:
            for a in members:
                color[add(v, a)] = next_color
            next_color += 1
    return tuple(color)


def paley_certificate(field: FieldTables, m: int, budget: int | None = None) -> InvariantCertificate:
    """Exact invariants of the m-th power residue graph on GF(q).

    Shortcut: when the half-degree subfield GF(p^(n/2)) is a clique, its
    gamma-multiple is an independent set of the same size, the product
    certificate pins omega = alpha = p^(n/2), and the additive cosets of the
    multiplied subfield give a proper coloring with exactly omega colors, so
    chi = omega with no search.  Otherwise: spectral bounds + search.
    """
    g = build_paley(field, m)
    q = field.q
    rep = theta_pair(field, m)
    omega_ub = int(rep.theta_complement + 1e-6)
    chi_lb_spectral = ceil(rep.theta_complement - 1e-6)
    alpha_ub = int(rep.theta + 1e-6)

    best_sub: tuple[int, ...] | None = None
    for t in divisors(field.n):
        if t == field.n:
            continue
        sc = subfield_clique(field, m, t)
        if sc is not None and (best_sub is None or len(sc) > len(best_sub)):
            best_sub = sc

    if best_sub is not None and len(best_sub) ** 2 == q:
        mul = field.mul
        gamma = field.gamma
        indep = tuple(sorted(mul(c, gamma) for c in best_sub))
        pair = product_certificate(g, best_sub, indep)
        if pair is None:  # unreachable: |C| * |A| = q by construction
            raise InvalidWitnessError("product certificate failed to fire")
        omega, alpha = pair
        coloring = _coset_coloring(field, indep)
        cert = InvariantCertificate(
            omega=omega,
            alpha=alpha,
            chi=omega,
            clique=best_sub,
            independent_set=indep,
            coloring=coloring,
            status="exact",
            bounds={"omega": (omega, omega), "alpha": (alpha, alpha), "chi": (omega, omega)},
        )
        verify_certificate(g, cert)
        return cert

    bud = budget if budget is not None else DEFAULT_BUDGET
    indep_hint = None
    if best_sub is not None:
        mul = field.mul
        gamma = field.gamma
        indep_hint = tuple(sorted(mul(c, gamma) for c in best_sub))
    omega_res = clique_number(g, upper_hint=omega_ub, budget=bud, witness_hint=best_sub)
    alpha_res = clique_number(complement(g), upper_hint=alpha_ub, budget=bud, witness_hint=indep_hint)
    chi_lo = chi_lb_spectral
    if omega_res.exact:
        chi_lo = max(chi_lo, omega_res.value)
    else:
        chi_lo = max(chi_lo, omega_res.lower)
    # chi >= q / alpha needs an upper bound on alpha; exact alpha is best.
    chi_lo = max(chi_lo, ceil(q / alpha_res.upper))
    chi_res = chromatic_number(g, lower=chi_lo, budget=bud, clique_hint=omega_res.witness)

    exact = omega_res.exact and alpha_res.exact and chi_res.exact
    cert = InvariantCertificate(
        omega=omega_res.value if omega_res.exact else None,
        alpha=alpha_res.value if alpha_res.exact else None,
        chi=chi_res.value if chi_res.exact else None,
        clique=omega_res.witness,
        independent_set=alpha_res.witness,
        coloring=chi_res.witness if chi_res.exact else None,
        status="exact" if exact else "timeout",
        bounds={
            "omega": (omega_res.lower, omega_res.upper),
            "alpha": (alpha_res.lower, alpha_res.upper),
            "chi": (chi_res.lower, chi_res.upper),
        },
    )
    if exact:
        verify_certificate(g, cert)
    return cert
