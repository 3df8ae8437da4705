"""Finite fields GF(p^n) as dense lookup tables.

Elements are integer codes in [0, q): the element with polynomial
coordinates (c0, ..., c_{n-1}) over GF(p) has code sum(c_i * p**i).
Multiplication goes through exp/log tables for a fixed primitive element
gamma; addition is digitwise mod p.  All tables are immutable after
construction, so a FieldTables value can be shared freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadDivisorError, BadInputError, NotOddPrimeError, SizeLimitError

DEFAULT_SIZE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (inputs are desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p**n with p prime; BadInputError otherwise."""
    if q < 2:
        raise BadInputError(f"q={q} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise BadInputError(f"q={q} is not a prime power")
    [(p, n)] = f.items()
    return p, n


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small: list[int] = []
    large: list[int] = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class FieldSpec:
    """Construction parameters of one field: q = p**n, reduction modulus,
    and the code of the chosen primitive element gamma (= exp[1])."""

    p: int
    n: int
    q: int
    modulus: tuple[int, ...]  # n+1 coefficients, low degree first, monic
    gamma: int

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "gamma": self.gamma,
        }


@dataclass(frozen=True)
class FieldTables:
    """Complete arithmetic tables for GF(p^n).

    exp[k] is the code of gamma**k (length q-1), log is its inverse on
    nonzero codes (log[0] is a -1 sentinel), trace[a] is the absolute
    trace of the element with code a, reduced into [0, p).
    """

    spec: FieldSpec
    exp: tuple[int, ...]
    log: tuple[int, ...]
    trace: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def gamma(self) -> int:
        return self.spec.gamma

    def add(self, a: int, b: int) -> int:
        p = self.spec.p
        if self.spec.n == 1:
            return (a + b) % p
        s = 0
        shift = 1
        while a or b:
            s += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return s

    def neg(self, a: int) -> int:
        p = self.spec.p
        if self.spec.n == 1:
            return (-a) % p
        s = 0
        shift = 1
        while a:
            s += ((p - a % p) % p) * shift
            a //= p
            shift *= p
        return s

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        e = self.log[a] + self.log[b]
        qm1 = self.spec.q - 1
        if e >= qm1:
            e -= qm1
        return self.exp[e]

    def inv(self, a: int) -> int:
        if a == 0:
            raise BadInputError("0 has no multiplicative inverse")
        return self.exp[(-self.log[a]) % (self.spec.q - 1)]

    def trace_of(self, a: int) -> int:
        if not 0 <= a < self.spec.q:
            raise BadInputError(f"element code {a} out of range [0, {self.spec.q})")
        return self.trace[a]


def _poly_mul_mod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int, n: int) -> list[int]:
    # a, b have length n (degree < n); modulus is monic of degree n.
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            off = d - n
            for j in range(n):
                if modulus[j]:
                    prod[off + j] = (prod[off + j] - c * modulus[j]) % p
    return prod[:n]


def _poly_pow_mod(base: list[int], e: int, modulus: tuple[int, ...], p: int, n: int) -> list[int]:
    result = [1] + [0] * (n - 1)
    acc = list(base)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, acc, modulus, p, n)
        e >>= 1
        if e:
            acc = _poly_mul_mod(acc, acc, modulus, p, n)
    return result


def _find_primitive_modulus(p: int, n: int, q: int) -> tuple[int, ...]:
    """Lexicographically smallest (low-degree coefficients first) monic degree-n
    polynomial over GF(p) whose root x generates the full multiplicative group.

    ord(x) = q-1 in GF(p)[x]/(f) forces f irreducible, so a single order test
    suffices: x^(q-1) = 1 and x^((q-1)/ell) != 1 for every prime ell | q-1.
    """
    one = [1] + [0] * (n - 1)
    x = [0, 1] + [0] * (n - 2)
    prime_factors = list(factorize(q - 1))
    for tail in itertools.product(range(p), repeat=n):
        if tail[0] == 0:
            continue  # x would divide f
        f = tuple(tail) + (1,)
        if _poly_pow_mod(x, q - 1, f, p, n) != one:
            continue
        if any(_poly_pow_mod(x, (q - 1) // ell, f, p, n) == one for ell in prime_factors):
            continue
        return f
    raise BadInputError(f"no primitive polynomial of degree {n} over GF({p})")  # unreachable


def _smallest_primitive_root(p: int) -> int:
    prime_factors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in prime_factors):
            return g
    raise BadInputError(f"no primitive root mod {p}")  # unreachable for prime p


@lru_cache(maxsize=None)
def build_field(p: int, n: int = 1, size_limit: int = DEFAULT_SIZE_LIMIT) -> FieldTables:
    """Construct GF(p^n) deterministically.

    The reduction modulus is the lexicographically smallest primitive monic
    polynomial of degree n (for n = 1 the modulus is x - g with g the smallest
    primitive root mod p, so gamma is always that root).
    """
    if p == 2 or not is_prime(p):
        raise NotOddPrimeError(f"p={p} is not an odd prime")
    if n < 1:
        raise BadInputError(f"n={n} must be a positive integer")
    q = p**n
    if q > size_limit:
        raise SizeLimitError(f"q={q} exceeds the size limit {size_limit}")

    if n == 1:
        g = _smallest_primitive_root(p)
        modulus = ((p - g) % p, 1)
        exp = [0] * (q - 1)
        acc = 1
        for k in range(q - 1):
            exp[k] = acc
            acc = acc * g % p
        log = [-1] * q
        for k, code in enumerate(exp):
            log[code] = k
        trace = tuple(range(q))
        spec = FieldSpec(p, n, q, modulus, g)
        return FieldTables(spec, tuple(exp), tuple(log), trace)

    modulus = _find_primitive_modulus(p, n, q)
    # exp table: repeatedly multiply the coefficient vector of gamma**k by x.
    exp = [0] * (q - 1)
    coeffs = [1] + [0] * (n - 1)
    pow_p = [p**i for i in range(n)]
    for k in range(q - 1):
        code = 0
        for i in range(n):
            if coeffs[i]:
                code += coeffs[i] * pow_p[i]
        exp[k] = code
        lead = coeffs[n - 1]
        coeffs = [0] + coeffs[: n - 1]
        if lead:
            for i in range(n):
                if modulus[i]:
                    coeffs[i] = (coeffs[i] - lead * modulus[i]) % p
    log = [-1] * q
    for k, code in enumerate(exp):
        log[code] = k

    # Trace is GF(p)-linear: tabulate it on the power basis, then combine digits.
    spec = FieldSpec(p, n, q, modulus, p)
    tables = FieldTables(spec, tuple(exp), tuple(log), ())
    basis_trace = []
    for i in range(n):
        acc = 0
        for j in range(n):
            acc = tables.add(acc, exp[(i * p**j) % (q - 1)])
        if acc >= p:
            raise BadInputError("trace of a basis element left the prime subfield")
        basis_trace.append(acc)
    trace = [0] * q
    for a in range(q):
        t = 0
        v = a
        for i in range(n):
            if v == 0:
                break
            t += (v % p) * basis_trace[i]
            v //= p
        trace[a] = t % p
    return FieldTables(spec, tuple(exp), tuple(log), tuple(trace))


def subgroup_coset(field: FieldTables, m: int, j: int = 0) -> frozenset[int]:
    """Coset gamma**j * {m-th powers}: the element codes {gamma^(m*i+j)}.

    The m cosets j = 0..m-1 partition the nonzero codes.
    """
    q = field.q
    if m < 1 or (q - 1) % m:
        raise BadDivisorError(f"m={m} does not divide q-1={q - 1}")
    if not 0 <= j < m:
        raise BadInputError(f"coset index j={j} out of range [0, {m})")
    exp = field.exp
    return frozenset(exp[m * i + j] for i in range((q - 1) // m))


def subfield_elements(field: FieldTables, t: int) -> frozenset[int]:
    """Element codes of the subfield GF(p^t) inside GF(p^n); requires t | n."""
    if t < 1 or field.n % t:
        raise BadDivisorError(f"t={t} does not divide n={field.n}")
    sub_order = field.p**t - 1
    step = (field.q - 1) // sub_order
    exp = field.exp
    return frozenset([0]) | frozenset(exp[k * step] for k in range(sub_order))
