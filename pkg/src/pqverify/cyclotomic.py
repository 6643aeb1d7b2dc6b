"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored at its minimal conductor ``N`` as coefficients over the
power basis ``1, z, ..., z**(phi(N)-1)`` of Q(z), ``z = exp(2*pi*i/N)``,
reduced modulo the N-th cyclotomic polynomial.  Since the conductor is
minimal (never 2 mod 4, and 1 for rationals) and the power basis is a basis,
two equal values always have identical ``(conductor, coeffs)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "Cyclotomic",
    "zeta",
    "embed",
    "galois",
    "trace",
    "as_rational",
    "cyclo_arith",
    "from_json",
    "to_json",
    "euler_phi",
    "moebius",
    "ramanujan_sum",
]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    r = n
    for p in _factor(n):
        r -= r // p
    return r


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    f = _factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def ramanujan_sum(n: int, k: int) -> int:
    """Tr_{Q(zeta_n)/Q}(zeta_n**k), i.e. the Ramanujan sum c_n(k)."""
    m = n // gcd(n, k)
    return moebius(m) * euler_phi(n) // euler_phi(m)


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    # integer coefficients, lowest degree first
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(_cyclotomic_poly(d)))
    return tuple(num)


def _polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]  # b is monic
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a[: len(b) - 1])
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds z**k (0 <= k < n) in the power basis of Q(zeta_n)."""
    phi = euler_phi(n)
    poly = _cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce z**phi = -sum(poly[:phi] * z**i)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * poly[i]
    return tuple(rows)


def _reduce_dense(n: int, dense: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Reduce sum(c * z**k) onto the power basis of Q(zeta_n)."""
    table = _power_table(n)
    out = [Fraction(0)] * euler_phi(n)
    for k, c in dense.items():
        if not c:
            continue
        row = table[k % n]
        for i, r in enumerate(row):
            if r:
                out[i] += c * r
    return tuple(out)


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve an overdetermined consistent system exactly; None if inconsistent."""
    rows = [list(r) + [b] for r, b in zip(mat, rhs)]
    ncols = len(mat[0]) if mat else 0
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class Cyclotomic:
    """Immutable exact element of a cyclotomic field."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs, _reduced: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        if not _reduced:
            if isinstance(coeffs, dict):
                dense = {int(k): Fraction(v) for k, v in coeffs.items()}
            else:
                dense = {k: Fraction(v) for k, v in enumerate(coeffs)}
            conductor, coeffs = _minimize(conductor, _reduce_dense(conductor, dense))
        self.conductor = conductor
        self.coeffs = tuple(coeffs)
        self._hash = hash((self.conductor, self.coeffs))

    # construction helpers
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls(1, (Fraction(q),), _reduced=True)

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    def terms(self) -> dict[int, Fraction]:
        """Nonzero coefficients keyed by exponent of zeta_conductor."""
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def dense(self, n: int) -> dict[int, Fraction]:
        """Coefficients of this value written in powers of zeta_n (n a multiple of the conductor)."""
        if n % self.conductor:
            raise ValueError(f"{n} is not a multiple of conductor {self.conductor}")
        step = n // self.conductor
        return {k * step: c for k, c in enumerate(self.coeffs) if c}

    def is_rational(self) -> bool:
        return self.conductor == 1

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def _binary(self, other, kind):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return cyclo_arith(self, other, kind)

    def __add__(self, other):
        return self._binary(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other):
        return self._binary(other, "mul")

    __rmul__ = __mul__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs), _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, tuple(c / other for c in self.coeffs), _reduced=True)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            if self.is_rational():
                return Cyclotomic.rational(self.coeffs[0] ** e)
            # only roots of unity are inverted; enough for zeta**-k
            inv = complex_conjugate(self)
            if inv * self != 1:
                raise ValueError("negative powers need a root of unity")
            return inv ** (-e)
        out = Cyclotomic.rational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        parts = " + ".join(f"{c}*z{self.conductor}^{k}" for k, c in self.terms().items())
        return f"Cyclotomic({parts})"


@lru_cache(maxsize=1 << 16)
def _minimize(n: int, vec: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    """Move a power-basis vector of Q(zeta_n) to its minimal conductor.

    Cyclotomic subfields of Q(zeta_n) are the Q(zeta_m), m | n, and their
    intersections are again cyclotomic, so descending greedily through the
    maximal ones Q(zeta_{n/p}) reaches the unique minimal conductor.
    """
    while n > 1:
        if not any(vec[1:]):
            return 1, (vec[0],)
        for p in _factor(n):
            m = n // p
            if m % 4 == 2:
                m //= 2
            sol = _in_subfield(n, m, vec)
            if sol is not None:
                n, vec = m, sol
                break
        else:
            return n, vec
    return 1, vec


def _in_subfield(n: int, m: int, vec) -> tuple[Fraction, ...] | None:
    table = _power_table(n)
    step = n // m
    phi_m = euler_phi(m)
    cols = [table[(j * step) % n] for j in range(phi_m)]
    mat = [[Fraction(cols[j][i]) for j in range(phi_m)] for i in range(len(vec))]
    sol = _solve(mat, list(vec))
    return None if sol is None else tuple(sol)


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity zeta_n**k."""
    if n < 1:
        raise ValueError("n must be positive")
    return Cyclotomic(n, {k % n: 1})


def cyclo_arith(a: Cyclotomic, b: Cyclotomic, kind: str) -> Cyclotomic:
    """Exact ``a + b``, ``a - b`` or ``a * b`` in Q(zeta_lcm)."""
    if a.conductor == b.conductor == 1:
        x, y = a.coeffs[0], b.coeffs[0]
        r = {"add": x + y, "sub": x - y, "mul": x * y}[kind]
        return Cyclotomic.rational(r)
    n = a.conductor * b.conductor // gcd(a.conductor, b.conductor)
    da, db = a.dense(n), b.dense(n)
    out: dict[int, Fraction] = {}
    if kind == "add" or kind == "sub":
        sign = 1 if kind == "add" else -1
        out = dict(da)
        for k, c in db.items():
            out[k] = out.get(k, 0) + sign * c
    elif kind == "mul":
        for i, x in da.items():
            for j, y in db.items():
                k = (i + j) % n
                out[k] = out.get(k, 0) + x * y
    else:
        raise ValueError(f"unknown operation {kind!r}")
    return Cyclotomic(n, out)


def embed(a: Cyclotomic, m: int) -> dict[int, Fraction]:
    """Express ``a`` in powers of zeta_m (m a multiple of its conductor).

    Returns the exponent -> coefficient map; the stored form of ``a`` itself
    is always at its minimal conductor, so re-reading the map with
    ``Cyclotomic(m, ...)`` gives back ``a``.
    """
    return a.dense(m)


def galois(a: Cyclotomic, k: int) -> Cyclotomic:
    """Image of ``a`` under zeta_n -> zeta_n**k, n the conductor."""
    n = a.conductor
    if gcd(k, n) != 1:
        raise ValueError(f"k={k} is not coprime to conductor {n}")
    if n == 1:
        return a
    return Cyclotomic(n, {(i * k) % n: c for i, c in a.terms().items()})


def complex_conjugate(a: Cyclotomic) -> Cyclotomic:
    return galois(a, -1 % a.conductor if a.conductor > 1 else 1)


def trace(a: Cyclotomic, over: int | None = None) -> Fraction:
    """Tr_{Q(zeta_over)/Q}(a); ``over`` defaults to the conductor of ``a``."""
    n = a.conductor
    if over is None:
        over = n
    elif over % n:
        raise ValueError(f"{a!r} does not lie in Q(zeta_{over})")
    tr = sum((c * ramanujan_sum(n, k) for k, c in a.terms().items()), Fraction(0))
    return tr * (euler_phi(over) // euler_phi(n))


def as_rational(a: Cyclotomic) -> Fraction | None:
    return a.coeffs[0] if a.conductor == 1 else None


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"cannot read rational from {x!r}")


def from_json(obj) -> Cyclotomic:
    """Decode ``{"n": N, "terms": [[k, "p/q"], ...]}`` or a bare rational."""
    if isinstance(obj, dict):
        try:
            n = int(obj["n"])
            terms = obj["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed cyclotomic {obj!r}") from exc
        dense: dict[int, Fraction] = {}
        for k, c in terms:
            dense[int(k) % n] = dense.get(int(k) % n, 0) + _parse_rational(c)
        return Cyclotomic(n, dense)
    return Cyclotomic.rational(_parse_rational(obj))


def _fmt(q: Fraction):
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_json(a: Cyclotomic):
    if a.is_rational():
        return _fmt(a.coeffs[0])
    return {"n": a.conductor, "terms": [[k, str(c)] for k, c in a.terms().items()]}


def dumps(a: Cyclotomic) -> str:
    return json.dumps(to_json(a))
