"""Exact enumeration of the integer points of small bounded systems.

A system asks for integer vectors ``x`` such that every *form*
``a.x + b`` (rational ``a``, ``b``) is an integer, nonnegative for
``nonneg`` forms and at most ``upper`` when given, and every *equality*
``a.x == c`` (integer ``a``, ``c``) holds.

The integrality conditions are linear congruences; they are solved first,
which leaves an affine lattice ``x0 + B t``.  On that lattice every form is an
integer affine function of ``t``.  Exact LP (a dictionary simplex kept in
integer rows with a common denominator) bounds each ``t_i``; a depth-first
search with interval propagation then lists the lattice points, and each
point is re-checked against the original system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, floor, ceil
from typing import Sequence


class UnboundedSystem(ValueError):
    """The inequalities do not bound the variables."""


@dataclass(frozen=True)
class Form:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    nonneg: bool = True
    upper: Fraction | None = None
    label: str = ""

    def value(self, x: Sequence[int]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), self.const)


@dataclass
class ConstraintSystem:
    variables: list
    forms: list[Form] = field(default_factory=list)
    equalities: list[tuple[tuple[int, ...], int]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.variables)

    def add_form(self, coeffs, const, nonneg=True, upper=None, label=""):
        self.forms.append(Form(tuple(Fraction(c) for c in coeffs), Fraction(const), nonneg,
                               None if upper is None else Fraction(upper), label))

    def add_equality(self, coeffs, const):
        self.equalities.append((tuple(int(c) for c in coeffs), int(const)))

    def satisfied_by(self, x: Sequence[int]) -> bool:
        for a, c in self.equalities:
            if sum(ai * xi for ai, xi in zip(a, x)) != c:
                return False
        for f in self.forms:
            v = f.value(x)
            if v.denominator != 1:
                return False
            if f.nonneg and v < 0:
                return False
            if f.upper is not None and v > f.upper:
                return False
        return True


# ------------------------------------------------------------ integer lattices


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unimodular_to_gcd(w: list[int]) -> tuple[int, list[list[int]]]:
    """Return (g, U) with U unimodular (r x r) and w U = (g, 0, ..., 0), g >= 0."""
    r = len(w)
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    v = list(w)
    # move a nonzero entry to position 0
    for j in range(r):
        if v[j]:
            if j:
                v[0], v[j] = v[j], v[0]
                for row in U:
                    row[0], row[j] = row[j], row[0]
            break
    for j in range(1, r):
        a, b = v[0], v[j]
        if b == 0:
            continue
        g, x, y = _egcd(a, b)
        ag, bg = a // g, b // g
        for row in U:
            c0, cj = row[0], row[j]
            row[0], row[j] = x * c0 + y * cj, -bg * c0 + ag * cj
        v[0], v[j] = g, 0
    if v and v[0] < 0:
        v[0] = -v[0]
        for row in U:
            row[0] = -row[0]
    return (v[0] if v else 0), U


def _matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


class Infeasible(Exception):
    pass


class AffineLattice:
    """The set ``x0 + B t`` (B columns a basis, possibly of rank 0)."""

    def __init__(self, dim: int):
        self.dim = dim
        self.x0 = [0] * dim
        self.B = [[int(i == j) for j in range(dim)] for i in range(dim)]

    @property
    def rank(self) -> int:
        return len(self.B[0]) if self.B and self.B[0] else 0

    def _apply(self, U, first_scale=None, fix_first=None):
        BU = _matmul(self.B, U)
        if fix_first is not None:
            self.x0 = [x + row[0] * fix_first for x, row in zip(self.x0, BU)]
        if first_scale is None:
            self.B = [row[1:] for row in BU]
        else:
            for row in BU:
                row[0] *= first_scale
            self.B = BU

    def impose_equality(self, a: Sequence[int], c: int) -> bool:
        """Restrict to a.x == c; return False when this is impossible."""
        w = [sum(ai * row[j] for ai, row in zip(a, self.B)) for j in range(self.rank)]
        rhs = c - sum(ai * xi for ai, xi in zip(a, self.x0))
        if not any(w):
            return rhs == 0
        g, U = _unimodular_to_gcd(w)
        if rhs % g:
            return False
        self._apply(U, first_scale=None, fix_first=rhs // g)
        return True

    def impose_integral(self, a: Sequence[Fraction], b: Fraction) -> bool:
        """Restrict to a.x + b in Z; return False when this is impossible."""
        r = self.rank
        wq = [sum((ai * row[j] for ai, row in zip(a, self.B) if ai), Fraction(0)) for j in range(r)]
        s = sum((ai * xi for ai, xi in zip(a, self.x0) if ai), Fraction(b))
        D = lcm(s.denominator, *(q.denominator for q in wq)) if wq else s.denominator
        if D == 1:
            return True
        W = [int(q * D) % D for q in wq]
        S = int(s * D) % D
        if not any(W):
            return S == 0
        g, U = _unimodular_to_gcd(W)
        h = gcd(g, D)
        if S % h:
            return False
        mod = D // h
        t1 = 0
        if mod > 1:
            t1 = (-(S // h) * pow(g // h, -1, mod)) % mod
        self._apply(U, first_scale=mod, fix_first=t1)
        return True

    def reduce(self):
        if self.rank > 1:
            cols = lll([list(c) for c in zip(*self.B)])
            self.B = [list(r) for r in zip(*cols)]
        elif self.rank == 1:
            pass
        # pull x0 towards the origin (Babai rounding along the reduced basis)
        if self.rank:
            self.x0 = _size_reduce(self.x0, [list(c) for c in zip(*self.B)])
        return self

    def point(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(x + sum(row[j] * t[j] for j in range(len(t))) for x, row in zip(self.x0, self.B))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce a list of linearly independent integer vectors (exact arithmetic)."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b

    def gso():
        bstar, mu = [], [[Fraction(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = _dot(b[i], bstar[j]) / norms[j] if norms[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(_dot(v, v))
        return bstar, mu, norms

    bstar, mu, norms = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu, norms = gso()
            k = max(k - 1, 1)
    return b


def _size_reduce(x: list[int], cols: list[list[int]]) -> list[int]:
    x = list(x)
    for _ in range(2):
        for c in reversed(cols):
            nc = _dot(c, c)
            if nc:
                q = round(Fraction(_dot(x, c), nc))
                if q:
                    x = [a - q * b for a, b in zip(x, c)]
    return x


# ------------------------------------------------------------ exact simplex


def _normalize(row: list[int], den: int) -> tuple[list[int], int]:
    if den < 0:
        row, den = [-v for v in row], -den
    g = den
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row, den
    if g > 1:
        row = [v // g for v in row]
        den //= g
    return row, den


class _Dictionary:
    """Feasible dictionary for {t free : G t <= h}; maximizes linear objectives.

    Row i reads ``basic_i = (row[0] + sum_k row[k+1] * nonbasic_k) / den[i]``
    with integer entries and a positive denominator, so pivots stay in exact
    integer arithmetic.
    """

    def __init__(self, G: list[list[int]], h: list[int]):
        self.r = r = len(G[0]) if G else 0
        self.m = m = len(G)
        # variable ids: 0..r-1 free t, r..r+m-1 slacks, r+m the phase-one variable
        self.a0 = r + m
        self.basic = [r + i for i in range(m)]
        self.nonbasic = list(range(r)) + [self.a0]
        self.rows = [[int(hv)] + [-int(g) for g in row] + [1] for row, hv in zip(G, h)]
        self.den = [1] * m
        self.feasible = self._phase_one()

    def _is_free(self, v):
        return v < self.r

    @staticmethod
    def _substitute(row, den, col, prow, pden):
        """Replace nonbasic column ``col`` in (row, den) by the expression (prow, pden)."""
        f = row[col + 1]
        if not f:
            return row, den
        new = [pden * a + f * b for a, b in zip(row, prow)]
        new[col + 1] = f * prow[col + 1]
        return _normalize(new, den * pden)

    def _pivot_rows(self, r, col):
        """Expression of the entering variable obtained from row r."""
        row, den = self.rows[r], self.den[r]
        a = row[col + 1]
        prow = [-v for v in row]
        prow[col + 1] = den
        return _normalize(prow, a)

    def _pivot(self, r, col, obj=None):
        prow, pden = self._pivot_rows(r, col)
        for i in range(len(self.rows)):
            if i != r:
                self.rows[i], self.den[i] = self._substitute(self.rows[i], self.den[i], col, prow, pden)
        self.rows[r], self.den[r] = prow, pden
        self.basic[r], self.nonbasic[col] = self.nonbasic[col], self.basic[r]
        if obj is not None:
            return self._substitute(obj[0], obj[1], col, prow, pden)
        return None

    def _optimize(self, obj: tuple[list[int], int]):
        """Maximize the objective row in place; returns the final objective or None if unbounded."""
        order = sorted(range(len(self.nonbasic)), key=lambda k: self.nonbasic[k])
        while True:
            orow = obj[0]
            col = None
            for k in order:
                c = orow[k + 1]
                if c > 0 or (c < 0 and self._is_free(self.nonbasic[k])):
                    col = k
                    break
            if col is None:
                return obj
            direction = 1 if orow[col + 1] > 0 else -1
            best = None
            for i, row in enumerate(self.rows):
                if self._is_free(self.basic[i]):
                    continue
                a = row[col + 1] * direction
                if a < 0:
                    # ratio row[0] / -a, compared by cross-multiplication
                    if best is None:
                        best = (i, row[0], -a)
                    else:
                        _, bn, bd = best
                        lhs, rhs = row[0] * bd, bn * -a
                        if lhs < rhs or (lhs == rhs and self.basic[i] < self.basic[best[0]]):
                            best = (i, row[0], -a)
            if best is None:
                return None
            obj = self._pivot(best[0], col, obj)
            order = sorted(range(len(self.nonbasic)), key=lambda k: self.nonbasic[k])

    def _phase_one(self) -> bool:
        if self.m == 0:
            self._drop_a0()
            return True
        worst = min(range(self.m), key=lambda i: (self.rows[i][0], i))
        if self.rows[worst][0] >= 0:
            self._drop_a0()
            return True
        self._pivot(worst, self.nonbasic.index(self.a0))
        obj = self._optimize(self._objective_for({self.a0: -1}))
        if obj is None or obj[0][0] < 0:
            return False
        if self.a0 in self.basic:
            r = self.basic.index(self.a0)
            col = next((k for k in range(len(self.nonbasic)) if self.rows[r][k + 1]), None)
            if col is not None:
                self._pivot(r, col)
        self._drop_a0()
        return True

    def _drop_a0(self):
        if self.a0 in self.nonbasic:
            k = self.nonbasic.index(self.a0)
            del self.nonbasic[k]
            for row in self.rows:
                del row[k + 1]
        else:  # basic at value zero with an all-zero row: the row is redundant
            i = self.basic.index(self.a0)
            del self.basic[i], self.rows[i], self.den[i]

    def _objective_for(self, weights: dict[int, int]) -> tuple[list[int], int]:
        K = len(self.nonbasic)
        num = [Fraction(0)] * (K + 1)
        for v, w in weights.items():
            if v in self.nonbasic:
                num[self.nonbasic.index(v) + 1] += w
            else:
                i = self.basic.index(v)
                for k, a in enumerate(self.rows[i]):
                    if a:
                        num[k] += Fraction(w * a, self.den[i])
        den = lcm(*(q.denominator for q in num))
        return _normalize([int(q * den) for q in num], den)

    def maximize(self, c: Sequence[int]) -> Fraction:
        obj = self._optimize(self._objective_for({j: cj for j, cj in enumerate(c) if cj}))
        if obj is None:
            raise UnboundedSystem("linear relaxation is unbounded")
        return Fraction(obj[0][0], obj[1])


def lp_bounds(G: list[list[int]], h: list[int], dim: int | None = None) -> list[tuple[Fraction, Fraction]] | None:
    """Exact [min, max] of each variable over {t : G t <= h}; None if empty.

    ``dim`` is the number of variables; it is needed when G has no rows.
    """
    r = len(G[0]) if G else (dim or 0)
    if G and dim is not None and dim != r:
        raise ValueError(f"rows have {r} columns, expected {dim}")
    if r and not G:
        raise UnboundedSystem("no inequalities bound the variables")
    d = _Dictionary(G, h)
    if not d.feasible:
        return None
    out = []
    for j in range(r):
        e = [0] * r
        e[j] = 1
        hi = d.maximize(e)
        e[j] = -1
        lo = -d.maximize(e)
        out.append((lo, hi))
    return out


# ------------------------------------------------------------ search


def _propagate(rows, box):
    """Tighten integer box against rows (coeffs, lo, hi); False on conflict."""
    changed = True
    while changed:
        changed = False
        for coeffs, lo, hi in rows:
            mins = maxs = 0
            for (j, a) in coeffs:
                l, u = box[j]
                if a > 0:
                    mins += a * l
                    maxs += a * u
                else:
                    mins += a * u
                    maxs += a * l
            if (hi is not None and mins > hi) or (lo is not None and maxs < lo):
                return False
            for (j, a) in coeffs:
                l, u = box[j]
                if l == u:
                    continue
                if a > 0:
                    rest_min = mins - a * l
                    rest_max = maxs - a * u
                    nu = (hi - rest_min) // a if hi is not None else u
                    nl = -((rest_max - lo) // a) if lo is not None else l
                else:
                    rest_min = mins - a * u
                    rest_max = maxs - a * l
                    # a*t >= lo - rest_max  ->  t <= (rest_max - lo)/(-a)
                    nu = (rest_max - lo) // (-a) if lo is not None else u
                    nl = -((hi - rest_min) // (-a)) if hi is not None else l
                nl, nu = max(l, nl), min(u, nu)
                if nl > nu:
                    return False
                if (nl, nu) != (l, u):
                    box[j] = (nl, nu)
                    changed = True
                    if a > 0:
                        mins += a * (nl - l)
                        maxs += a * (nu - u)
                    else:
                        mins += a * (nu - u)
                        maxs += a * (nl - l)
    return True


def _search(rows, box, out):
    if not _propagate(rows, box):
        return
    free = [j for j, (l, u) in enumerate(box) if l < u]
    if not free:
        out.append(tuple(l for l, _ in box))
        return
    j = min(free, key=lambda j: (box[j][1] - box[j][0], j))
    l, u = box[j]
    for v in range(l, u + 1):
        nb = list(box)
        nb[j] = (v, v)
        _search(rows, nb, out)


@dataclass
class PreparedSystem:
    """Integrality solved: forms become integer rows over lattice coordinates."""

    system: ConstraintSystem
    lattice: AffineLattice | None
    rows: list  # (sparse integer coeffs, lo, hi) over t


def solve_integrality(S: ConstraintSystem) -> AffineLattice | None:
    """The affine lattice of integer x meeting all equalities and integrality conditions."""
    lat = AffineLattice(S.dim)
    for a, c in S.equalities:
        if not lat.impose_equality(a, c):
            return None
    for f in S.forms:
        if not lat.impose_integral(f.coeffs, f.const):
            return None
    return lat


def prepare(S: ConstraintSystem, reduced_basis: list[list[int]] | None = None) -> PreparedSystem:
    """Solve the integrality part of S and express its inequalities over the lattice.

    ``reduced_basis`` may supply an already reduced basis (rows = points) of the
    homogeneous lattice, which does not depend on the constants of the forms.
    """
    lat = solve_integrality(S)
    if lat is None:
        return PreparedSystem(S, None, [])
    if reduced_basis is not None:
        if len(reduced_basis) != lat.rank:
            raise AssertionError("supplied basis has the wrong rank")
        lat.B = [list(r) for r in zip(*reduced_basis)] if reduced_basis else [[] for _ in range(S.dim)]
        if lat.rank:
            lat.x0 = _size_reduce(lat.x0, [list(c) for c in reduced_basis])
    else:
        lat.reduce()
    rows = _lattice_rows(S, lat)
    if rows is None:
        return PreparedSystem(S, None, [])
    return PreparedSystem(S, lat, rows)


def _lattice_rows(S: ConstraintSystem, lat: AffineLattice):
    r = lat.rank
    merged: dict[tuple, list] = {}
    for f in S.forms:
        if not f.nonneg and f.upper is None:
            continue
        m = [sum((c * row[j] for c, row in zip(f.coeffs, lat.B) if c), Fraction(0)) for j in range(r)]
        m0 = f.value(lat.x0)
        if m0.denominator != 1 or any(q.denominator != 1 for q in m):
            raise AssertionError("form is not integral on its lattice")
        m = [int(q) for q in m]
        lo = -int(m0) if f.nonneg else None
        hi = int(f.upper - m0) if f.upper is not None else None
        g = 0
        for v in m:
            g = gcd(g, v)
        if g == 0:
            if (lo is not None and lo > 0) or (hi is not None and hi < 0):
                return None
            continue
        m = [v // g for v in m]
        lo = None if lo is None else ceil(Fraction(lo, g))
        hi = None if hi is None else floor(Fraction(hi, g))
        first = next(v for v in m if v)
        if first < 0:
            m = [-v for v in m]
            lo, hi = (None if hi is None else -hi), (None if lo is None else -lo)
        key = tuple(m)
        cur = merged.get(key)
        if cur is None:
            merged[key] = [lo, hi]
        else:
            if lo is not None:
                cur[0] = lo if cur[0] is None else max(cur[0], lo)
            if hi is not None:
                cur[1] = hi if cur[1] is None else min(cur[1], hi)
    rows = []
    for key, (lo, hi) in merged.items():
        if lo is not None and hi is not None and lo > hi:
            return None
        rows.append((tuple((j, a) for j, a in enumerate(key) if a), lo, hi))
    rows.sort()
    return rows


def search_prepared(P: PreparedSystem, first_only: bool = False) -> list[tuple[int, ...]]:
    if P.lattice is None:
        return []
    lat, rows = P.lattice, P.rows
    r = lat.rank
    if r == 0:
        pts = [lat.point(())]
    else:
        G, h = [], []
        for coeffs, lo, hi in rows:
            dense = [0] * r
            for j, a in coeffs:
                dense[j] = a
            if hi is not None:
                G.append(dense)
                h.append(hi)
            if lo is not None:
                G.append([-a for a in dense])
                h.append(-lo)
        bounds = lp_bounds(G, h, r)
        if bounds is None:
            return []
        box = [(ceil(lo), floor(hi)) for lo, hi in bounds]
        if any(l > u for l, u in box):
            return []
        ts: list[tuple[int, ...]] = []
        _search(rows, box, ts)
        pts = [lat.point(t) for t in ts]
    pts = sorted(set(p for p in pts if P.system.satisfied_by(p)))
    return pts[:1] if first_only else pts


def enumerate_integer_points(S: ConstraintSystem, reduced_basis: list[list[int]] | None = None) -> list[tuple[int, ...]]:
    """All integer vectors satisfying ``S``, sorted lexicographically.

    Raises UnboundedSystem if the inequalities leave some direction free.
    """
    return search_prepared(prepare(S, reduced_basis))


def homogeneous_basis(S: ConstraintSystem) -> list[list[int]] | None:
    """Reduced basis (list of vectors) of the lattice of differences of solutions of S.

    Independent of the constants of the forms and equalities; None if S has no
    integral point at all.
    """
    lat = solve_integrality(S)
    if lat is None:
        return None
    lat.reduce()
    return [list(c) for c in zip(*lat.B)] if lat.rank else []


def brute_force_points(S: ConstraintSystem, box: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Reference enumeration: test every integer vector in ``box`` directly."""
    import itertools

    ranges = [range(lo, hi + 1) for lo, hi in box]
    return sorted(p for p in itertools.product(*ranges) if S.satisfied_by(p))


class CongruenceScreen:
    """Solvability test for ``A y + c = 0 (mod n)`` over many right-hand sides.

    ``A`` is diagonalized over Z/n by unimodular row and column operations,
    ``U A V = diag(d_1, ..., d_r, 0, ...)``.  A solution exists iff
    ``gcd(d_i, n)`` divides ``(U c)_i`` for every row ``i`` (with ``d_i = 0``
    for rows past the rank).  Only the rows of ``U`` and their moduli are kept.
    """

    def __init__(self, A: Sequence[Sequence[int]], modulus: int):
        n = modulus
        m = len(A)
        k = len(A[0]) if m else 0
        M = [[a % n for a in row] for row in A]
        U = [[int(i == j) for j in range(m)] for i in range(m)]
        diag = []
        t = 0
        while t < min(m, k):
            piv = None
            for i in range(t, m):
                for j in range(t, k):
                    if M[i][j]:
                        key = (gcd(M[i][j], n), i, j)
                        if piv is None or key < piv:
                            piv = key
            if piv is None:
                break
            _, i, j = piv
            M[t], M[i] = M[i], M[t]
            U[t], U[i] = U[i], U[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
            self._clear(M, U, t, n)
            diag.append(M[t][t])
            t += 1
        self.modulus = n
        self.checks: list[tuple[tuple[int, ...], int]] = []
        for i in range(m):
            g = gcd(diag[i], n) if i < len(diag) else n
            if g > 1:
                self.checks.append((tuple(U[i]), g))

    @staticmethod
    def _unit_for(a: int, n: int) -> int:
        """A unit u mod n with a*u = gcd(a, n) (mod n)."""
        g = gcd(a, n)
        m = n // g
        u = pow(a // g, -1, m) if m > 1 else 1
        while gcd(u, n) != 1:
            u += m
        return u % n

    def _clear(self, M, U, t, n):
        """Zero row t and column t of M outside the pivot, tracking row ops in U."""
        m, k = len(M), len(M[0])
        while True:
            u = self._unit_for(M[t][t], n)
            if u != 1:
                M[t] = [(u * v) % n for v in M[t]]
                U[t] = [(u * v) % n for v in U[t]]
            g = M[t][t]
            restart = False
            for i in range(t + 1, m):
                b = M[i][t]
                if not b:
                    continue
                if b % g == 0:
                    f = b // g
                    for R in (M, U):
                        R[i] = [(q - f * p) % n for p, q in zip(R[t], R[i])]
                else:
                    _, x, y = _egcd(g, b)
                    h = gcd(g, b)
                    for R in (M, U):
                        rt, ri = R[t], R[i]
                        R[t] = [(x * p + y * q) % n for p, q in zip(rt, ri)]
                        R[i] = [(-(b // h) * p + (g // h) * q) % n for p, q in zip(rt, ri)]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, k):
                b = M[t][j]
                if not b:
                    continue
                if b % g == 0:
                    f = b // g
                    for row in M:
                        row[j] = (row[j] - f * row[t]) % n
                else:
                    _, x, y = _egcd(g, b)
                    h = gcd(g, b)
                    for row in M:
                        p, q = row[t], row[j]
                        row[t], row[j] = (x * p + y * q) % n, (-(b // h) * p + (g // h) * q) % n
                    restart = True
                    break
            if not restart:
                return

    def feasible(self, c: Sequence[int]) -> bool:
        return all(sum(u * v for u, v in zip(row, c) if u) % g == 0 for row, g in self.checks)

    def project(self, M: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
        """Images ``U_i M`` of a matrix (rows indexed like ``c``) under each check row."""
        cols = list(zip(*M)) if M else []
        return [tuple(sum(u * v for u, v in zip(row, col) if u) % g for col in cols) for row, g in self.checks]
