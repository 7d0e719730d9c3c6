"""Exact arithmetic kernel: rational matrices, integer normal forms, and
univariate real-root machinery.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.  No floating
point enters any certified computation; floats appear only in display
helpers such as :func:`RootIsolation.approx`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Q = Fraction


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class MatrixQ:
    """Dense matrix over the rationals (row-major, immutable)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        self.entries = tuple(tuple(Q(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else (cols or 0)
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, diag: Sequence) -> "MatrixQ":
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def column(self, j: int):
        return tuple(r[j] for r in self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixQ) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return MatrixQ([[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        return self + (-other)

    def __neg__(self) -> "MatrixQ":
        return MatrixQ([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "MatrixQ":
        c = Q(c)
        return MatrixQ([[c * a for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, MatrixQ):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
            return MatrixQ([[sum((a * b for a, b in zip(row, col)), Q(0))
                             for col in cols] for row in self.entries],
                           cols=other.cols)
        return self.scale(other)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product, returning a tuple of Fractions."""
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        v = [Q(x) for x in vec]
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def transpose(self) -> "MatrixQ":
        return MatrixQ(list(zip(*self.entries))) if self.rows else MatrixQ([])

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Q(0))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for row in self.entries for a in row)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(a) for a in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in row) for row in self.entries)
        return f"MatrixQ[{self.rows}x{self.cols}: {body}]"


def _clear_row_denominators(row: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for a in row:
        lcm = lcm * a.denominator // gcd(lcm, a.denominator)
    return [int(a * lcm) for a in row]


def _bareiss_forward(rows: list[list[int]]) -> tuple[int, list[int]]:
    """Fraction-free (Bareiss) forward elimination on an integer matrix.

    Returns (rank, pivot column indices).  The divisions below are exact by
    the Bareiss identity, which is what keeps intermediate entries bounded.
    """
    m = [r[:] for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    prev = 1
    pivots = []
    for col in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        pivots.append(col)
        rank += 1
        if rank == n_rows:
            break
    return rank, pivots


def mat_rank(m: MatrixQ) -> int:
    """Rank over the rationals via fraction-free Gaussian elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = [_clear_row_denominators(r) for r in m.entries]
    rank, _ = _bareiss_forward(rows)
    return rank


def rref(m: MatrixQ) -> tuple[MatrixQ, list[int]]:
    """Reduced row echelon form and pivot columns (exact)."""
    rows = [list(r) for r in m.entries]
    n_rows, n_cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [a / inv for a in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return MatrixQ(rows), pivots


def mat_kernel(m: MatrixQ) -> list[tuple[Fraction, ...]]:
    """Exact basis of the null space; has cols - rank(m) elements."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(Q(1) if i == j else Q(0) for i in range(m.cols))
                for j in range(m.cols)]
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Q(0)] * m.cols
        v[f] = Q(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced.entries[r][f]
        basis.append(tuple(v))
    return basis


def mat_det(m: MatrixQ) -> Fraction:
    """Determinant via fraction-free elimination with denominator tracking."""
    if not m.is_square:
        raise ValueError("determinant of non-square matrix")
    if m.rows == 0:
        return Q(1)
    scale = Q(1)
    rows = []
    for r in m.entries:
        ints = _clear_row_denominators(r)
        if any(r):
            # record the factor used to clear this row
            for a, b in zip(r, ints):
                if a != 0:
                    scale *= Q(b) / a
                    break
        rows.append(ints)
    n = m.rows
    sign = 1
    prev = 1
    work = [r[:] for r in rows]
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if work[r][k]), None)
        if piv is None:
            return Q(0)
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                work[r][c] = (work[k][k] * work[r][c] - work[r][k] * work[k][c]) // prev
            work[r][k] = 0
        prev = work[k][k]
    return Q(sign * work[n - 1][n - 1]) / scale


def charpoly(m: MatrixQ) -> "UniPoly":
    """Monic characteristic polynomial det(xI - m), by Faddeev-LeVerrier."""
    if not m.is_square:
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    coeffs_desc = [Q(1)]
    work = MatrixQ.zeros(n, n)
    ck = Q(1)
    ident = MatrixQ.identity(n)
    for k in range(1, n + 1):
        work = m * (work + ident.scale(ck))
        ck = -work.trace() / k
        coeffs_desc.append(ck)
    return UniPoly(list(reversed(coeffs_desc)))


# ---------------------------------------------------------------------------
# Smith normal form (integer matrices)
# ---------------------------------------------------------------------------

def smith_normal_form(m) -> tuple[list[int], MatrixQ, MatrixQ]:
    """Smith normal form of an integer matrix.

    Returns (d, U, V) with U*m*V diagonal, d[0] | d[1] | ..., d[i] >= 0 and
    det(U), det(V) = +-1.  Naive gcd-pivot reduction; inputs here are tiny.
    """
    if not isinstance(m, MatrixQ):
        m = MatrixQ(m)
    a = m.to_int_rows()
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    u = [[1 if i == j else 0 for j in range(n_rows)] for i in range(n_rows)]
    v = [[1 if i == j else 0 for j in range(n_cols)] for i in range(n_cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(n_rows, n_cols):
        # locate a nonzero entry of minimal absolute value in the submatrix
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, n_rows):
            if a[i][t] != 0:
                q, r = divmod(a[i][t], a[t][t])
                add_row(i, t, -q)
                if r != 0:
                    dirty = True
        for j in range(t + 1, n_cols):
            if a[t][j] != 0:
                q, r = divmod(a[t][j], a[t][t])
                add_col(j, t, -q)
                if r != 0:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry for the chain condition
        bad = next(((i, j) for i in range(t + 1, n_rows)
                    for j in range(t + 1, n_cols)
                    if a[i][j] % a[t][t] != 0), None)
        if bad is not None:
            add_row(t, bad[0], 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    d = [a[i][i] for i in range(min(n_rows, n_cols))]
    return d, MatrixQ(u), MatrixQ(v)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Univariate polynomial over the rationals, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls([])

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "UniPoly":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def scale(self, c) -> "UniPoly":
        c = Q(c)
        return UniPoly([c * a for a in self.coeffs])

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading())

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Q(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            quo[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quo), UniPoly(rem)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "UniPoly":
        if self.is_zero:
            return self
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.monic()
        return self.divmod(g)[0].monic()

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: returns [(g_i, multiplicity_i)] with g_i squarefree,
        pairwise coprime, and prod g_i^m_i = monic(self)."""
        if self.is_zero or self.degree == 0:
            return []
        f = self.monic()
        df = f.derivative()
        a = f.gcd(df)
        b = f.divmod(a)[0]
        c = df.divmod(a)[0]
        d = c - b.derivative()
        out = []
        i = 1
        while b.degree > 0:
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g.monic(), i))
            b = b.divmod(g)[0]
            c = d.divmod(g)[0]
            d = c - b.derivative()
            i += 1
        return out

    def clear_denominators(self) -> list[int]:
        """Integer coefficient list (ascending) of the primitive integer
        multiple of self, sign of the leading coefficient preserved."""
        if self.is_zero:
            return []
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        return [c // g for c in ints]

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            term = "x" if i == 1 else (f"x^{i}" if i else "")
            if term and abs(c) == 1:
                cs = "-" if c < 0 else ""
            else:
                cs = str(c)
                if term:
                    cs += "*"
            parts.append(cs + term)
        return "UniPoly(" + " + ".join(parts).replace("+ -", "- ") + ")"


def _sign_variations(values: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of the squarefree part of p."""
    f = p.squarefree_part()
    chain = [f, f.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        chain.append(-(chain[-2].divmod(chain[-1])[1]))
    if chain[-1].is_zero:
        chain.pop()
    return chain


def sturm_count(p: UniPoly, lo, hi) -> int:
    """Exact number of distinct real roots of p in the half-open interval
    (lo, hi].  Squarefree preprocessing is always applied first, so the count
    ignores multiplicities."""
    lo, hi = Q(lo), Q(hi)
    if hi < lo:
        raise ValueError("empty interval")
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return 0
    chain = sturm_chain(p)
    at_lo = _sign_variations([f(lo) for f in chain])
    at_hi = _sign_variations([f(hi) for f in chain])
    return at_lo - at_hi


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """Rational M with every real root of p in (-M, M)."""
    if p.is_zero or p.degree == 0:
        return Q(1)
    lead = abs(p.leading())
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1]) if p.degree else Q(1)


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial, by testing divisor pairs of
    the trailing and leading integer coefficients.  Exact."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    ints = p.clear_denominators()
    roots = set()
    low = 0
    while ints[low] == 0:
        low += 1
    if low > 0:
        roots.add(Q(0))
        ints = ints[low:]
    if len(ints) == 1:
        return sorted(roots)

    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = []
        for d in range(1, int(n ** 0.5) + 1):
            if n % d == 0:
                out.append(d)
                out.append(n // d)
        return sorted(set(out))

    for num in divisors(ints[0]):
        for den in divisors(ints[-1]):
            for cand in (Q(num, den), Q(-num, den)):
                if cand not in roots and p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


class RootIsolation:
    """Isolating intervals for the distinct real roots of a polynomial.

    Intervals are half-open (lo, hi] with rational endpoints, pairwise
    disjoint, each containing exactly one root; an exact rational root is
    stored as the degenerate interval [r, r].  ``multiplicities[i]`` is the
    multiplicity of the i-th root in the original polynomial.
    """

    __slots__ = ("polynomial", "intervals", "multiplicities", "_factors")

    def __init__(self, polynomial, intervals, multiplicities, factors):
        self.polynomial = polynomial
        self.intervals = tuple((Q(a), Q(b)) for a, b in intervals)
        self.multiplicities = tuple(multiplicities)
        self._factors = tuple(factors)

    def __len__(self):
        return len(self.intervals)

    def approx(self) -> tuple[float, ...]:
        """Float midpoints, for display only."""
        return tuple(float((a + b) / 2) for a, b in self.intervals)

    def refine(self, width) -> "RootIsolation":
        width = Q(width)
        new = []
        for (a, b), f in zip(self.intervals, self._factors):
            new.append(_bisect_to_width(f, a, b, width) if f is not None else (a, b))
        return RootIsolation(self.polynomial, new, self.multiplicities, self._factors)

    def __repr__(self):
        spans = ", ".join(f"({a}, {b}]" if a != b else f"[{a}]"
                          for a, b in self.intervals)
        return f"RootIsolation[{spans}]"


def _bisect_to_width(f: UniPoly, a: Fraction, b: Fraction, width: Fraction):
    # f has exactly one (irrational) root in (a, b]; endpoints never hit it
    fa = f(a)
    while b - a > width:
        mid = (a + b) / 2
        fm = f(mid)
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
    return a, b


def isolate_roots(p: UniPoly, width) -> RootIsolation:
    """Isolate every distinct real root of p in disjoint rational intervals
    of length at most ``width``, by Sturm counts and bisection.

    Rational roots are split off exactly first (so bisection midpoints can
    never collide with a remaining root), then each squarefree factor is
    bisected until every interval holds a single sign change.
    """
    width = Q(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p.is_zero:
        raise ValueError("zero polynomial")
    found = []  # (lo, hi, multiplicity, factor-or-None)
    for factor, mult in p.squarefree_decomposition():
        for r in rational_roots(factor):
            factor = factor.divmod(UniPoly([-r, 1]))[0]
            found.append((r, r, mult, None))
        if factor.degree <= 0:
            continue
        bound = cauchy_root_bound(factor)
        stack = [(-bound, bound)]
        while stack:
            a, b = stack.pop()
            k = sturm_count(factor, a, b)
            if k == 0:
                continue
            if k == 1:
                found.append((a, b, mult, factor))
            else:
                mid = (a + b) / 2
                stack.append((a, mid))
                stack.append((mid, b))
    # refine everything to the requested width, then force global disjointness
    items = []
    for a, b, mult, f in found:
        if f is not None:
            a, b = _bisect_to_width(f, a, b, width)
        items.append([a, b, mult, f])
    changed = True
    while changed:
        changed = False
        for x, y in itertools.combinations(items, 2):
            if x[0] < y[1] and y[0] < x[1]:  # overlapping open cores
                for it in (x, y):
                    if it[3] is not None:
                        it[0], it[1] = _bisect_to_width(it[3], it[0], it[1],
                                                        (it[1] - it[0]) / 4)
                changed = True
    items.sort(key=lambda it: (it[0], it[1]))
    return RootIsolation(p,
                         [(a, b) for a, b, _, _ in items],
                         [m for _, _, m, _ in items],
                         [f for _, _, _, f in items])


# ---------------------------------------------------------------------------
# certified logarithm enclosures (used for the weight data of lattices)
# ---------------------------------------------------------------------------

def log_enclosure(x, error) -> tuple[Fraction, Fraction]:
    """Rational interval containing ln(x) for rational x > 0, with width at
    most 2*error.  Uses the atanh series with an explicit geometric tail
    bound, so the enclosure is certified."""
    x = Q(x)
    error = Q(error)
    if x <= 0:
        raise ValueError("log of non-positive number")
    if error <= 0:
        raise ValueError("error must be positive")
    t = (x - 1) / (x + 1)
    if t == 0:
        return (Q(0), Q(0))
    total = Q(0)
    power = t
    t2 = t * t
    k = 0
    while True:
        total += power / (2 * k + 1)
        power *= t2
        k += 1
        tail = 2 * abs(power) / ((2 * k + 1) * (1 - t2))
        if tail <= error:
            break
    s = 2 * total
    return (s - tail, s + tail)
