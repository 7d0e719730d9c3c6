"""Lie-algebra cohomology with rational coefficients: the exterior cochain
complex, Betti numbers, cup products on chosen representatives, symplectic
checks, and the Hard Lefschetz test.

The differential on dual generators is d(e*_k)(X_i, X_j) = -e*_k([X_i, X_j]),
extended as a degree-1 antiderivation.  Degree bases are ordered
lexicographically by index tuples, so every matrix is reproducible
bit-for-bit.  Computing over Q loses nothing here: ranks, and hence Betti
numbers and Lefschetz isomorphisms, are invariant under field extension.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import MatrixQ, Q, mat_kernel, mat_rank, rref
from .liealg import LieAlgebra, weight_system


# ---------------------------------------------------------------------------
# exterior algebra helpers
# ---------------------------------------------------------------------------

def _wedge_tuples(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two strictly increasing index tuples; returns (sign, merged) or
    None when an index repeats."""
    merged = list(a)
    sign = 1
    for x in b:
        if x in merged:
            return None
        # count inversions introduced by inserting x
        pos = 0
        while pos < len(merged) and merged[pos] < x:
            pos += 1
        sign *= (-1) ** (len(merged) - pos)
        merged.insert(pos, x)
    return sign, tuple(merged)


def wedge(u: dict, v: dict) -> dict:
    """Wedge product of multivectors given as {index-tuple: coeff} dicts."""
    out: dict = {}
    for a, ca in u.items():
        for b, cb in v.items():
            r = _wedge_tuples(a, b)
            if r is None:
                continue
            sign, merged = r
            out[merged] = out.get(merged, Q(0)) + sign * ca * cb
    return {k: c for k, c in out.items() if c != 0}


class CochainComplex:
    """Exterior cochain complex of a Lie algebra, with exact differentials.

    ``basis(k)`` lists the degree-k monomials as index tuples; ``d(k)`` is
    the matrix of the differential from degree k to degree k+1.
    """

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        n = algebra.dim
        self._bases = [tuple(itertools.combinations(range(n), k))
                       for k in range(n + 1)]
        self._index = [{mono: i for i, mono in enumerate(rows)}
                       for rows in self._bases]
        # d on dual generators, as multivectors
        self._d1 = []
        for k in range(n):
            terms: dict = {}
            for i in range(n):
                for j in range(i + 1, n):
                    c = algebra.c[i][j][k]
                    if c != 0:
                        terms[(i, j)] = terms.get((i, j), Q(0)) - c
            self._d1.append({m: c for m, c in terms.items() if c != 0})
        self._dmat: dict[int, MatrixQ] = {}

    def basis(self, k: int) -> tuple[tuple[int, ...], ...]:
        return self._bases[k]

    def dim(self, k: int) -> int:
        n = self.algebra.dim
        if k < 0 or k > n:
            return 0
        return len(self._bases[k])

    def d_monomial(self, mono: tuple[int, ...]) -> dict:
        """Differential of a basis monomial, as a multivector dict."""
        out: dict = {}
        for t, gen in enumerate(mono):
            dg = self._d1[gen]
            if not dg:
                continue
            rest = mono[:t] + mono[t + 1:]
            sign = (-1) ** t
            for pair, c in dg.items():
                r = _wedge_tuples(pair, rest)
                if r is None:
                    continue
                s2, merged = r
                out[merged] = out.get(merged, Q(0)) + sign * s2 * c
        return {k_: c for k_, c in out.items() if c != 0}

    def d(self, k: int) -> MatrixQ:
        """Matrix of d: degree k -> degree k+1 in the monomial bases."""
        n = self.algebra.dim
        if k < 0 or k > n:
            raise ValueError(f"degree {k} out of range 0..{n}")
        if k not in self._dmat:
            rows = self.dim(k + 1)
            cols = self.dim(k)
            entries = [[Q(0)] * cols for _ in range(rows)]
            if k < n:
                target = self._index[k + 1]
                for c_idx, mono in enumerate(self._bases[k]):
                    for m, coeff in self.d_monomial(mono).items():
                        entries[target[m]][c_idx] = coeff
            self._dmat[k] = MatrixQ(entries) if rows and cols else MatrixQ.zeros(rows, cols)
        return self._dmat[k]

    def apply_d(self, k: int, vec: Sequence) -> tuple:
        return self.d(k).apply(vec)

    def vector_of(self, k: int, multivector: dict) -> tuple:
        v = [Q(0)] * self.dim(k)
        for mono, c in multivector.items():
            v[self._index[k][mono]] = Q(c)
        return tuple(v)

    def multivector_of(self, k: int, vec: Sequence) -> dict:
        return {mono: Q(c) for mono, c in zip(self._bases[k], vec) if c != 0}


def ce_differential(L: LieAlgebra, k: int) -> MatrixQ:
    """Matrix of the degree-k differential of L's exterior complex."""
    return CochainComplex(L).d(k)


def betti(L: LieAlgebra) -> tuple[int, ...]:
    """Exact Betti numbers b_0 .. b_dim over Q."""
    cx = CochainComplex(L)
    n = L.dim
    ranks = [mat_rank(cx.d(k)) for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        ker = cx.dim(k) - ranks[k]
        img = ranks[k - 1] if k > 0 else 0
        out.append(ker - img)
    return tuple(out)


# ---------------------------------------------------------------------------
# two-forms
# ---------------------------------------------------------------------------

class TwoForm:
    """Element of wedge^2 of the dual space, keyed by dual-label pairs."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: LieAlgebra, coeffs: dict):
        self.algebra = algebra
        clean: dict = {}
        for (a, b), c in coeffs.items():
            i, j = algebra.index(a), algebra.index(b)
            c = Q(c)
            if i == j:
                raise ValueError(f"degenerate pair {a}^{a}")
            if i > j:
                i, j, c = j, i, -c
            key = (algebra.labels[i], algebra.labels[j])
            clean[key] = clean.get(key, Q(0)) + c
        self.coeffs = {k: c for k, c in clean.items() if c != 0}

    @classmethod
    def parse(cls, text: str, algebra: LieAlgebra) -> "TwoForm":
        """Parse e.g. ``A^B + X1^Z1 + 2*X2^Z2 - 1/2*X3^Z3``."""
        coeffs: dict = {}
        body = text.replace("omega", "").lstrip(" =")
        for piece in _signed_pieces(body):
            sign = -1 if piece.startswith("-") else 1
            body_term = piece.lstrip("+-").strip()
            coeff = Q(sign)
            if "*" in body_term:
                head, _, tail = body_term.partition("*")
                coeff *= Fraction(head.strip())
                body_term = tail.strip()
            try:
                a, b = (s.strip() for s in body_term.split("^"))
            except ValueError:
                raise ValueError(f"bad two-form term {piece!r}")
            coeffs[(a, b)] = coeffs.get((a, b), Q(0)) + coeff
        return cls(algebra, coeffs)

    def to_multivector(self) -> dict:
        return {(self.algebra.index(a), self.algebra.index(b)): c
                for (a, b), c in self.coeffs.items()}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b), c in sorted(self.coeffs.items(),
                                key=lambda kv: (self.algebra.index(kv[0][0]),
                                                self.algebra.index(kv[0][1]))):
            frag = f"{a}^{b}" if c == 1 else (f"-{a}^{b}" if c == -1 else f"{c}*{a}^{b}")
            parts.append(frag)
        return " + ".join(parts).replace("+ -", "- ")


def _signed_pieces(text: str):
    out = []
    current = ""
    for ch in text:
        if ch in "+-" and current.strip():
            out.append(current.strip())
            current = ch
        else:
            current += ch
    if current.strip():
        out.append(current.strip())
    return out


def standard_omega(L: LieAlgebra) -> TwoForm:
    """The canonical symplectic candidate A^B + sum X_i ^ Z_i for the
    8-dimensional algebras of the modified family."""
    pairs = {("A", "B"): 1}
    for i in (1, 2, 3):
        pairs[(f"X{i}", f"Z{i}")] = 1
    return TwoForm(L, pairs)


# ---------------------------------------------------------------------------
# the cohomology ring
# ---------------------------------------------------------------------------

class CohomologyRing:
    """Cocycle representatives per degree with cup products reduced back to
    representative coordinates."""

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self.complex = CochainComplex(algebra)
        n = algebra.dim
        self._reps: list[list[tuple]] = []
        self._solvers: list = []
        for k in range(n + 1):
            kernel = mat_kernel(self.complex.d(k))
            if k == 0:
                # constants: kernel of d0 is everything closed in degree 0
                boundary_cols: list = []
            else:
                dk_1 = self.complex.d(k - 1)
                boundary_cols = [dk_1.column(j) for j in range(dk_1.cols)]
            reps = _complete_basis(boundary_cols, kernel, self.complex.dim(k))
            self._reps.append(reps)
            self._solvers.append((reps, boundary_cols))

    def betti(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self._reps)

    def representatives(self, k: int) -> list[tuple]:
        """Chosen cocycle representatives for H^k (cochain coordinates)."""
        return list(self._reps[k])

    def reduce(self, k: int, cocycle: Sequence) -> tuple:
        """Coordinates of a closed k-cochain in the chosen representatives,
        modulo coboundaries."""
        vec = tuple(Q(x) for x in cocycle)
        if any(self.complex.apply_d(k, vec)):
            raise ValueError("cochain is not closed")
        reps, boundaries = self._solvers[k]
        cols = [list(r) for r in reps] + [list(b) for b in boundaries]
        if not cols:
            if any(vec):
                raise ValueError("nonzero cocycle in zero cohomology")
            return ()
        # solve  [reps | boundaries] x = vec  exactly via RREF of [A | vec]
        rows = [list(row) for row in zip(*cols)]
        for r, val in zip(rows, vec):
            r.append(val)
        reduced, pivots = rref(MatrixQ(rows))
        ncols = len(cols)
        if ncols in pivots:
            raise ValueError("inconsistent reduction (not a cocycle?)")
        sol = [Q(0)] * ncols
        for r, p in enumerate(pivots):
            sol[p] = reduced.entries[r][ncols]
        return tuple(sol[:len(reps)])

    def class_vector(self, k: int, coords: Sequence) -> tuple:
        """Representative cocycle of the class with the given coordinates."""
        reps = self._reps[k]
        out = [Q(0)] * self.complex.dim(k)
        for c, rep in zip(coords, reps):
            for i, x in enumerate(rep):
                out[i] += Q(c) * x
        return tuple(out)

    def cup(self, p: int, a_coords: Sequence, q: int, b_coords: Sequence) -> tuple:
        """Cup product H^p x H^q -> H^(p+q) on representative coordinates."""
        if p + q > self.algebra.dim:
            raise ValueError("degree overflow")
        va = self.complex.multivector_of(p, self.class_vector(p, a_coords))
        vb = self.complex.multivector_of(q, self.class_vector(q, b_coords))
        product = wedge(va, vb)
        return self.reduce(p + q, self.complex.vector_of(p + q, product))

    def class_of_form(self, omega: TwoForm) -> tuple:
        return self.reduce(2, self.complex.vector_of(2, omega.to_multivector()))


def _complete_basis(boundary_cols, kernel, ambient_dim) -> list[tuple]:
    """Vectors from ``kernel`` extending the span of ``boundary_cols``;
    greedy selection keeps the choice deterministic."""
    rows = [list(b) for b in boundary_cols]
    chosen = []
    base_rank = mat_rank(MatrixQ(rows)) if rows else 0
    for v in kernel:
        trial = rows + [list(v)]
        r = mat_rank(MatrixQ(trial))
        if r > base_rank + len(chosen):
            chosen.append(tuple(v))
            rows = trial
    return chosen


# ---------------------------------------------------------------------------
# symplectic structure and Hard Lefschetz
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticCheck:
    closed: bool
    nondegenerate: bool

    @property
    def symplectic(self) -> bool:
        return self.closed and self.nondegenerate


def symplectic_check(L: LieAlgebra, omega: TwoForm) -> SymplecticCheck:
    """closed: d(omega) = 0; nondegenerate: omega^(dim/2) != 0 in top degree."""
    if L.dim % 2:
        raise ValueError("symplectic check needs even dimension")
    cx = CochainComplex(L)
    vec = cx.vector_of(2, omega.to_multivector())
    closed = not any(cx.apply_d(2, vec))
    power = omega.to_multivector()
    for _ in range(L.dim // 2 - 1):
        power = wedge(power, omega.to_multivector())
    return SymplecticCheck(closed, bool(power))


@dataclass(frozen=True)
class LefschetzResult:
    holds: bool
    failing_degree: int | None = None


def hard_lefschetz(L: LieAlgebra, omega: TwoForm) -> LefschetzResult:
    """For n = dim/2 and k = 1..n, test that cupping with [omega]^k is an
    isomorphism H^(n-k) -> H^(n+k).  Requires omega closed."""
    check = symplectic_check(L, omega)
    if not check.closed:
        raise ValueError("omega is not closed; its class is undefined")
    ring = CohomologyRing(L)
    b = ring.betti()
    n = L.dim // 2
    omega_class = ring.class_of_form(omega)
    # [omega]^k as coordinates in H^(2k)
    power = omega_class
    powers = {1: power}
    for k in range(2, n + 1):
        power = ring.cup(2 * (k - 1), power, 2, omega_class)
        powers[k] = power
    for k in range(1, n + 1):
        lo, hi = n - k, n + k
        if b[lo] != b[hi]:
            return LefschetzResult(False, k)
        if b[lo] == 0:
            continue
        cols = []
        for rep_coords in _unit_vectors(b[lo]):
            cols.append(ring.cup(lo, rep_coords, 2 * k, powers[k]))
        m = MatrixQ(list(zip(*cols)))
        if mat_rank(m) != b[lo]:
            return LefschetzResult(False, k)
    return LefschetzResult(True, None)


def _unit_vectors(n: int):
    for i in range(n):
        yield tuple(Q(1) if j == i else Q(0) for j in range(n))


def cup_welldefined_spot_check(L: LieAlgebra, seed: int = 0, trials: int = 5) -> bool:
    """Perturb cup-product inputs by random coboundaries and compare the
    reduced outputs; a sanity property, not a proof."""
    ring = CohomologyRing(L)
    rng = random.Random(seed)
    b = ring.betti()
    cx = ring.complex
    degrees = [k for k in range(1, L.dim) if b[k] > 0]
    for _ in range(trials):
        p = rng.choice(degrees)
        q = rng.choice([k for k in degrees if k + p <= L.dim] or [degrees[0]])
        if p + q > L.dim:
            continue
        a = tuple(Q(rng.randint(-3, 3)) for _ in range(b[p]))
        c = tuple(Q(rng.randint(-3, 3)) for _ in range(b[q]))
        base = ring.cup(p, a, q, c)
        # perturb a's representative by a coboundary
        va = list(ring.class_vector(p, a))
        if p >= 1 and cx.dim(p - 1) > 0:
            pert = [Q(rng.randint(-2, 2)) for _ in range(cx.dim(p - 1))]
            for i, x in enumerate(cx.apply_d(p - 1, pert)):
                va[i] += x
        vb = ring.class_vector(q, c)
        prod = wedge(cx.multivector_of(p, va), cx.multivector_of(q, vb))
        again = ring.reduce(p + q, cx.vector_of(p + q, prod))
        if again != base:
            return False
    return True


# ---------------------------------------------------------------------------
# ring comparison against the model Kahler ring
# ---------------------------------------------------------------------------

def kahler_ring_match(L: LieAlgebra, omega: TwoForm) -> dict:
    """Check the computed ring against the ring of the model Kahler space
    (a 2-torus times 3-dimensional complex projective space): exhibit
    degree-1 classes t1, t2 and a degree-2 class h with t1*t2 != 0, h^4 = 0,
    and products t1^e1 t2^e2 h^j spanning every degree.  Reports, never
    forces."""
    ring = CohomologyRing(L)
    b = ring.betti()
    report: dict = {"betti": b, "matches": False}
    if b != (1, 2, 2, 2, 2, 2, 2, 2, 1):
        report["failure"] = "betti numbers differ from the model"
        return report
    t1, t2 = (1, 0), (0, 1)
    t1t2 = ring.cup(1, t1, 1, t2)
    if not any(t1t2):
        report["failure"] = "t1*t2 = 0 in degree 2"
        return report
    w = ring.class_of_form(omega)
    wc = ring.reduce(2, w)
    # adjust h = [omega] + c*t1t2 so that h^4 = 0 (both live in 1-dim H^8)
    def cup2(a, bb, dega, degb):
        return ring.cup(dega, a, degb, bb)
    w2 = cup2(wc, wc, 2, 2)
    w3 = cup2(w2, wc, 4, 2)
    w4 = cup2(w3, wc, 6, 2)
    # (t1t2)^2 = 0, so (w + c t1t2)^4 = w^4 + 4c w^3 t1t2
    m = t1t2
    w3_t1t2 = ring.cup(6, w3, 2, m)
    if not any(w3_t1t2):
        report["failure"] = "omega^3 * t1 * t2 = 0, cannot normalize h"
        return report
    c = -Q(w4[0]) / (4 * Q(w3_t1t2[0]))
    h = tuple(x + c * y for x, y in zip(wc, m))
    report["h_shift"] = str(c)
    h2 = cup2(h, h, 2, 2)
    h3 = cup2(h2, h, 4, 2)
    h4 = cup2(h3, h, 6, 2)
    if any(h4):
        report["failure"] = "h^4 != 0 after normalization"
        return report
    # spanning checks degree by degree
    products = {
        2: [m, h],
        3: [cup2(t1, h, 1, 2), cup2(t2, h, 1, 2)],
        4: [cup2(m, h, 2, 2), h2],
        5: [cup2(t1, h2, 1, 4), cup2(t2, h2, 1, 4)],
        6: [cup2(m, h2, 2, 4), h3],
        7: [cup2(t1, h3, 1, 6), cup2(t2, h3, 1, 6)],
        8: [cup2(m, h3, 2, 6)],
    }
    for k, vecs in products.items():
        if mat_rank(MatrixQ(vecs)) != b[k]:
            report["failure"] = f"products do not span degree {k}"
            return report
    report["matches"] = True
    return report


# ---------------------------------------------------------------------------
# weight-pattern certification for the one-parameter family
# ---------------------------------------------------------------------------

def weight_zero_pattern(l1, l2) -> frozenset:
    """Subsets of the six nilpotent weights (l1, l2, l3, -l1, -l2, -l3) with
    zero sum, as index sets.  Two parameter choices inducing the same
    pattern give weight-graded cochain complexes with identical shapes."""
    l1, l2 = Q(l1), Q(l2)
    l3 = -l1 - l2
    weights = (l1, l2, l3, -l1, -l2, -l3)
    zero_sets = []
    for r in range(len(weights) + 1):
        for combo in itertools.combinations(range(len(weights)), r):
            if sum(weights[i] for i in combo) == 0:
                zero_sets.append(frozenset(combo))
    return frozenset(zero_sets)


def lefschetz_family_certificate(parameter_pairs: Sequence[tuple]) -> dict:
    """Certify Hard Lefschetz for the one-parameter family at several
    rational parameter choices sharing one vanishing pattern of weight sums.

    The ad-A action is diagonal, so the cochain complex splits by total
    weight and its weight-zero part depends only on the vanishing pattern;
    agreement of the pattern across the sample is recorded alongside the
    per-member Lefschetz verdicts.
    """
    from .liealg import modified_family

    if len(parameter_pairs) < 3:
        raise ValueError("need at least three parameter pairs")
    patterns = [weight_zero_pattern(l1, l2) for l1, l2 in parameter_pairs]
    same = all(p == patterns[0] for p in patterns)
    verdicts = []
    for l1, l2 in parameter_pairs:
        L = modified_family(l1, l2)
        result = hard_lefschetz(L, standard_omega(L))
        verdicts.append({"parameters": [str(Q(l1)), str(Q(l2))],
                         "betti": betti(L),
                         "holds": result.holds,
                         "failing_degree": result.failing_degree})
    return {
        "pattern_sizes": [len(p) for p in patterns],
        "patterns_agree": same,
        "members": verdicts,
        "holds_everywhere": same and all(v["holds"] for v in verdicts),
    }
