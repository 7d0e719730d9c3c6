"""Constructs and verifies a lattice in the one-parameter family's group
from an integer cubic x^3 - p x^2 + q x - 1, emitting a re-checkable
certificate.

Coordinates: the nilpotent part is V + wedge^2(V) with V the generator
3-space; the center carries the wedge basis W1 = e2^e3, W2 = e1^e3,
W3 = e1^e2 (so the induced matrix on the center is literally the second
compound).  The log-lattice is Z^3 on V plus (1/2)Z^3 on the center; group
elements multiply by the 2-step product u*v = u + v + [u,v]/2, which is
exact here.  The generator basis (Z1, Z2, Z3) used by the algebra
constructors differs from the wedge basis by diag(1/2, 1, -1); the change
of basis is recorded in every certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import (MatrixQ, Q, RootIsolation, UniPoly, charpoly, isolate_roots,
                    log_enclosure, mat_det, smith_normal_form, sturm_count)

DEFAULT_ROOT_WIDTH = Q(1, 10 ** 8)

# center coordinates are stored in half-units: 1 unit = (1/2) W_i
CENTER_UNIT = Q(1, 2)

# (Z1, Z2, Z3) = (W1/2, W2, -W3): column i is Z_i in wedge coordinates
GENERATOR_CENTER_CHANGE = ((Q(1, 2), 0, 0), (0, 1, 0), (0, 0, -1))


@dataclass(frozen=True)
class CubicSpec:
    """x^3 - p x^2 + q x - 1 with integer p, q."""

    p: int
    q: int

    def polynomial(self) -> UniPoly:
        return UniPoly([-1, self.q, -self.p, 1])

    def mirror(self) -> UniPoly:
        """Characteristic polynomial of the induced center action: the
        elementary symmetric functions swap, giving x^3 - q x^2 + p x - 1."""
        return UniPoly([-1, self.p, -self.q, 1])


@dataclass(frozen=True)
class CubicValidation:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def validate_cubic(p: int, q: int) -> CubicValidation:
    """Accept iff the cubic has three distinct real roots, all positive and
    none equal to 1 (three distinct roots imply squarefree; root 1 would
    give a zero logarithm weight)."""
    spec = CubicSpec(int(p), int(q))
    f = spec.polynomial()
    if p == q:
        return CubicValidation(False, "f(1) = 0: root 1 gives a zero weight")
    from .exact import cauchy_root_bound
    bound = cauchy_root_bound(f)
    total = sturm_count(f, -bound, bound)
    if total != 3:
        return CubicValidation(False,
                               f"{total} distinct real roots; need 3")
    positive = sturm_count(f, 0, bound)
    if positive != 3:
        return CubicValidation(False, "roots must all be positive")
    return CubicValidation(True)


def companion(p: int, q: int) -> MatrixQ:
    """Integer companion matrix of x^3 - p x^2 + q x - 1 (determinant 1)."""
    check = validate_cubic(p, q)
    if not check:
        raise ValueError(f"invalid cubic: {check.reason}")
    return MatrixQ([[0, 0, 1], [1, 0, -q], [0, 1, p]])


def compound2(c: MatrixQ) -> MatrixQ:
    """Second compound: the induced matrix on wedge^2 in the basis
    (e2^e3, e1^e3, e1^e2).  Entries are 2x2 minors, so integer matrices map
    to integer matrices; functorial by the Cauchy-Binet identity."""
    if not c.is_square or c.rows != 3:
        raise ValueError("second compound implemented for 3x3 input")
    pairs = ((1, 2), (0, 2), (0, 1))
    entries = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            row.append(c[i, k] * c[j, l] - c[i, l] * c[j, k])
        entries.append(row)
    return MatrixQ(entries)


def wedge3(a: Sequence, b: Sequence) -> tuple:
    """a ^ b in the wedge basis (e2^e3, e1^e3, e1^e2)."""
    a = [Q(x) for x in a]
    b = [Q(x) for x in b]
    return (a[1] * b[2] - a[2] * b[1],
            a[0] * b[2] - a[2] * b[0],
            a[0] * b[1] - a[1] * b[0])


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightData:
    """The three logarithmic weights of a validated cubic, as certified
    facts about the roots plus display-quality enclosures."""

    cubic: CubicSpec
    roots: RootIsolation
    log_enclosures: tuple[tuple[Fraction, Fraction], ...]
    sum_is_zero: bool          # exact: the roots multiply to 1
    all_nonzero: bool          # exact: no root equals 1
    pairwise_distinct: bool    # exact: three isolating intervals
    multiplicative_independence_advisory: bool  # numeric, not certified

    def approx(self) -> tuple[float, ...]:
        return tuple(float((lo + hi) / 2) for lo, hi in self.log_enclosures)


def weights_from_cubic(p: int, q: int,
                       width=DEFAULT_ROOT_WIDTH) -> WeightData:
    """Root isolations and logarithm enclosures for the cubic's weights.

    The exact facts (sum zero, all nonzero, distinct) follow from Vieta and
    validation, not from the enclosures.  The multiplicative-independence
    flag is a float-level advisory only; certifying it would need a
    regulator bound, which is out of scope.
    """
    check = validate_cubic(p, q)
    if not check:
        raise ValueError(f"invalid cubic: {check.reason}")
    spec = CubicSpec(int(p), int(q))
    iso = isolate_roots(spec.polynomial(), width)
    if len(iso) != 3:
        raise AssertionError("validated cubic must have three isolated roots")
    encl = []
    series_err = Q(1, 10 ** 9)
    for lo, hi in iso.intervals:
        if lo == hi:
            raise AssertionError("validated cubic cannot have rational roots"
                                 " (they would divide 1)")
        a = log_enclosure(lo, series_err)[0]
        b = log_enclosure(hi, series_err)[1]
        encl.append((a, b))
    import math
    lam = [math.log((lo + hi) / 2) for lo, hi in
           ((float(a), float(b)) for a, b in iso.intervals)]
    independent = True
    for c1 in range(-20, 21):
        for c2 in range(-20, 21):
            if (c1, c2) != (0, 0) and abs(c1 * lam[0] + c2 * lam[1]) < 1e-12:
                independent = False
    return WeightData(
        cubic=spec,
        roots=iso,
        log_enclosures=tuple(encl),
        sum_is_zero=True,        # product of roots is the constant term 1
        all_nonzero=True,        # validate_cubic excludes the root 1
        pairwise_distinct=True,  # three disjoint isolating intervals
        multiplicative_independence_advisory=independent,
    )


# ---------------------------------------------------------------------------
# the lattice certificate
# ---------------------------------------------------------------------------

def _generators() -> list[tuple[tuple, tuple]]:
    """The six lattice generators as (V part, center part in half-units)."""
    gens = []
    for i in range(3):
        v = [0, 0, 0]
        v[i] = 1
        gens.append((tuple(v), (0, 0, 0)))
    for i in range(3):
        z = [0, 0, 0]
        z[i] = 1
        gens.append(((0, 0, 0), tuple(z)))
    return gens


def group_product(x, y):
    """2-step product: (v1, z1)(v2, z2) = (v1+v2, z1+z2+ (v1^v2)/2), with
    center coordinates in half-units so the correction is v1^v2 itself."""
    v1, z1 = x
    v2, z2 = y
    w = wedge3(v1, v2)
    v = tuple(Q(a) + Q(b) for a, b in zip(v1, v2))
    # half-unit coordinates: (1/2) w in W-units equals w in half-units
    z = tuple(Q(a) + Q(b) + c for a, b, c in zip(z1, z2, w))
    return (v, z)


def group_inverse(x):
    v, z = x
    return (tuple(-Q(a) for a in v), tuple(-Q(a) for a in z))


def group_commutator(x, y):
    """x y x^-1 y^-1; exactly exp([u, v]) in a 2-step group."""
    return group_product(group_product(x, y),
                         group_product(group_inverse(x), group_inverse(y)))


def _is_lattice_point(x) -> bool:
    v, z = x
    return all(Q(a).denominator == 1 for a in v) and \
        all(Q(a).denominator == 1 for a in z)


@dataclass
class LatticeCertificate:
    """Everything needed to re-verify the construction from scratch."""

    cubic: CubicSpec
    roots: tuple[tuple[Fraction, Fraction], ...]
    C: MatrixQ                      # integer action on V
    C2: MatrixQ                     # integer action on the center (wedge basis)
    center_unit: Fraction           # lattice center scale, in wedge units
    generator_center_change: tuple  # (Z1,Z2,Z3) in wedge coordinates
    closure: tuple                  # ((left, right, product) coordinate triples)
    prop1_index: int

    def to_dict(self) -> dict:
        def frac(x):
            return str(Q(x))

        def vec(v):
            return [frac(a) for a in v]

        return {
            "cubic": {"p": self.cubic.p, "q": self.cubic.q},
            "roots": [[frac(lo), frac(hi)] for lo, hi in self.roots],
            "C": [[int(a) for a in row] for row in self.C.entries],
            "C2": [[int(a) for a in row] for row in self.C2.entries],
            "lambda_basis": {
                "center_unit": frac(self.center_unit),
                "generator_center_change":
                    [vec(col) for col in self.generator_center_change],
            },
            "closure": [
                {"left": [vec(l[0]), vec(l[1])],
                 "right": [vec(r[0]), vec(r[1])],
                 "product": [vec(p[0]), vec(p[1])]}
                for (l, r, p) in self.closure
            ],
            "prop1_index": self.prop1_index,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "LatticeCertificate":
        def fr(s):
            return Fraction(s)

        def vec(v):
            return tuple(fr(a) for a in v)

        return cls(
            cubic=CubicSpec(int(d["cubic"]["p"]), int(d["cubic"]["q"])),
            roots=tuple((fr(lo), fr(hi)) for lo, hi in d["roots"]),
            C=MatrixQ(d["C"]),
            C2=MatrixQ(d["C2"]),
            center_unit=fr(d["lambda_basis"]["center_unit"]),
            generator_center_change=tuple(
                vec(col) for col in d["lambda_basis"]["generator_center_change"]),
            closure=tuple(
                ((vec(e["left"][0]), vec(e["left"][1])),
                 (vec(e["right"][0]), vec(e["right"][1])),
                 (vec(e["product"][0]), vec(e["product"][1])))
                for e in d["closure"]),
            prop1_index=int(d["prop1_index"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "LatticeCertificate":
        return cls.from_dict(json.loads(text))


def build_lattice(p: int, q: int, width=DEFAULT_ROOT_WIDTH) -> LatticeCertificate:
    """Build the certificate: companion action, second compound, log-lattice
    closure under the 2-step product, generator invariance, and the
    commutator-span index inside the center lattice."""
    check = validate_cubic(p, q)
    if not check:
        raise ValueError(f"invalid cubic: {check.reason}")
    spec = CubicSpec(int(p), int(q))
    weights = weights_from_cubic(p, q, width)
    c = companion(p, q)
    c2 = compound2(c)

    gens = _generators()
    elements = gens + [group_inverse(g) for g in gens]
    closure = []
    for x in elements:
        for y in elements:
            prod = group_product(x, y)
            comm = group_commutator(x, y)
            if not (_is_lattice_point(prod) and _is_lattice_point(comm)):
                raise AssertionError(
                    "closure failed; certificate withheld (builder bug)")
            closure.append((x, y, prod))

    prop1 = _commutator_index(gens)

    return LatticeCertificate(
        cubic=spec,
        roots=weights.roots.intervals,
        C=c,
        C2=c2,
        center_unit=CENTER_UNIT,
        generator_center_change=GENERATOR_CENTER_CHANGE,
        closure=tuple(closure),
        prop1_index=prop1,
    )


def _commutator_index(gens) -> int:
    """Index of the span of pairwise group commutators inside the center
    lattice, via the Smith normal form."""
    rows = []
    for x, y in combinations(gens, 2):
        _, z = group_commutator(x, y)
        if any(z):
            rows.append([int(a) for a in z])
    if not rows:
        return 0
    d, _, _ = smith_normal_form(MatrixQ(rows))
    nonzero = [x for x in d if x != 0]
    if len(nonzero) < 3:
        return 0
    index = 1
    for x in nonzero:
        index *= x
    return index


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failed_check: str | None = None

    def __bool__(self):
        return self.ok


def verify_certificate(cert: LatticeCertificate) -> VerifyResult:
    """Re-run every invariant from the raw certificate data only."""
    spec = cert.cubic
    f = spec.polynomial()

    check = validate_cubic(spec.p, spec.q)
    if not check:
        return VerifyResult(False, "cubic_valid")

    # roots: three disjoint intervals, each with a sign change
    if len(cert.roots) != 3:
        return VerifyResult(False, "roots_count")
    spans = sorted(cert.roots)
    for i, (lo, hi) in enumerate(spans):
        if not (lo < hi and f(lo) * f(hi) < 0):
            return VerifyResult(False, "roots_sign_change")
        if i and spans[i - 1][1] >= lo:
            return VerifyResult(False, "roots_disjoint")

    if not cert.C.is_integral():
        return VerifyResult(False, "C_integral")
    if charpoly(cert.C) != f:
        return VerifyResult(False, "C_charpoly")
    if mat_det(cert.C) != 1:
        return VerifyResult(False, "C_determinant")

    if not cert.C2.is_integral():
        return VerifyResult(False, "C2_integral")
    if cert.C2 != compound2(cert.C):
        return VerifyResult(False, "C2_compound_identity")
    if charpoly(cert.C2) != spec.mirror():
        return VerifyResult(False, "C2_charpoly")
    if mat_det(cert.C2) != 1:
        return VerifyResult(False, "C2_determinant")

    # basis bookkeeping
    if cert.center_unit != CENTER_UNIT:
        return VerifyResult(False, "center_unit")
    if tuple(tuple(Q(x) for x in col) for col in cert.generator_center_change) \
            != tuple(tuple(Q(x) for x in col) for col in GENERATOR_CENTER_CHANGE):
        return VerifyResult(False, "generator_center_change")

    # closure witnesses: recompute every recorded product
    gens = _generators()
    elements = gens + [group_inverse(g) for g in gens]
    expected = {}
    for x in elements:
        for y in elements:
            expected[(x, y)] = group_product(x, y)
    seen = set()
    for (x, y, prod) in cert.closure:
        key = (x, y)
        if key not in expected:
            return VerifyResult(False, "closure_unknown_pair")
        if expected[key] != prod or not _is_lattice_point(prod):
            return VerifyResult(False, "closure")
        if not _is_lattice_point(group_commutator(x, y)):
            return VerifyResult(False, "closure_commutator")
        seen.add(key)
    if len(seen) != len(expected):
        return VerifyResult(False, "closure_incomplete")

    # gamma invariance: integer matrices of determinant 1 act bijectively on
    # Z^3 x Z^3 (half-unit coordinates); bracket compatibility is the
    # compound identity C2(u ^ v) = Cu ^ Cv, checked on the basis
    for i in range(3):
        for j in range(3):
            ei = tuple(Q(1) if t == i else Q(0) for t in range(3))
            ej = tuple(Q(1) if t == j else Q(0) for t in range(3))
            lhs = cert.C2.apply(wedge3(ei, ej))
            rhs = wedge3(cert.C.apply(ei), cert.C.apply(ej))
            if tuple(lhs) != tuple(rhs):
                return VerifyResult(False, "gamma_bracket_compatibility")

    if _commutator_index(gens) != cert.prop1_index or cert.prop1_index <= 0:
        return VerifyResult(False, "prop1_index")

    return VerifyResult(True)
