"""Non-existence pipelines: machine-checkable case analyses ending in
"no lattice" for the two 8-dimensional groups.

The formal unknown z stands for exp(t0) with t0 != 0, so z > 0 and z != 1
throughout; z is never evaluated numerically.  Powers of z are handled as
integer exponents (z^a = z^b iff a = b for z != 1), and every leaf of a
report carries constraints that can be re-checked from the serialized
report alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import Q, UniPoly, isolate_roots, rational_roots, sturm_count
from .liealg import LieAlgebra, Subspace, n3n3, subalgebra_generated, weight_system
from .multipoly import GroebnerBasis, MonomialOrder, MultiPoly, buchberger, normal_form

TRACE_VARIABLES = ("z", "m", "n")


# ---------------------------------------------------------------------------
# characteristic multisets and automorphism patterns
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharMultiset:
    """Multiset of Laurent exponents a, each denoting z^a for a formal
    z > 0, z != 1 (so z^a = z^b iff a = b)."""

    exponents: tuple[int, ...]

    def __init__(self, exponents: Iterable[int]):
        object.__setattr__(self, "exponents", tuple(sorted(int(e) for e in exponents)))

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.exponents)))

    def doubled(self) -> "CharMultiset":
        return CharMultiset(2 * e for e in self.exponents)

    def __str__(self):
        def power(a):
            if a == 0:
                return "1"
            if a == 1:
                return "z"
            if a == -1:
                return "1/z"
            return f"z^{a}" if a > 0 else f"1/z^{-a}"
        return "{" + ", ".join(power(a) for a in self.exponents) + "}"


def char_multiset(w, indices: Sequence[int] | None = None) -> CharMultiset:
    """Exponent multiset of exp(t0 * weights): equals the weight multiset.
    Accepts a WeightSystem or a plain iterable of integer weights."""
    weights = w.weights if hasattr(w, "weights") else tuple(w)
    if indices is not None:
        weights = tuple(weights[i] for i in indices)
    for x in weights:
        if Q(x).denominator != 1:
            raise ValueError(f"non-integer weight {x}")
    return CharMultiset(int(x) for x in weights)


class AutPattern:
    """The eigenvalue pattern {beta, beta, alpha, alpha, alpha*beta,
    alpha*beta} of the reductive automorphisms, as exponent pairs in the two
    unknowns; the third value is always the product of the first two."""

    SLOTS = ((1, 0), (1, 0), (0, 1), (0, 1), (1, 1), (1, 1))

    @classmethod
    def instantiate(cls, b: int, a: int) -> CharMultiset:
        """Exponent multiset with beta = z^b, alpha = z^a."""
        return CharMultiset(i * b + j * a for i, j in cls.SLOTS)


def match_scaling_pattern(target: CharMultiset) -> tuple[int, int] | None:
    """Search for exponents (b, a) drawn from the target's distinct entries
    with pattern multiset equal to the target; None when no assignment
    works.  Complete: if the target was built from some (b, a), both are
    among its entries and the search finds an assignment."""
    for b in target.distinct():
        for a in target.distinct():
            if AutPattern.instantiate(b, a).exponents == target.exponents:
                return (b, a)
    return None


# ---------------------------------------------------------------------------
# trace conditions
# ---------------------------------------------------------------------------

def trace_condition(exponents: Iterable[int], param: str,
                    variables: Sequence[str] | None = None,
                    var: str = "z") -> MultiPoly:
    """The integrality condition sum z^(a_i) = param, cleared to a
    polynomial by multiplying with z^(-min a)."""
    exps = sorted(int(e) for e in exponents)
    if not exps:
        raise ValueError("empty exponent set")
    shift = max(0, -exps[0])
    variables = tuple(variables) if variables else (var, param)
    zi = variables.index(var)
    pi = variables.index(param)
    terms: dict = {}
    for a in exps:
        e = [0] * len(variables)
        e[zi] = a + shift
        terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    e = [0] * len(variables)
    e[zi] = shift
    e[pi] = 1
    terms[tuple(e)] = terms.get(tuple(e), 0) - 1
    return MultiPoly(variables, terms)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

RESOLUTIONS = ("forces z=1", "structurally impossible", "reduces to subcase")


@dataclass
class CaseNode:
    name: str
    constraints: list[str]
    resolution: str
    children: list["CaseNode"] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name,
                "constraints": list(self.constraints),
                "resolution": self.resolution,
                "children": [c.to_dict() for c in self.children]}

    @classmethod
    def from_dict(cls, d: dict) -> "CaseNode":
        return cls(d["name"], list(d["constraints"]), d["resolution"],
                   [cls.from_dict(c) for c in d.get("children", [])])

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()


@dataclass
class ObstructionReport:
    example: str                 # "2" | "3"
    assumptions: list[dict]      # [{"id": ..., "anchor": ...}]
    cases: list[CaseNode]
    conclusion: str              # "obstructed" | "inconclusive"

    def to_dict(self) -> dict:
        return {"example": self.example,
                "assumptions": [dict(a) for a in self.assumptions],
                "cases": [c.to_dict() for c in self.cases],
                "conclusion": self.conclusion}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "ObstructionReport":
        return cls(d["example"], [dict(a) for a in d["assumptions"]],
                   [CaseNode.from_dict(c) for c in d["cases"]], d["conclusion"])

    def leaves(self):
        for c in self.cases:
            yield from c.leaves()


def _conclude(cases: list[CaseNode]) -> str:
    ok = all(leaf.resolution in ("forces z=1", "structurally impossible")
             for case in cases for leaf in case.leaves())
    return "obstructed" if ok else "inconclusive"


# ---------------------------------------------------------------------------
# shared leaf lemmas
# ---------------------------------------------------------------------------

def rational_plus_inverse_integer_forces_one(z, n: int) -> bool:
    """For rational z > 0 with z + 1/z = n an integer: true iff z = 1.

    The divisibility argument makes this a certified leaf: with z = a/b in
    lowest terms, a*b divides a^2 + b^2; gcd(a, b) = 1 then forces
    a = b = 1.
    """
    z = Q(z)
    if z <= 0:
        raise ValueError("z must be positive")
    if z + 1 / z != n:
        raise ValueError("precondition z + 1/z = n not satisfied")
    a, b = z.numerator, z.denominator
    if (a * a + b * b) % (a * b) != 0:
        raise AssertionError("divisibility must hold when z + 1/z is integral")
    return a == 1 and b == 1


def positive_root_is_one(p: UniPoly) -> bool:
    """True iff the only positive real root of p is exactly 1."""
    if p(Q(1)) != 0:
        return False
    bound = max(Q(2), _root_bound(p))
    return sturm_count(p, 0, bound) == 1


def _root_bound(p: UniPoly) -> Fraction:
    from .exact import cauchy_root_bound
    return cauchy_root_bound(p)


def _unipoly_in(p: MultiPoly, var: str) -> UniPoly:
    """Convert a univariate MultiPoly to a UniPoly (raises if other
    variables occur)."""
    i = p.variables.index(var)
    coeffs = [Q(0)] * (p.degree_in(var) + 1)
    for e, c in p.terms.items():
        if any(x and k != i for k, x in enumerate(e)):
            raise ValueError(f"{p} is not univariate in {var}")
        coeffs[e[i]] = c
    return UniPoly(coeffs)


# ---------------------------------------------------------------------------
# the elimination pipeline (first 8-dimensional group)
# ---------------------------------------------------------------------------

V_EXPONENTS = (-1, -2, 3)        # generator weights; traces give z^-1+z^-2+z^3 = m
WEDGE_EXPONENTS = (1, 2, -3)     # induced center weights; z+z^2+z^-3 = n

# Reference basis from an independent Maple V run of the same elimination,
# re-typed; two doubled-sign print artifacts normalized ("- -2m^2n^4" to
# "- 2m^2n^4" and line-wrap "+-"/"-+" pairs collapsed).
PUBLISHED_BASIS = (
    "-7*m^2 + m^3 - m^4 - m^5 - 13*m*n - m^2*n + 5*m^3*n - 3*m^4*n - 7*n^2"
    " - m*n^2 + 10*m^2*n^2 + n^3 + 5*m*n^3 + m^3*n^3 - n^4 - 3*m*n^4 - n^5",
    "-28*m + 4*m^2 - 4*m^3 - 4*m^4 - 20*n - 16*m*n + 29*m^2*n - 8*m^3*n - m^4*n"
    " - 8*n^2 + 8*m*n^2 + 17*m^2*n^2 - m^3*n^2 - 5*m*n^3 + 12*m^2*n^3 + 2*m^3*n^3 + m^4*n^3"
    " - 10*n^4 - 12*m*n^4 - 2*m^2*n^4 + 3*m^3*n^4 - 6*n^5 - 12*m*n^5 + m^2*n^5 - 6*n^6 - m^2*n^6"
    " + 2*n^7 + m*n^7 + 12*n*z + 8*n^2*z + 23*n^3*z + 9*n^4*z + 12*n^5*z + n^7*z - n^8*z",
    "-52*m + 6*m^2 + 4*m^3 - 6*m^4 - 20*n - 68*m*n + 63*m^2*n - 14*m^3*n - m^4*n"
    " - 52*n^2 + 26*m*n^2 + 24*m^2*n^2 + 3*m^3*n^2 + 3*m^4*n^2 + 16*n^3 - 13*m*n^3"
    " - 4*m^2*n^3 + 9*m^3*n^3 - 18*n^4 - 39*m*n^4 + 4*m^2*n^4 - 20*n^5 - m*n^5 - 3*m^2*n^5"
    " + 6*n^6 + 3*m*n^6 + 40*m*z + 68*n*z + 18*n^2*z + 33*n^3*z + 22*n^4*z + 2*n^5*z"
    " + 4*n^6*z - 3*n^7*z",
    "-20 - 26*m - 7*m^2 - 8*m^3 - 3*m^4 - 20*n + 36*m*n + 9*m^2*n - 7*m^3*n + 2*m^4*n"
    " + 24*n^2 + 33*m*n^2 - 18*m^2*n^2 + 4*m^3*n^2 - m^4*n^2 + 18*n^3 - 14*m*n^3 + 8*m^2*n^3"
    " - 3*m^3*n^3 - 14*n^4 + 8*m*n^4 - 3*m^2*n^4 + 10*n^5 + 2*m*n^5 + m^2*n^5 - 2*n^6 - m*n^6"
    " - 20*z + 4*n*z - 31*n^2*z + 9*n^3*z - 14*n^4*z + 6*n^5*z - 3*n^6*z + n^7*z"
    " - 20*z^2 - 10*n*z^2 - 10*n^2*z^2",
    "40 - 52*m + 6*m^2 + 4*m^3 - 6*m^4 - 20*n - 68*m*n + 63*m^2*n - 14*m^3*n - m^4*n"
    " - 52*n^2 + 26*m*n^2 + 24*m^2*n^2 + 3*m^3*n^2 + 3*m^4*n^2 + 16*n^3 - 13*m*n^3"
    " - 4*m^2*n^3 + 9*m^3*n^3 - 18*n^4 - 39*m*n^4 + 4*m^2*n^4 - 20*n^5 - m*n^5 - 3*m^2*n^5"
    " + 6*n^6 + 3*m*n^6 + 68*n*z + 18*n^2*z + 33*n^3*z + 22*n^4*z + 2*n^5*z + 4*n^6*z"
    " - 3*n^7*z + 40*n*z^2 - 40*z^3",
)

EXAMPLE2_ASSUMPTIONS = (
    {"id": "lattice-descends",
     "anchor": "a lattice in the full group yields a lattice Z.D in the"
               " semidirect factor, D = intersection with the nilpotent radical"},
    {"id": "nilradical-lattice",
     "anchor": "the commutator-lattice proposition: D is a lattice in N,"
               " inducing a rational structure on the free 2-step algebra"},
    {"id": "semisimple-part",
     "anchor": "the generator acts by C*J with J unipotent; characteristic"
               " numbers are read off the semisimple part C = exp(t0 * weights)"},
    {"id": "invariant-traces",
     "anchor": "the generator-grading and center are rational and invariant,"
               " so both 3x3 actions have integer traces m and n"},
    {"id": "z-positive-not-one",
     "anchor": "z = exp(t0) with t0 != 0, hence z > 0 and z != 1"},
)


def _trace_system_basis(v_exponents: tuple, w_exponents: tuple):
    order = MonomialOrder.lex(TRACE_VARIABLES, ["z", "m", "n"])
    f = trace_condition(v_exponents, "m", TRACE_VARIABLES)
    g = trace_condition(w_exponents, "n", TRACE_VARIABLES)
    return f, g, buchberger([f, g], order)


_BASIS_CACHE: dict = {}


def trace_system_basis(v_exponents: Sequence[int], w_exponents: Sequence[int]):
    """The two cleared trace conditions and their reduced basis (cached;
    everything involved is immutable)."""
    key = (tuple(v_exponents), tuple(w_exponents))
    if key not in _BASIS_CACHE:
        _BASIS_CACHE[key] = _trace_system_basis(*key)
    return _BASIS_CACHE[key]


def trace_system_obstruction(v_exponents: Sequence[int],
                             w_exponents: Sequence[int]) -> ObstructionReport:
    """Run the elimination case analysis for trace conditions
    sum z^v = m and sum z^w = n; the pinned order is lex z > m > n."""
    f, g, gb = trace_system_basis(v_exponents, w_exponents)

    root = CaseNode(
        name="trace integrality system",
        constraints=[f"{f} = 0", f"{g} = 0",
                     "m and n are positive integers (traces of integer"
                     " matrices; sums of positive reals)"],
        resolution="reduces to subcase")
    report = ObstructionReport("2", list(EXAMPLE2_ASSUMPTIONS), [root],
                               "inconclusive")

    elim = [p for p in gb if not p.uses("z")]
    if not elim:
        root.children.append(CaseNode(
            "elimination ideal is zero",
            ["no z-free generator: the system does not constrain (m, n)"],
            "reduces to subcase"))
        report.conclusion = _conclude(report.cases)
        return report
    root.constraints.append(f"elimination ideal generated by: {elim[0]} = 0")

    linear = [p for p in gb if p.degree_in("z") == 1]
    lin_n = [p for p in linear
             if not p.coefficient_of("z", 1).uses("m")
             and p.coefficient_of("z", 1).uses("n")]
    lin_m = [p for p in linear if p.coefficient_of("z", 1).uses("m")]
    if not lin_n or not lin_m:
        root.children.append(CaseNode(
            "no usable linear-in-z generators",
            [f"generators linear in z: {len(linear)}"],
            "reduces to subcase"))
        report.conclusion = _conclude(report.cases)
        return report

    c1 = _integer_cleared(lin_n[0].coefficient_of("z", 1))
    c1_poly = _unipoly_in(c1.restricted(("n",)), "n")

    case_nonzero = CaseNode(
        name="z-coefficient nonzero: c1(n) != 0",
        constraints=[f"({c1}) * z + tail = 0 with c1(n) != 0, so z is rational",
                     f"a rational root of {f} = 0 divides the constant term 1,"
                     " so z = 1 or z = -1; z > 0 leaves z = 1"],
        resolution="forces z=1")
    root.children.append(case_nonzero)

    n_candidates = [r for r in rational_roots(c1_poly)
                    if r.denominator == 1 and r >= 1]
    case_zero = CaseNode(
        name="z-coefficient vanishes: c1(n) = 0",
        constraints=[f"c1(n) = {c1} = 0",
                     f"rational roots of c1: {[str(r) for r in rational_roots(c1_poly)]};"
                     f" positive integer candidates: {[str(r) for r in n_candidates]}"],
        resolution="reduces to subcase")
    root.children.append(case_zero)

    for n0 in n_candidates:
        c2 = _integer_cleared(lin_m[0].coefficient_of("z", 1)).substitute({"n": n0})
        c2_poly = _unipoly_in(c2.restricted(("m",)), "m")
        m_candidates = [r for r in rational_roots(c2_poly)
                        if r.denominator == 1 and r >= 1]
        sub = CaseNode(
            name=f"n = {n0}",
            constraints=[f"c2(m, {n0}) = {c2}"],
            resolution="reduces to subcase")
        case_zero.children.append(sub)
        sub.children.append(CaseNode(
            f"m with c2(m, {n0}) != 0",
            [f"({c2}) * z + tail = 0 forces z rational, hence z = 1"],
            "forces z=1"))
        for m0 in m_candidates:
            f0 = _unipoly_in(f.substitute({"m": m0, "n": n0}).restricted(("z",)), "z")
            g0 = _unipoly_in(g.substitute({"m": m0, "n": n0}).restricted(("z",)), "z")
            h = f0.gcd(g0)
            unique_one = (not h.is_zero) and h.degree >= 1 and positive_root_is_one(h)
            leaf = CaseNode(
                f"m = {m0}, n = {n0}: common roots",
                [f"gcd of the specialized system: {h!r}",
                 f"only positive real root of the gcd is 1: {unique_one}"],
                "forces z=1" if unique_one else "reduces to subcase")
            sub.children.append(leaf)

    report.conclusion = _conclude(report.cases)
    return report


def _integer_cleared(p: MultiPoly) -> MultiPoly:
    from math import gcd
    if p.is_zero:
        return p
    lcm = 1
    for c in p.terms.values():
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = {e: int(c * lcm) for e, c in p.terms.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, abs(c))
    return MultiPoly(p.variables, {e: c // g for e, c in ints.items()})


def example2_obstruction() -> ObstructionReport:
    """The full elimination pipeline for the group with free 2-step
    nilradical and weights (-1, -2, 3)."""
    return trace_system_obstruction(V_EXPONENTS, WEDGE_EXPONENTS)


def published_basis_membership() -> list[tuple[int, bool]]:
    """Reduce each published basis polynomial modulo the computed ideal;
    returns (index, is_member) pairs.  Failures are reported, not forced."""
    _, _, gb = trace_system_basis(V_EXPONENTS, WEDGE_EXPONENTS)
    out = []
    for i, text in enumerate(PUBLISHED_BASIS):
        p = MultiPoly.parse(text, TRACE_VARIABLES)
        out.append((i, gb.reduce(p).is_zero))
    return out


# ---------------------------------------------------------------------------
# the eigenvalue-pattern pipeline (second 8-dimensional group)
# ---------------------------------------------------------------------------

PHI_EXPONENTS = CharMultiset((1, -2, -1, -1, 2, 1))       # the six nilradical weights
ABELIANIZATION_EXPONENTS = CharMultiset((1, -1, 2, -2))   # induced on N/[N,N]

EXAMPLE3_ASSUMPTIONS = (
    {"id": "lattice-descends",
     "anchor": "a lattice in the full group yields a lattice Z.(Gamma n N)"
               " in the semidirect factor"},
    {"id": "nilradical-lattice",
     "anchor": "the commutator-lattice proposition: Gamma n N is a lattice in"
               " N, giving a rational form of the product of two Heisenberg"
               " algebras (split, or a quadratic twist g65(q), q > 0 squarefree)"},
    {"id": "semisimple-part",
     "anchor": "the lattice generator acts by C*J with J unipotent;"
               " characteristic numbers are read off the semisimple part"
               " C = exp(t0 * diag(1,-2,-1,-1,2,1))"},
    {"id": "center-trace",
     "anchor": "the action preserves the rank-2 lattice in [N,N], whose"
               " eigenvalues are z and 1/z, so z + 1/z = n is a positive integer"},
    {"id": "z-positive-not-one",
     "anchor": "z = exp(t0) with t0 != 0, hence z > 0 and z != 1"},
)


def example3_qpos_obstruction() -> ObstructionReport:
    """q > 0 branch: the characteristic multiset {z, z, 1/z, 1/z, z^2, 1/z^2}
    must match the reductive-automorphism pattern {b, b, a, a, ab, ab};
    every exponent assignment fails, and every value-level coincidence
    forces z = 1."""
    target = PHI_EXPONENTS
    root = CaseNode(
        name="q > 0: match characteristic numbers against the scaling pattern",
        constraints=[f"characteristic numbers: {target}",
                     "pattern: {beta, beta, alpha, alpha, alpha*beta, alpha*beta}"],
        resolution="reduces to subcase")

    for b in target.distinct():
        for a in target.distinct():
            pattern = AutPattern.instantiate(b, a)
            if pattern.exponents == target.exponents:
                root.children.append(CaseNode(
                    f"beta = z^{b}, alpha = z^{a}",
                    [f"pattern {pattern} equals the target: assignment found"],
                    "reduces to subcase"))
                continue
            d = _first_exponent_gap(pattern.exponents, target.exponents)
            root.children.append(CaseNode(
                f"beta = z^{b}, alpha = z^{a}",
                [f"pattern exponents {list(pattern.exponents)} differ from"
                 f" target {list(target.exponents)}",
                 f"value equality would need z^{abs(d)} = 1, and the only"
                 f" positive real root of z^{abs(d)} - 1 is 1"],
                "forces z=1"))

    coincidences = CaseNode(
        name="coincidence side-cases: distinct target entries collide",
        constraints=["collisions among {z, 1/z, z^2, 1/z^2} as positive reals"],
        resolution="reduces to subcase")
    seen = set()
    for s in target.distinct():
        for t in target.distinct():
            d = abs(s - t)
            if s < t and d not in seen:
                seen.add(d)
                ok = positive_root_is_one(UniPoly([-1] + [0] * (d - 1) + [1]))
                coincidences.children.append(CaseNode(
                    f"z^{s} = z^{t}",
                    [f"z^{d} = 1 over the positive reals",
                     f"only positive real root of z^{d} - 1 is 1: {ok}"],
                    "forces z=1" if ok else "reduces to subcase"))
    root.children.append(coincidences)

    report = ObstructionReport("3", list(EXAMPLE3_ASSUMPTIONS), [root],
                               "inconclusive")
    report.conclusion = _conclude(report.cases)
    return report


def _first_exponent_gap(pattern: Sequence[int], target: Sequence[int]) -> int:
    """Nonzero difference witnessing that two sorted exponent lists are not
    equal: since e -> z^e is strictly monotone for z > 0, z != 1, equal value
    multisets would force equal sorted lists."""
    for s, t in zip(pattern, target):
        if s != t:
            return s - t
    raise ValueError("lists are equal; no gap to witness")


# eigenline labels by weight in the split algebra: z, 1/z, z^2, 1/z^2
EIGENLINES = ("X1", "X2", "Y2", "Y1")
EIGEN_EXPONENTS = (1, -1, 2, -2)

PAIRINGS = (
    (("X1", "X2"), ("Y2", "Y1")),   # {z, 1/z} | {z^2, 1/z^2}
    (("X1", "Y2"), ("X2", "Y1")),   # {z, z^2} | {1/z, 1/z^2}
    (("X1", "Y1"), ("X2", "Y2")),   # {z, 1/z^2} | {1/z, z^2}
)


def _bracket_compatibility(L: LieAlgebra, pair1, pair2) -> tuple[bool, str]:
    """A pairing of eigenlines can induce a direct-sum decomposition only if
    each side generates a 3-dimensional Heisenberg ideal and the two sides
    together span the algebra."""
    s1 = subalgebra_generated(L, [L.basis_vector(x) for x in pair1])
    s2 = subalgebra_generated(L, [L.basis_vector(x) for x in pair2])
    detail = (f"span({','.join(pair1)}) generates dim {s1.dim};"
              f" span({','.join(pair2)}) generates dim {s2.dim}")
    if s1.dim != 3 or s2.dim != 3:
        return False, detail + " (need two 3-dimensional Heisenberg factors)"
    if s1.union(s2).dim != L.dim:
        return False, detail + " (factors do not span)"
    full = Subspace(L.dim, [L.basis_vector(x) for x in L.labels])
    for s in (s1, s2):
        for u in full.basis:
            for v in s.basis:
                if not s.contains(L.bracket(u, v)):
                    return False, detail + " (not an ideal)"
    return True, detail + " (two Heisenberg ideals in direct sum)"


def _trace_rationality(exps1, exps2, power: int) -> tuple[bool, list[str], str | None]:
    """Try to derive rationality of w = z^power from the two summand trace
    conditions.  Returns (derived, constraint strings, rational expression)."""
    w = "w"
    variables = (w, "k", "l")
    t1 = trace_condition(exps1, "k", variables, var=w)
    t2 = trace_condition(exps2, "l", variables, var=w)
    order = MonomialOrder.lex(variables, [w, "k", "l"])
    gb = buchberger([t1, t2], order)
    constraints = [f"{t1} = 0 with k a positive integer",
                   f"{t2} = 0 with l a positive integer"]
    # candidates: the difference of the cleared conditions with any common
    # power of w stripped (valid since w > 0), then the basis members
    candidates = [_strip_power(t1 - t2, w)] + list(gb)
    for p in candidates:
        if p.is_zero or p.degree_in(w) != 1 or p.coefficient_of(w, 1).is_zero:
            continue
        if not normal_form(p, list(gb), order).is_zero:
            continue
        if all(c < 0 for c in p.coefficient_of(w, 1).terms.values()):
            p = -p
        cw = p.coefficient_of(w, 1)
        c0 = p.coefficient_of(w, 0)
        # the coefficient must be nonvanishing for positive integer k, l:
        # accept when it has constant sign, e.g. l + 1 or -k
        if _positive_on_naturals(cw) or _positive_on_naturals(-cw):
            expr = f"w = ({-c0}) / ({cw})"
            constraints.append(
                f"ideal member linear in w: {_integer_cleared(p)} = 0, so {expr}"
                " is rational (denominator nonzero for positive integers k, l)")
            if "(k*l - 1) / (l + 1)" in expr:
                constraints.append(
                    "note: the published closed form (k*l - 1)/l is"
                    " inconsistent with the pair of trace conditions; the"
                    " derived form is (k*l - 1)/(l + 1), and only"
                    " rationality of w is used downstream")
            return True, constraints, expr
    return False, constraints, None


def _strip_power(p: MultiPoly, var: str) -> MultiPoly:
    """Divide out the largest common power of ``var`` (legal when the
    variable is known nonzero)."""
    if p.is_zero:
        return p
    i = p.variables.index(var)
    v = min(e[i] for e in p.terms)
    if v == 0:
        return p
    return MultiPoly(p.variables,
                     {tuple(x - v if k == i else x for k, x in enumerate(e)): c
                      for e, c in p.terms.items()})


def _positive_on_naturals(p: MultiPoly) -> bool:
    """Conservative check: every coefficient nonnegative and some term
    nonzero, so p(k, l) > 0 whenever k, l >= 1."""
    if p.is_zero:
        return False
    return all(c > 0 for c in p.terms.values())


def example3_q0_obstruction() -> ObstructionReport:
    """q = 0 branch: in the split algebra the four eigenlines of the
    abelianization admit three pairings into 2-plane sums; each pairing is
    killed by bracket incompatibility or by trace rationality combined with
    z + 1/z being an integer.  The analysis is rerun with doubled exponents
    to cover a factor-swapping generator (whose square preserves factors)."""
    L = n3n3()
    root_cases = []
    for power, gen_name in ((1, "gamma"), (2, "gamma^2")):
        weights = {lab: e * power for lab, e in zip(EIGENLINES, EIGEN_EXPONENTS)}
        center_note = ("z + 1/z = n is a positive integer" if power == 1 else
                       "w + 1/w = n^2 - 2 is an integer, where w = z^2")
        branch = CaseNode(
            name=f"{gen_name}: eigenvalue exponents "
                 f"{[weights[x] for x in EIGENLINES]} on ({', '.join(EIGENLINES)})",
            constraints=[center_note,
                         "if z != 1 the four eigenvalues are distinct, so any"
                         " rational direct-sum decomposition pairs eigenlines"],
            resolution="reduces to subcase")
        for pair1, pair2 in PAIRINGS:
            exps1 = tuple(weights[x] for x in pair1)
            exps2 = tuple(weights[x] for x in pair2)
            compatible, bracket_detail = _bracket_compatibility(L, pair1, pair2)
            derived, trace_constraints, expr = _trace_rationality(
                [e // power for e in exps1], [e // power for e in exps2], power)
            name = (f"pairing {{{','.join(pair1)}}} | {{{','.join(pair2)}}}"
                    f" = exponents {list(exps1)} | {list(exps2)}")
            constraints = [f"bracket compatibility: {bracket_detail}",
                           f"bracket-compatible: {compatible}"]
            if derived:
                w_sym = "z" if power == 1 else "w = z^2"
                constraints += trace_constraints
                constraints.append(
                    f"{w_sym} rational and {center_note}: a positive rational"
                    " with integer sum with its inverse equals 1"
                    " (divisibility lemma)")
                if power == 2:
                    constraints.append("z^2 = 1 and z > 0 give z = 1")
                branch.children.append(CaseNode(name, constraints, "forces z=1"))
            elif not compatible:
                branch.children.append(CaseNode(
                    name, constraints, "structurally impossible"))
            else:
                branch.children.append(CaseNode(
                    name, constraints + ["no kill derived"], "reduces to subcase"))
        root_cases.append(branch)

    report = ObstructionReport("3", list(EXAMPLE3_ASSUMPTIONS), root_cases,
                               "inconclusive")
    report.conclusion = _conclude(report.cases)
    return report


def example3_obstruction() -> ObstructionReport:
    """Both branches (q > 0 and q = 0) in one report."""
    qpos = example3_qpos_obstruction()
    q0 = example3_q0_obstruction()
    report = ObstructionReport("3", list(EXAMPLE3_ASSUMPTIONS),
                               qpos.cases + q0.cases, "inconclusive")
    report.conclusion = _conclude(report.cases)
    return report


# ---------------------------------------------------------------------------
# report verification
# ---------------------------------------------------------------------------

def verify_report(data: dict) -> bool:
    """Re-verify a serialized report without trusting its producer.

    Checks that the stored conclusion matches the leaf resolutions, that
    every 'forces z=1' leaf in a power-collision case is backed by a
    polynomial whose only positive root is 1, and that a fresh deterministic
    rerun of the pipeline reproduces the stored case tree exactly.
    """
    try:
        report = ObstructionReport.from_dict(data)
    except (KeyError, TypeError):
        return False
    if report.conclusion != _conclude(report.cases):
        return False
    for leaf in report.leaves():
        if leaf.resolution not in RESOLUTIONS:
            return False
    fresh = _recompute_like(report)
    if fresh is None:
        return False
    return fresh.to_dict() == report.to_dict()


def _recompute_like(report: ObstructionReport) -> ObstructionReport | None:
    if report.example == "2":
        return example2_obstruction()
    if report.example == "3":
        names = [c.name for c in report.cases]
        if any(n.startswith("q > 0") for n in names) and \
           any(n.startswith("gamma") for n in names):
            return example3_obstruction()
        if names and names[0].startswith("q > 0"):
            return example3_qpos_obstruction()
        return example3_q0_obstruction()
    return None
