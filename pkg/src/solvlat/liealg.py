"""Lie algebras over Q given by labeled bases and structure constants,
structural invariants, and constructors for every algebra used by the
obstruction and lattice pipelines.

Subspaces are kept as reduced-row-echelon bases so equality is canonical.
Algebras are immutable; all operations are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import MatrixQ, Q, UniPoly, charpoly, mat_kernel, mat_rank, rref, sturm_count, cauchy_root_bound


class LieAlgebra:
    """Finite-dimensional algebra with bracket [e_i, e_j] = sum c[i][j][k] e_k."""

    __slots__ = ("dim", "labels", "c")

    def __init__(self, labels: Sequence[str], structure: dict):
        """``structure`` maps (label_i, label_j) with i-index < j-index to a
        dict {label_k: coefficient}; antisymmetric completion is automatic."""
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self.dim = len(self.labels)
        idx = {name: i for i, name in enumerate(self.labels)}
        c = [[[Q(0)] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (li, lj), rhs in structure.items():
            i, j = idx[li], idx[lj]
            if i == j:
                raise ValueError(f"bracket [{li},{li}] must be zero")
            for lk, coeff in rhs.items():
                coeff = Q(coeff)
                c[i][j][idx[lk]] += coeff
                c[j][i][idx[lk]] -= coeff
        self.c = tuple(tuple(tuple(row) for row in plane) for plane in c)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_vector(self, label: str) -> tuple[Fraction, ...]:
        i = self.index(label)
        return tuple(Q(1) if j == i else Q(0) for j in range(self.dim))

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        u = [Q(x) for x in u]
        v = [Q(x) for x in v]
        out = [Q(0)] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, coeff in enumerate(self.c[i][j]):
                    if coeff != 0:
                        out[k] += a * b * coeff
        return tuple(out)

    def ad(self, v: Sequence) -> MatrixQ:
        """Matrix of x -> [v, x] in the stored basis."""
        cols = []
        for j in range(self.dim):
            e = [Q(0)] * self.dim
            e[j] = Q(1)
            cols.append(self.bracket(v, e))
        return MatrixQ(list(zip(*cols)))

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra)
                and self.labels == other.labels and self.c == other.c)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={','.join(self.labels)})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str | None = None          # "antisymmetry" | "jacobi"
    triple: tuple | None = None      # offending labels

    def __bool__(self):
        return self.ok


def validate(L: LieAlgebra) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity over all basis triples."""
    for i in range(L.dim):
        for j in range(L.dim):
            for k in range(L.dim):
                if L.c[i][j][k] != -L.c[j][i][k]:
                    return ValidationReport(False, "antisymmetry",
                                            (L.labels[i], L.labels[j]))
    basis = [L.basis_vector(name) for name in L.labels]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            bij = L.bracket(basis[i], basis[j])
            for k in range(j + 1, L.dim):
                total = [Q(0)] * L.dim
                for term in (L.bracket(bij, basis[k]),
                             L.bracket(L.bracket(basis[j], basis[k]), basis[i]),
                             L.bracket(L.bracket(basis[k], basis[i]), basis[j])):
                    for t, x in enumerate(term):
                        total[t] += x
                if any(total):
                    return ValidationReport(False, "jacobi",
                                            (L.labels[i], L.labels[j], L.labels[k]))
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of Q^n held as a reduced-row-echelon basis (canonical)."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        self.ambient_dim = ambient_dim
        vecs = [tuple(Q(x) for x in v) for v in vectors]
        vecs = [v for v in vecs if any(v)]
        if not vecs:
            self.basis = ()
            return
        reduced, pivots = rref(MatrixQ(vecs))
        self.basis = tuple(reduced.entries[i] for i in range(len(pivots)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        w = [Q(x) for x in v]
        for row in self.basis:
            pivot = next(i for i, x in enumerate(row) if x != 0)
            if w[pivot] != 0:
                f = w[pivot]
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def union(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient_dim})"


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    """Echelonized basis of [L, L]."""
    vecs = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            vecs.append(L.c[i][j])
    return Subspace(L.dim, vecs)


def center(L: LieAlgebra) -> Subspace:
    """Null space of the joint adjoint action."""
    rows = []
    for i in range(L.dim):
        # rows of ad(e_i) stacked: [e_i, x] = 0 for all i
        for k in range(L.dim):
            rows.append(tuple(L.c[i][j][k] for j in range(L.dim)))
    if not rows:
        return Subspace(L.dim, [])
    return Subspace(L.dim, mat_kernel(MatrixQ(rows)))


def bracket_span(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    return Subspace(L.dim, [L.bracket(u, v) for u in a.basis for v in b.basis])


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """L >= [L,L] >= [L,[L,L]] >= ... down to the first repeated term."""
    full = Subspace(L.dim, [L.basis_vector(name) for name in L.labels])
    series = [full]
    while True:
        nxt = bracket_span(L, full, series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def derived_series(L: LieAlgebra) -> list[Subspace]:
    full = Subspace(L.dim, [L.basis_vector(name) for name in L.labels])
    series = [full]
    while True:
        nxt = bracket_span(L, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def nilpotency_class(L: LieAlgebra) -> int | None:
    series = lower_central_series(L)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_completely_solvable(L: LieAlgebra) -> bool:
    """Solvable with every ad X (X in the basis) having only real
    eigenvalues, decided by a Sturm count on the squarefree part."""
    if not is_solvable(L):
        return False
    for name in L.labels:
        p = charpoly(L.ad(L.basis_vector(name)))
        s = p.squarefree_part()
        if s.degree <= 0:
            continue
        bound = cauchy_root_bound(s)
        if sturm_count(s, -bound, bound) != s.degree:
            return False
    return True


def is_automorphism(L: LieAlgebra, m: MatrixQ) -> bool:
    """True iff m is invertible and m[u,v] = [mu, mv] on all basis pairs."""
    if m.rows != L.dim or m.cols != L.dim:
        raise ValueError("matrix size must match the algebra dimension")
    if mat_rank(m) != L.dim:
        return False
    for i in range(L.dim):
        ei = L.basis_vector(L.labels[i])
        for j in range(i + 1, L.dim):
            ej = L.basis_vector(L.labels[j])
            lhs = m.apply(L.bracket(ei, ej))
            rhs = L.bracket(m.apply(ei), m.apply(ej))
            if lhs != rhs:
                return False
    return True


def is_derivation(L: LieAlgebra, m: MatrixQ) -> bool:
    """True iff m[u,v] = [mu, v] + [u, mv] on all basis pairs."""
    if m.rows != L.dim or m.cols != L.dim:
        raise ValueError("matrix size must match the algebra dimension")
    for i in range(L.dim):
        ei = L.basis_vector(L.labels[i])
        for j in range(i + 1, L.dim):
            ej = L.basis_vector(L.labels[j])
            lhs = m.apply(L.bracket(ei, ej))
            a = L.bracket(m.apply(ei), ej)
            b = L.bracket(ei, m.apply(ej))
            if lhs != tuple(x + y for x, y in zip(a, b)):
                return False
    return True


def subalgebra_generated(L: LieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    """Smallest bracket-closed subspace containing the given vectors."""
    span = Subspace(L.dim, vectors)
    while True:
        brackets = [L.bracket(u, v)
                    for i, u in enumerate(span.basis)
                    for v in span.basis[i + 1:]]
        grown = Subspace(L.dim, list(span.basis) + brackets)
        if grown.dim == span.dim:
            return grown
        span = grown


# ---------------------------------------------------------------------------
# weight systems (diagonal derivations)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSystem:
    """Eigenvalues of a diagonal ad-action, one weight per basis vector."""

    derivation_index: int
    weights: tuple[Fraction, ...]

    def restrict(self, indices: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(self.weights[i] for i in indices)


def weight_system(L: LieAlgebra, label: str = "A") -> WeightSystem:
    """Extract the weight system of ad(label); the action must be diagonal
    and weights must add along nonzero brackets."""
    a = L.index(label)
    ad_a = L.ad(L.basis_vector(label))
    for i in range(L.dim):
        for j in range(L.dim):
            if i != j and ad_a[i, j] != 0:
                raise ValueError(f"ad {label} is not diagonal")
    weights = tuple(ad_a[i, i] for i in range(L.dim))
    for i in range(L.dim):
        for j in range(L.dim):
            if i == a or j == a:
                continue
            for k in range(L.dim):
                if L.c[i][j][k] != 0 and weights[k] != weights[i] + weights[j]:
                    raise ValueError(
                        f"weights not additive on [{L.labels[i]},{L.labels[j]}]")
    return WeightSystem(a, weights)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def example2() -> LieAlgebra:
    """The 8-dimensional completely solvable algebra with free 2-step
    nilradical and ad A weights (-1, -2, 3) on the generators."""
    return modified_family(Q(-1), Q(-2))


def modified_family(l1, l2) -> LieAlgebra:
    """One-parameter variant of :func:`example2`: ad A acts on X1, X2, X3
    with weights l1, l2, l3 := -l1-l2 (all required nonzero), and the center
    weights follow by additivity."""
    l1, l2 = Q(l1), Q(l2)
    l3 = -l1 - l2
    if l1 == 0 or l2 == 0 or l3 == 0:
        raise ValueError("weights l1, l2, l1+l2 must all be nonzero")
    labels = ("A", "B", "X1", "X2", "X3", "Z1", "Z2", "Z3")
    structure = {
        ("X2", "X3"): {"Z1": 2},
        ("X1", "X3"): {"Z2": 1},
        ("X1", "X2"): {"Z3": -1},
        ("A", "X1"): {"X1": l1},
        ("A", "X2"): {"X2": l2},
        ("A", "X3"): {"X3": l3},
        ("A", "Z1"): {"Z1": l2 + l3},
        ("A", "Z2"): {"Z2": l1 + l3},
        ("A", "Z3"): {"Z3": l1 + l2},
    }
    return LieAlgebra(labels, structure)


def example3() -> LieAlgebra:
    """The 8-dimensional completely solvable algebra with nilradical
    n3 + n3 and ad A weights diag(1, -2, -1, -1, 2, 1)."""
    labels = ("A", "B", "X1", "Y1", "Z1", "X2", "Y2", "Z2")
    structure = {
        ("X1", "Y1"): {"Z1": 1},
        ("X2", "Y2"): {"Z2": 1},
        ("A", "X1"): {"X1": 1},
        ("A", "X2"): {"X2": -1},
        ("A", "Y1"): {"Y1": -2},
        ("A", "Y2"): {"Y2": 2},
        ("A", "Z1"): {"Z1": -1},
        ("A", "Z2"): {"Z2": 1},
    }
    return LieAlgebra(labels, structure)


def heisenberg3() -> LieAlgebra:
    return LieAlgebra(("X", "Y", "Z"), {("X", "Y"): {"Z": 1}})


def n3n3() -> LieAlgebra:
    """Split direct sum of two Heisenberg algebras, with the eigenline
    labels used by the rank-two obstruction analysis."""
    return LieAlgebra(("X1", "Y1", "Z1", "X2", "Y2", "Z2"),
                      {("X1", "Y1"): {"Z1": 1}, ("X2", "Y2"): {"Z2": 1}})


def _squarefree_int(q: int) -> bool:
    if q < 0:
        return False
    d = 2
    while d * d <= q:
        if q % (d * d) == 0:
            return False
        d += 1
    return True


def g65(q: int) -> LieAlgebra:
    """Rational form of the product of two Heisenberg algebras.

    For squarefree q >= 1 this is the scalar-restriction presentation of the
    Heisenberg algebra over Q(sqrt(q)): basis X1, X2 = sqrt(q) X1, X3,
    X4 = sqrt(q) X3 with center X5, X6 = sqrt(q) X5, so

        [X1,X3] = X5, [X2,X3] = X6, [X1,X4] = X6, [X2,X4] = q X5.

    q = 0 denotes the split form (two decoupled Heisenberg pairs); the split
    algebra is not a specialization of the q > 0 brackets, since its pencil
    of center-valued forms degenerates along two distinct lines rather than
    one doubled line.
    """
    if not isinstance(q, int) or q < 0:
        raise ValueError("q must be a nonnegative integer")
    if not _squarefree_int(q):
        raise ValueError("q must be squarefree")
    labels = ("X1", "X2", "X3", "X4", "X5", "X6")
    if q == 0:
        structure = {("X1", "X3"): {"X5": 1}, ("X2", "X4"): {"X6": 1}}
    else:
        structure = {
            ("X1", "X3"): {"X5": 1},
            ("X2", "X3"): {"X6": 1},
            ("X1", "X4"): {"X6": 1},
            ("X2", "X4"): {"X5": q},
        }
    return LieAlgebra(labels, structure)


def g65_scaling_automorphisms(alpha, beta) -> MatrixQ:
    """diag(beta, beta, alpha, alpha, alpha*beta, alpha*beta): the reductive
    part of Aut(g65(q)) in the stored basis."""
    alpha, beta = Q(alpha), Q(beta)
    return MatrixQ.diagonal([beta, beta, alpha, alpha, alpha * beta, alpha * beta])


def free2step(k: int) -> LieAlgebra:
    """Free 2-step nilpotent algebra on k generators: V + wedge^2 V."""
    if k < 1:
        raise ValueError("need at least one generator")
    gens = [f"X{i + 1}" for i in range(k)]
    wedges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    labels = gens + [f"Z{i + 1}{j + 1}" for i, j in wedges]
    structure = {(gens[i], gens[j]): {f"Z{i + 1}{j + 1}": 1} for i, j in wedges}
    return LieAlgebra(labels, structure)


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(tuple(f"E{i + 1}" for i in range(n)), {})


def kodaira_thurston() -> LieAlgebra:
    """Heisenberg times a line: the classical symplectic non-Lefschetz
    nilmanifold algebra."""
    return LieAlgebra(("X", "Y", "Z", "W"), {("X", "Y"): {"Z": 1}})


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    """Direct sum; clashing labels get .1/.2 suffixes."""
    clash = set(L1.labels) & set(L2.labels)
    lab1 = [f"{x}.1" if x in clash else x for x in L1.labels]
    lab2 = [f"{x}.2" if x in clash else x for x in L2.labels]
    structure = {}
    for L, labs, off in ((L1, lab1, 0), (L2, lab2, 0)):
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                rhs = {labs[k]: L.c[i][j][k]
                       for k in range(L.dim) if L.c[i][j][k] != 0}
                if rhs:
                    structure[(labs[i], labs[j])] = rhs
    return LieAlgebra(tuple(lab1) + tuple(lab2), structure)


def relabeled(L: LieAlgebra, mapping: dict[str, str]) -> LieAlgebra:
    """Same structure constants under new labels (a pure renaming)."""
    labels = tuple(mapping.get(x, x) for x in L.labels)
    structure = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            rhs = {labels[k]: L.c[i][j][k]
                   for k in range(L.dim) if L.c[i][j][k] != 0}
            if rhs:
                structure[(labels[i], labels[j])] = rhs
    return LieAlgebra(labels, structure)


def same_table(L1: LieAlgebra, L2: LieAlgebra) -> bool:
    """True iff the two algebras have identical structure constants after
    matching L2's basis order to L1's labels."""
    if sorted(L1.labels) != sorted(L2.labels):
        return False
    perm = [L2.index(x) for x in L1.labels]
    for i in range(L1.dim):
        for j in range(L1.dim):
            for k in range(L1.dim):
                if L1.c[i][j][k] != L2.c[perm[i]][perm[j]][perm[k]]:
                    return False
    return True


# ---------------------------------------------------------------------------
# algebra definition files
# ---------------------------------------------------------------------------

_BRACKET_LINE = re.compile(r"^\[\s*(?P<i>\w+)\s*,\s*(?P<j>\w+)\s*\]\s*=\s*(?P<rhs>.+)$")
_RHS_TERM = re.compile(r"^(?P<coeff>[-+]?\s*\d+(?:/\d+)?\s*\*\s*)?(?P<label>\w+)$")


def to_text(L: LieAlgebra) -> str:
    """Canonical text form: dim, basis, then one line per nonzero bracket."""
    lines = [f"dim {L.dim}", "basis " + " ".join(L.labels)]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            terms = [(k, L.c[i][j][k]) for k in range(L.dim) if L.c[i][j][k] != 0]
            if not terms:
                continue
            rhs = " + ".join(f"{c}*{L.labels[k]}" for k, c in terms)
            rhs = rhs.replace("+ -", "- ")
            lines.append(f"[{L.labels[i]}, {L.labels[j]}] = {rhs}")
    return "\n".join(lines) + "\n"


class AlgebraFileError(ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_algebra(text: str) -> LieAlgebra:
    """Parse the algebra definition format written by :func:`to_text`."""
    lines = [ln.strip() for ln in text.splitlines()]
    content = [(n + 1, ln) for n, ln in enumerate(lines)
               if ln and not ln.startswith("#")]
    if len(content) < 2:
        raise AlgebraFileError("expected 'dim N' and 'basis ...' lines", 1)
    (dim_no, dim_line), (basis_no, basis_line) = content[0], content[1]
    if not dim_line.startswith("dim "):
        raise AlgebraFileError("first line must be 'dim N'", dim_no)
    try:
        dim = int(dim_line[4:].strip())
    except ValueError:
        raise AlgebraFileError("dimension must be an integer", dim_no, 5)
    if not basis_line.startswith("basis "):
        raise AlgebraFileError("second line must be 'basis <labels>'", basis_no)
    labels = tuple(basis_line[6:].split())
    if len(labels) != dim:
        raise AlgebraFileError(f"expected {dim} labels, found {len(labels)}",
                               basis_no, 7)
    structure: dict = {}
    for line_no, line in content[2:]:
        m = _BRACKET_LINE.match(line)
        if not m:
            raise AlgebraFileError("expected '[Li, Lj] = c*Lk + ...'", line_no)
        li, lj = m.group("i"), m.group("j")
        for lab in (li, lj):
            if lab not in labels:
                raise AlgebraFileError(f"unknown label {lab!r}", line_no,
                                       line.find(lab) + 1)
        rhs: dict = {}
        text_rhs = m.group("rhs")
        # split on +/- while keeping signs attached
        pieces = re.findall(r"[-+]?[^-+]+", text_rhs.replace(" ", ""))
        for piece in pieces:
            sign = -1 if piece.startswith("-") else 1
            body = piece.lstrip("+-")
            tm = _RHS_TERM.match(body)
            if not tm:
                raise AlgebraFileError(f"bad term {piece!r}", line_no,
                                       line.find(piece.strip("+-")) + 1)
            label = tm.group("label")
            if label not in labels:
                raise AlgebraFileError(f"unknown label {label!r}", line_no,
                                       line.find(label) + 1)
            coeff = Fraction(tm.group("coeff").rstrip("* \t")) if tm.group("coeff") else Q(1)
            rhs[label] = rhs.get(label, Q(0)) + sign * coeff
        key = (li, lj)
        if key in structure or (lj, li) in structure:
            raise AlgebraFileError(f"duplicate bracket [{li}, {lj}]", line_no)
        structure[key] = rhs
    return LieAlgebra(labels, structure)
