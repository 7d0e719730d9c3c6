"""Multivariate polynomials over Q: monomial orders, Buchberger's algorithm,
elimination ideals, and Sylvester resultants.

Exponent vectors are dense tuples (every workload here has at most three
variables).  Polynomials are immutable; the reduced Groebner basis for a
fixed order is unique, which is what makes the downstream obstruction
pipelines deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Q = Fraction


class MonomialOrder:
    """Total multiplicative order on monomials: 'lex' or 'grevlex'.

    ``precedence`` lists variable indices from most to least significant.
    """

    __slots__ = ("kind", "precedence")

    def __init__(self, kind: str, precedence: Sequence[int]):
        if kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        if sorted(precedence) != list(range(len(precedence))):
            raise ValueError("precedence must be a permutation")
        self.kind = kind
        self.precedence = tuple(precedence)

    @classmethod
    def lex(cls, variables: Sequence[str], priority: Sequence[str] | None = None):
        return cls("lex", _precedence(variables, priority))

    @classmethod
    def grevlex(cls, variables: Sequence[str], priority: Sequence[str] | None = None):
        return cls("grevlex", _precedence(variables, priority))

    def key(self, exp: tuple[int, ...]):
        """Sort key: greater key = greater monomial."""
        if self.kind == "lex":
            if self.precedence == tuple(range(len(exp))):
                return exp
            return tuple(exp[i] for i in self.precedence)
        return (sum(exp), tuple(-exp[i] for i in reversed(self.precedence)))

    def key_func(self):
        """Key as a plain callable (fast path for identity-precedence lex)."""
        if self.kind == "lex" and self.precedence == tuple(range(len(self.precedence))):
            return lambda e: e
        return self.key

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and self.kind == other.kind
                and self.precedence == other.precedence)

    def __repr__(self):
        return f"MonomialOrder({self.kind}, precedence={self.precedence})"


def _precedence(variables, priority):
    if priority is None:
        return tuple(range(len(variables)))
    if sorted(priority) != sorted(variables):
        raise ValueError("priority must list every variable exactly once")
    return tuple(variables.index(v) for v in priority)


class MultiPoly:
    """Polynomial in a fixed ordered variable tuple, terms exponent -> coeff."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: dict | None = None):
        self.variables = tuple(variables)
        clean = {}
        n = len(self.variables)
        for exp, c in (terms or {}).items():
            c = Q(c)
            if c == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp}")
            clean[exp] = clean.get(exp, Q(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables, name) -> "MultiPoly":
        i = tuple(variables).index(name)
        exp = [0] * len(variables)
        exp[i] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "MultiPoly":
        return _parse_poly(text, tuple(variables))

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiPoly)
                and self.variables == other.variables
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Q(0)) + c
        return MultiPoly(self.variables, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Q(0)) + c1 * c2
        return MultiPoly(self.variables, out)

    def scale(self, c) -> "MultiPoly":
        c = Q(c)
        return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})

    def term_mul(self, coeff, exp: tuple[int, ...]) -> "MultiPoly":
        coeff = Q(coeff)
        return MultiPoly(self.variables,
                         {tuple(a + b for a, b in zip(e, exp)): coeff * c
                          for e, c in self.terms.items()})

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("variable tuples differ")

    # -- leading data -------------------------------------------------------

    def leading_exponent(self, order: MonomialOrder) -> tuple[int, ...]:
        if self.is_zero:
            raise ValueError("zero polynomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.terms[self.leading_exponent(order)]

    def monic(self, order: MonomialOrder) -> "MultiPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, as a polynomial in the same variables."""
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                reduced = list(e)
                reduced[i] = 0
                out[tuple(reduced)] = c
        return MultiPoly(self.variables, out)

    def uses(self, var: str) -> bool:
        return self.degree_in(var) > 0

    # -- evaluation / conversion --------------------------------------------

    def substitute(self, assignment: dict) -> "MultiPoly":
        """Substitute rational values for some variables; result keeps the
        same variable tuple with the substituted ones eliminated."""
        vals = {self.variables.index(k): Q(v) for k, v in assignment.items()}
        out: dict = {}
        for e, c in self.terms.items():
            coeff = c
            reduced = list(e)
            for i, v in vals.items():
                coeff *= v ** e[i]
                reduced[i] = 0
            key = tuple(reduced)
            out[key] = out.get(key, Q(0)) + coeff
        return MultiPoly(self.variables, out)

    def evaluate(self, assignment: dict) -> Fraction:
        r = self.substitute(assignment)
        if any(any(e) for e in r.terms):
            missing = [v for v in self.variables
                       if r.uses(v)]
            raise ValueError(f"variables left unassigned: {missing}")
        return r.terms.get((0,) * len(self.variables), Q(0))

    def restricted(self, variables: Sequence[str]) -> "MultiPoly":
        """Reinterpret over a sub/super tuple of variables (must not drop a
        variable that actually occurs)."""
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for v, power in zip(self.variables, e):
                if power:
                    if v not in pos:
                        raise ValueError(f"cannot drop used variable {v!r}")
                    new[pos[v]] = power
            out[tuple(new)] = c
        return MultiPoly(variables, out)

    def __str__(self):
        if self.is_zero:
            return "0"
        order = MonomialOrder.lex(self.variables)
        parts = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{v}^{p}" if p > 1 else v
                            for v, p in zip(self.variables, e) if p)
            if not mono:
                frag = str(c)
            elif abs(c) == 1:
                frag = ("-" if c < 0 else "") + mono
            else:
                frag = f"{c}*{mono}"
            parts.append(frag)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({str(self)})"


# ---------------------------------------------------------------------------
# division and Buchberger
# ---------------------------------------------------------------------------

def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly],
                order: MonomialOrder) -> MultiPoly:
    """Remainder of multivariate division of f by the basis.

    No monomial of the result is divisible by any basis leading monomial,
    and f minus the result lies in the ideal generated by the basis.
    """
    basis = [g for g in basis if not g.is_zero]
    if not basis:
        raise ValueError("empty basis")
    key = order.key_func()
    leads = [(g.leading_exponent(order), g.leading_coefficient(order), g)
             for g in basis]
    remainder: dict = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=key)
        c = work[e]
        for le, lc, g in leads:
            if _divides(le, e):
                shift = _exp_sub(e, le)
                factor = c / lc
                for ge, gc in g.terms.items():
                    k = tuple(a + b for a, b in zip(ge, shift))
                    v = work.get(k, Q(0)) - factor * gc
                    if v == 0:
                        work.pop(k, None)
                    else:
                        work[k] = v
                break
        else:
            remainder[e] = c
            del work[e]
    return MultiPoly(f.variables, remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    lf, lg = f.leading_exponent(order), g.leading_exponent(order)
    lcm = _exp_lcm(lf, lg)
    return (f.term_mul(1 / f.leading_coefficient(order), _exp_sub(lcm, lf))
            - g.term_mul(1 / g.leading_coefficient(order), _exp_sub(lcm, lg)))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: unique for a fixed monomial order."""

    order: MonomialOrder
    generators: tuple[MultiPoly, ...]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def reduce(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self.generators, self.order)

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero


def buchberger(gens: Iterable[MultiPoly], order: MonomialOrder) -> GroebnerBasis:
    """Buchberger's algorithm with the coprimality and chain criteria,
    normal (smallest-lcm-first) pair selection, and final interreduction."""
    import heapq

    basis = [g for g in gens if not g.is_zero]
    if not basis:
        raise ValueError("no nonzero generators")
    variables = basis[0].variables
    basis = [g.monic(order) for g in basis]
    leads = [g.leading_exponent(order) for g in basis]
    key = order.key_func()

    heap: list = []
    pending: set = set()

    def push(i, j):
        lcm = _exp_lcm(leads[i], leads[j])
        heapq.heappush(heap, (key(lcm), i, j, lcm))
        pending.add((i, j))

    for i in range(len(basis)):
        for j in range(i):
            push(i, j)

    def chain_skip(i, j, lcm):
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(leads[k], lcm):
                a = (max(i, k), min(i, k))
                b = (max(j, k), min(j, k))
                if a not in pending and b not in pending:
                    return True
        return False

    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        if lcm == tuple(a + b for a, b in zip(leads[i], leads[j])):
            continue  # coprime leading monomials: S-poly reduces to zero
        if chain_skip(i, j, lcm):
            continue
        s = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if s.is_zero:
            continue
        s = s.monic(order)
        basis.append(s)
        leads.append(s.leading_exponent(order))
        new = len(basis) - 1
        for k in range(new):
            push(new, k)

    return _interreduce(basis, order, variables)


def _interreduce(basis, order, variables) -> GroebnerBasis:
    # minimalize: drop generators whose lead is divisible by another lead
    basis = sorted(basis, key=lambda g: order.key(g.leading_exponent(order)))
    minimal = []
    for g in basis:
        le = g.leading_exponent(order)
        if not any(_divides(h.leading_exponent(order), le) for h in minimal):
            minimal.append(g)
    # tail-reduce each against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        if others:
            g = normal_form(g, others, order)
        reduced.append(g.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading_exponent(order)))
    return GroebnerBasis(order, tuple(reduced))


def eliminate(gens: Sequence[MultiPoly], drop: Iterable[str]) -> list[MultiPoly]:
    """Generators of the elimination ideal: intersect the ideal with the
    subring omitting ``drop``.  Uses a lex basis with dropped variables
    greatest; the result is over the remaining variables."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValueError("no nonzero generators")
    variables = gens[0].variables
    drop = set(drop)
    if not drop < set(variables):
        raise ValueError("drop must be a proper subset of the variables")
    priority = [v for v in variables if v in drop] + \
               [v for v in variables if v not in drop]
    order = MonomialOrder.lex(variables, priority)
    gb = buchberger(gens, order)
    keep = tuple(v for v in variables if v not in drop)
    return [g.restricted(keep) for g in gb
            if not any(g.uses(v) for v in drop)]


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _poly_exact_div(a: MultiPoly, b: MultiPoly, order: MonomialOrder) -> MultiPoly:
    """Exact quotient a / b (raises if the division leaves a remainder)."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    out: dict = {}
    lb = b.leading_exponent(order)
    cb = b.leading_coefficient(order)
    rem = a
    while not rem.is_zero:
        le = rem.leading_exponent(order)
        if not _divides(lb, le):
            raise ArithmeticError("inexact polynomial division")
        shift = _exp_sub(le, lb)
        coeff = rem.leading_coefficient(order) / cb
        out[shift] = out.get(shift, Q(0)) + coeff
        rem = rem - b.term_mul(coeff, shift)
    return MultiPoly(a.variables, out)


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant of f and g with respect to ``var``: the determinant of the
    Sylvester matrix, a polynomial in the remaining variables.  It vanishes
    at a parameter point iff f and g share a root there (or both leading
    coefficients vanish)."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of zero polynomial")
    df, dg = f.degree_in(var), g.degree_in(var)
    if df <= 0 and dg <= 0:
        raise ValueError("both polynomials constant in " + var)
    variables = f.variables
    fc = [f.coefficient_of(var, k) for k in range(df + 1)]
    gc = [g.coefficient_of(var, k) for k in range(dg + 1)]
    n = df + dg
    zero = MultiPoly.zero(variables)
    rows = []
    for i in range(dg):
        row = [zero] * n
        for k in range(df + 1):
            row[i + k] = fc[df - k]
        rows.append(row)
    for i in range(df):
        row = [zero] * n
        for k in range(dg + 1):
            row[i + k] = gc[dg - k]
        rows.append(row)
    return _poly_det_bareiss(rows, variables)


def _poly_det_bareiss(rows: list[list[MultiPoly]], variables) -> MultiPoly:
    """Determinant over the polynomial ring by fraction-free elimination;
    every division below is exact by the Bareiss identity."""
    n = len(rows)
    if n == 0:
        return MultiPoly.constant(variables, 1)
    order = MonomialOrder.grevlex(variables)
    m = [row[:] for row in rows]
    prev = MultiPoly.constant(variables, 1)
    sign = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not m[r][k].is_zero), None)
        if piv is None:
            return MultiPoly.zero(variables)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                num = m[k][k] * m[r][c] - m[r][k] * m[k][c]
                m[r][c] = _poly_exact_div(num, prev, order) if not num.is_zero \
                    else MultiPoly.zero(variables)
            m[r][k] = MultiPoly.zero(variables)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det.scale(sign)


# ---------------------------------------------------------------------------
# plain-text polynomial syntax
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad character at position {pos}: {text[pos]!r}")
            break
        pos = m.end()
        if m.group("num"):
            out.append(("num", int(m.group("num"))))
        elif m.group("ident"):
            out.append(("ident", m.group("ident")))
        else:
            out.append(("op", m.group("op")))
    return out


class _Parser:
    """Recursive descent for terms like ``x^5 - m*x^2 + x + 1``."""

    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> MultiPoly:
        sign = 1
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            sign = -1
        elif (kind, val) == ("op", "+"):
            self.take()
        acc = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "+"):
                self.take()
                acc = acc + self.term()
            elif (kind, val) == ("op", "-"):
                self.take()
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.factor()
            elif kind in ("ident", "num") or (kind, val) == ("op", "("):
                acc = acc * self.factor()  # implicit product, e.g. "2x"
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        kind, val = self.peek()
        if (kind, val) == ("op", "^"):
            self.take()
            k, v = self.take()
            if k != "num":
                raise ValueError("exponent must be a nonnegative integer")
            out = MultiPoly.constant(self.variables, 1)
            for _ in range(v):
                out = out * base
            return out
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.take()
        if kind == "num":
            k2, v2 = self.peek()
            if (k2, v2) == ("op", "/"):
                self.take()
                k3, v3 = self.take()
                if k3 != "num" or v3 == 0:
                    raise ValueError("bad rational literal")
                return MultiPoly.constant(self.variables, Q(val, v3))
            return MultiPoly.constant(self.variables, val)
        if kind == "ident":
            if val not in self.variables:
                raise ValueError(f"unknown variable {val!r}")
            return MultiPoly.variable(self.variables, val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


def _parse_poly(text: str, variables: tuple[str, ...]) -> MultiPoly:
    parser = _Parser(_tokenize(text), variables)
    poly = parser.expr()
    if parser.pos != len(parser.tokens):
        raise ValueError(f"trailing input at token {parser.pos}")
    return poly
