"""The differential-operator algebras on Laurent polynomial rings.

Basis monomials are t^m D^n with m an integer vector and n a vector of
non-negative integers, one slot per variable, where D_i = t_i d/dt_i.  At
rank 1 the algebra carries a universal one-dimensional central extension; the
central generator is written C.  The convention 0^0 = 1 is used throughout
(Python's ** already does this), which is what makes the structure-constant
sums collapse correctly when an exponent base vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import comb

from .scalars import ParamDecl, RATIONALS, Scalar


class CtxMismatch(ValueError):
    """Operands live over different algebra contexts."""


class CentralUnsupported(ValueError):
    """Operation undefined in the presence of the central element."""


@dataclass(frozen=True)
class AlgebraCtx:
    """Which algebra we are in: rank nu, optionally centrally extended."""

    rank: int = 1
    central: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        if self.central and self.rank != 1:
            raise CentralUnsupported(
                "the central extension exists only at rank 1"
            )

    # -- element constructors ----------------------------------------------

    def zero(self, decl: ParamDecl = RATIONALS) -> "DiffOp":
        return DiffOp(self, {}, decl.zero)

    def basis(self, m, n, coeff=1, decl: ParamDecl = RATIONALS) -> "DiffOp":
        m = (m,) if isinstance(m, int) else tuple(m)
        n = (n,) if isinstance(n, int) else tuple(n)
        if len(m) != self.rank or len(n) != self.rank:
            raise ValueError(f"multi-index arity must be {self.rank}")
        if any(k < 0 for k in n):
            raise ValueError("D exponents must be non-negative")
        c = coeff if isinstance(coeff, Scalar) else decl.rational(coeff)
        return DiffOp(self, {(m, n): c} if c else {}, c.decl.zero)

    def t(self, m: int = 1, coeff=1) -> "DiffOp":
        return self.basis((m,) + (0,) * (self.rank - 1), (0,) * self.rank, coeff)

    def d_op(self, n: int = 1, coeff=1) -> "DiffOp":
        return self.basis((0,) * self.rank, (n,) + (0,) * (self.rank - 1), coeff)

    def vir_l(self, m: int, coeff=1) -> "DiffOp":
        """Witt generator t^m D (rank 1)."""
        if self.rank != 1:
            raise ValueError("vir_l is a rank-1 constructor")
        return self.basis((m,), (1,), coeff)

    def heis_i(self, m: int, coeff=1) -> "DiffOp":
        """Degree-m multiplication operator t^m (rank 1)."""
        if self.rank != 1:
            raise ValueError("heis_i is a rank-1 constructor")
        return self.basis((m,), (0,), coeff)

    def center(self, coeff=1, decl: ParamDecl = RATIONALS) -> "DiffOp":
        if not self.central:
            raise CentralUnsupported("context has no central element")
        c = coeff if isinstance(coeff, Scalar) else decl.rational(coeff)
        return DiffOp(self, {}, c)


D_ALG = AlgebraCtx(1, central=False)
D_HAT = AlgebraCtx(1, central=True)


def term_sort_key(key):
    """Canonical printing order: m ascending, then n descending."""
    m, n = key
    return (m, tuple(-k for k in n))


class DiffOp:
    """Finite linear combination of basis monomials plus a central part."""

    __slots__ = ("ctx", "terms", "central")

    def __init__(self, ctx: AlgebraCtx, terms, central: Scalar | None = None):
        self.ctx = ctx
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}
        self.central = central if central is not None else RATIONALS.zero
        if not ctx.central and not self.central.is_zero():
            raise CentralUnsupported("central coefficient in a centerless context")

    # -- linear structure ----------------------------------------------------

    def _check(self, other: "DiffOp"):
        if self.ctx != other.ctx:
            raise CtxMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            nc = terms.get(k)
            nc = c if nc is None else nc + c
            if nc.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = nc
        return DiffOp(self.ctx, terms, self.central + other.central)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.ctx, {k: -c for k, c in self.terms.items()}, -self.central)

    def scale(self, s) -> "DiffOp":
        if not isinstance(s, Scalar):
            s = RATIONALS.rational(s)
        return DiffOp(
            self.ctx,
            {k: c * s for k, c in self.terms.items()},
            self.central * s,
        )

    def is_zero(self) -> bool:
        return not self.terms and self.central.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.terms == other.terms
            and self.central == other.central
        )

    def __hash__(self):
        return hash(
            (self.ctx, frozenset(self.terms.items()), self.central)
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for key in sorted(self.terms, key=term_sort_key):
            parts.append(_term_str(self.terms[key], _monomial_str(key)))
        if not self.central.is_zero():
            parts.append(_term_str(self.central, "C"))
        out = []
        for piece, negated in parts:
            if not out:
                out.append(piece if not negated else "-" + piece)
            else:
                out.append((" - " if negated else " + ") + piece)
        return "".join(out)

    def __repr__(self):
        return f"DiffOp({self})"

    def to_json(self) -> dict:
        items = []
        for (m, n) in sorted(self.terms, key=term_sort_key):
            items.append({
                "m": list(m),
                "n": list(n),
                "coeff": self.terms[(m, n)].to_json(),
            })
        out = {"rank": self.ctx.rank, "terms": items}
        if self.ctx.central:
            out["central"] = self.central.to_json()
        return out


def _monomial_str(key) -> str:
    m, n = key
    rank = len(m)
    factors = []
    for i in range(rank):
        name = "t" if rank == 1 else f"t{i + 1}"
        if m[i] != 0:
            factors.append(name if m[i] == 1 else f"{name}^{m[i]}")
    for i in range(rank):
        name = "D" if rank == 1 else f"D{i + 1}"
        if n[i] != 0:
            factors.append(name if n[i] == 1 else f"{name}^{n[i]}")
    return "*".join(factors)


def _coeff_prefix(coeff: Scalar):
    """Render a coefficient as a prefix 'c*'; returns (prefix, negated)."""
    if coeff.is_rational():
        q = coeff.rational_value()
        neg = q < 0
        q = abs(q)
        return ("" if q == 1 else f"{q}*", neg)
    if coeff.is_monomial():
        (mono, q), = coeff.terms.items()
        neg = q < 0
        body = Scalar(coeff.decl, {mono: abs(q)})
        return (f"{body}*", neg)
    return (f"({coeff})*", False)


def _term_str(coeff: Scalar, body: str):
    """One rendered additive term; returns (text without sign, negated)."""
    if not body:
        if coeff.is_rational():
            q = coeff.rational_value()
            return (str(abs(q)), q < 0)
        if coeff.is_monomial():
            (mono, q), = coeff.terms.items()
            return (str(Scalar(coeff.decl, {mono: abs(q)})), q < 0)
        return (f"({coeff})", False)
    prefix, neg = _coeff_prefix(coeff)
    return (prefix + body, neg)


# ---------------------------------------------------------------------------
# Structure constants
# ---------------------------------------------------------------------------


def basis_product(m1, n1, m2, n2) -> dict:
    """(t^m1 D^n1)(t^m2 D^n2) as {(m, n): integer coefficient}.

    The product factors across variables:
    per slot, D^a t^b = sum_i C(a, i) b^i t^b D^(a-i).
    """
    m = tuple(x + y for x, y in zip(m1, m2))
    out = {}
    ranges = [range(a + 1) for a in n1]
    for idx in iproduct(*ranges):
        coeff = 1
        for a, i, b in zip(n1, idx, m2):
            coeff *= comb(a, i) * b ** i
        if coeff == 0:
            continue
        n = tuple(a + c - i for a, c, i in zip(n1, n2, idx))
        out[(m, n)] = out.get((m, n), 0) + coeff
    return {k: v for k, v in out.items() if v}


def basis_bracket(m1, n1, m2, n2) -> dict:
    """[t^m1 D^n1, t^m2 D^n2] as {(m, n): integer coefficient} (no center)."""
    out = basis_product(m1, n1, m2, n2)
    for k, v in basis_product(m2, n2, m1, n1).items():
        nv = out.get(k, 0) - v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def cocycle_basis(m1: int, n1: int, m2: int, n2: int) -> Fraction:
    """Central 2-cocycle value on rank-1 basis monomials.

    Nonzero only for m1 + m2 = 0, m1 != 0.  For m1 > 0 it is the signed
    half-sum (-1)^(n1+1)/2 * sum_{i=1..m1} (m1-i)^n1 i^n2 with 0^0 = 1; the
    m1 < 0 value is fixed by antisymmetry, which also matches the pullback
    of the standard gl_infinity cocycle along t^m D^n -> sum_j j^n E_{j+m,j}.
    """
    if m1 == 0 or m1 + m2 != 0:
        return Fraction(0)
    if m1 > 0:
        s = sum((m1 - i) ** n1 * i ** n2 for i in range(1, m1 + 1))
        return Fraction((-1) ** (n1 + 1) * s, 2)
    return -cocycle_basis(m2, n2, m1, n1)


def assoc_product(a: DiffOp, b: DiffOp) -> DiffOp:
    """Associative product; defined on the centerless algebras only."""
    a._check(b)
    if a.ctx.central:
        raise CentralUnsupported("the associative product ignores the center; "
                                 "use a centerless context")
    terms: dict = {}
    for (m1, n1), c1 in a.terms.items():
        for (m2, n2), c2 in b.terms.items():
            c = c1 * c2
            for key, k in basis_product(m1, n1, m2, n2).items():
                nc = terms.get(key)
                add = c * k
                nc = add if nc is None else nc + add
                if nc.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = nc
    return DiffOp(a.ctx, terms)


def bracket(a: DiffOp, b: DiffOp) -> DiffOp:
    """Lie bracket; adds the cocycle term in the centrally extended context.

    Central components of the inputs commute with everything and contribute
    nothing; the cocycle pairs only the operator parts.
    """
    a._check(b)
    terms: dict = {}
    central = None
    for (m1, n1), c1 in a.terms.items():
        for (m2, n2), c2 in b.terms.items():
            c = c1 * c2
            for key, k in basis_bracket(m1, n1, m2, n2).items():
                nc = terms.get(key)
                add = c * k
                nc = add if nc is None else nc + add
                if nc.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = nc
            if a.ctx.central:
                phi = cocycle_basis(m1[0], n1[0], m2[0], n2[0])
                if phi:
                    add = c * phi
                    central = add if central is None else central + add
    if a.ctx.central:
        if central is None:
            central = a.central.decl.zero if not a.central.decl.is_empty else RATIONALS.zero
        return DiffOp(a.ctx, terms, central)
    return DiffOp(a.ctx, terms)


def cocycle_phi(a: DiffOp, b: DiffOp) -> Scalar:
    """Bilinear extension of the central 2-cocycle (rank 1 only).

    Central components of the arguments are ignored: the cocycle is defined
    on the underlying operator algebra.
    """
    if a.ctx.rank != 1 or b.ctx.rank != 1:
        raise CentralUnsupported("the cocycle is defined at rank 1 only")
    acc = RATIONALS.zero
    for (m1, n1), c1 in a.terms.items():
        for (m2, n2), c2 in b.terms.items():
            phi = cocycle_basis(m1[0], n1[0], m2[0], n2[0])
            if phi:
                acc = acc + c1 * c2 * phi
    return acc


def grade_components(a: DiffOp) -> dict:
    """Split into graded pieces keyed by the t-degree vector; C sits in 0."""
    buckets: dict = {}
    for (m, n), c in a.terms.items():
        buckets.setdefault(m, {})[(m, n)] = c
    zero = (0,) * a.ctx.rank
    if not a.central.is_zero():
        buckets.setdefault(zero, {})
    out = {}
    for m, terms in buckets.items():
        central = a.central if (m == zero and not a.central.is_zero()) else None
        out[m] = DiffOp(a.ctx, terms, central)
    return out


# ---------------------------------------------------------------------------
# Generator-closure probe
# ---------------------------------------------------------------------------


@dataclass
class SpanProbeReport:
    reached: list
    missing: list
    dimension: int
    depth_used: int


def generated_span_probe(generators, m_bound: int, n_bound: int, depth: int) -> SpanProbeReport:
    """Close the span of ``generators`` under the bracket inside a window.

    Bracket results are truncated to the window |m_i| <= m_bound,
    n_i <= n_bound after each step (terms outside are discarded), so the
    probe reports which windowed basis monomials are certainly reachable;
    a monomial listed as missing may still be reachable through larger
    intermediates.
    """
    if not generators:
        raise ValueError("need at least one generator")
    ctx = generators[0].ctx
    if ctx.central:
        raise CentralUnsupported("span probe works in the centerless algebra")
    rank = ctx.rank

    def in_window(key):
        m, n = key
        return all(abs(x) <= m_bound for x in m) and all(x <= n_bound for x in n)

    def clip(vec: dict) -> dict:
        return {k: c for k, c in vec.items() if in_window(k) and c}

    basis_keys = [
        (m, n)
        for m in iproduct(*[range(-m_bound, m_bound + 1)] * rank)
        for n in iproduct(*[range(n_bound + 1)] * rank)
    ]
    basis_keys.sort(key=term_sort_key)

    # Vectors over the window with Fraction entries; echelon by first
    # nonzero coordinate in the canonical term order.
    key_pos = {k: i for i, k in enumerate(basis_keys)}

    def reduce_against(pivots: dict, vec: dict) -> dict:
        v = dict(vec)
        while v:
            lead = min(v, key=lambda k: key_pos[k])
            row = pivots.get(lead)
            if row is None:
                return v
            f = v[lead] / row[lead]
            for k, c in row.items():
                nc = v.get(k, 0) - f * c
                if nc:
                    v[k] = nc
                else:
                    v.pop(k, None)
        return v

    pivots: dict = {}
    frontier = []
    for g in generators:
        vec = clip({k: c.rational_value() for k, c in g.terms.items()})
        v = reduce_against(pivots, vec)
        if v:
            pivots[min(v, key=lambda k: key_pos[k])] = v
            frontier.append(v)

    depth_used = 0
    for step in range(depth):
        if not frontier:
            break
        new_frontier = []
        # bracket every frontier vector against every current pivot row
        rows = list(pivots.values())
        for v in frontier:
            for w in rows:
                prod: dict = {}
                for (m1, n1), c1 in v.items():
                    for (m2, n2), c2 in w.items():
                        for key, k in basis_bracket(m1, n1, m2, n2).items():
                            if not in_window(key):
                                continue
                            nc = prod.get(key, 0) + c1 * c2 * k
                            if nc:
                                prod[key] = nc
                            else:
                                prod.pop(key, None)
                r = reduce_against(pivots, prod)
                if r:
                    pivots[min(r, key=lambda k: key_pos[k])] = r
                    new_frontier.append(r)
        if new_frontier:
            depth_used = step + 1
        frontier = new_frontier

    reached = []
    missing = []
    for key in basis_keys:
        unit = {key: Fraction(1)}
        if not reduce_against(pivots, unit):
            reached.append(key)
        else:
            missing.append(key)
    return SpanProbeReport(reached, missing, len(pivots), depth_used)
