"""Polynomial module families that are free of rank 1 over the Cartan part.

Four families live on polynomial rings in x_1..x_nu with exact coefficients:

* family ``d`` (rank 1) and ``dnu`` (any rank): the differential-operator
  algebra acts by t^m D^n . f = beta^(1-|n|) Lambda^m prod_i (x_i - eps*m_i)^{n_i}
  f(x - m), with eps in {0, 1} and beta = (-1)^(1-eps);
* family ``vir``: the vector-field subalgebra acts through
  L_m . f = lambda^m (x - m*alpha) f(x - m) with the center acting by zero;
* family ``hv``: adds the degree-zero multiplication operators,
  I_m . f = beta * lambda^m f(x - m).

Shifts f(x - m) are expanded by exact binomials; everything stays in the
Laurent-polynomial coefficient ring, so identities checked with symbolic
parameters hold for every nonzero complex instantiation at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import comb

from .scalars import RATIONALS, Scalar, SpanBasis
from .liealg import AlgebraCtx, DiffOp, bracket, assoc_product


class FamilyMismatch(ValueError):
    """Operator or vector fed to a module of the wrong family or rank."""


_FAMILIES = ("d", "vir", "hv", "dnu")


@dataclass(frozen=True)
class OmegaSpec:
    """Parameters of one polynomial module.

    ``lam`` holds one invertible scalar per variable.  ``eps`` selects the
    sign structure for the d/dnu families (beta_sign = (-1)^(1-eps));
    ``alpha``/``beta`` are the vir/hv parameters.
    """

    family: str
    lam: tuple
    eps: int | None = None
    alpha: Scalar | None = None
    beta: Scalar | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise FamilyMismatch(f"unknown family {self.family!r}")
        if not self.lam:
            raise ValueError("need at least one lambda parameter")
        for s in self.lam:
            if not (s.is_unit() or (s.is_rational() and not s.is_zero())):
                raise ValueError(f"lambda component {s} is not invertible")
        if self.family in ("d", "dnu"):
            if self.eps not in (0, 1):
                raise ValueError("eps must be 0 or 1")
        else:
            if len(self.lam) != 1:
                raise ValueError("vir/hv modules are rank 1")
            if self.alpha is None:
                raise ValueError("alpha required for vir/hv modules")
            if self.family == "hv" and self.beta is None:
                raise ValueError("beta required for hv modules")
        if self.family == "d" and len(self.lam) != 1:
            raise ValueError("family 'd' is rank 1; use 'dnu' for higher rank")

    @property
    def rank(self) -> int:
        return len(self.lam)

    @property
    def beta_sign(self) -> int:
        """(-1)^(1-eps); +1 exactly when eps = 1."""
        if self.eps is None:
            raise FamilyMismatch("beta_sign is defined for the d/dnu families")
        return (-1) ** (1 - self.eps)

    def lam_power(self, m) -> Scalar:
        out = None
        for s, k in zip(self.lam, m):
            p = s ** k
            out = p if out is None else out * p
        return out

    def zero_vec(self) -> "PolyVec":
        return PolyVec(self, {})

    def monomial(self, exps, coeff=1) -> "PolyVec":
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        if len(exps) != self.rank:
            raise ValueError(f"need {self.rank} exponents")
        if any(e < 0 for e in exps):
            raise ValueError("x exponents must be non-negative")
        c = coeff if isinstance(coeff, Scalar) else RATIONALS.rational(coeff)
        return PolyVec(self, {exps: c} if c else {})

    def one_vec(self) -> "PolyVec":
        return self.monomial((0,) * self.rank)


def omega_d(lam: Scalar, eps: int) -> OmegaSpec:
    return OmegaSpec("d", (lam,), eps=eps)

def omega_dnu(lams, eps: int) -> OmegaSpec:
    return OmegaSpec("dnu", tuple(lams), eps=eps)

def omega_vir(lam: Scalar, alpha: Scalar) -> OmegaSpec:
    return OmegaSpec("vir", (lam,), alpha=alpha)

def omega_hv(lam: Scalar, alpha: Scalar, beta: Scalar) -> OmegaSpec:
    return OmegaSpec("hv", (lam,), alpha=alpha, beta=beta)


class PolyVec:
    """Element of a polynomial module: sparse exponent map with Scalar values."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: OmegaSpec, terms):
        self.spec = spec
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero vector."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __add__(self, other: "PolyVec") -> "PolyVec":
        if self.spec != other.spec:
            raise FamilyMismatch("vectors live in different modules")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            nc = terms.get(e)
            nc = c if nc is None else nc + c
            if nc.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = nc
        return PolyVec(self.spec, terms)

    def __sub__(self, other: "PolyVec") -> "PolyVec":
        return self + other.scale(-1)

    def __neg__(self) -> "PolyVec":
        return self.scale(-1)

    def scale(self, s) -> "PolyVec":
        if not isinstance(s, Scalar):
            s = RATIONALS.rational(s)
        return PolyVec(self.spec, {e: c * s for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyVec):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __str__(self):
        from .liealg import _term_str
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            body = []
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                name = "x" if self.spec.rank == 1 else f"x{i + 1}"
                body.append(name if e == 1 else f"{name}^{e}")
            parts.append(_term_str(self.terms[exps], "*".join(body)))
        out = []
        for piece, negated in parts:
            if not out:
                out.append(piece if not negated else "-" + piece)
            else:
                out.append((" - " if negated else " + ") + piece)
        return "".join(out)

    def __repr__(self):
        return f"PolyVec({self})"

    def to_json(self) -> dict:
        spec = {"family": self.spec.family, "rank": self.spec.rank}
        if self.spec.eps is not None:
            spec["eps"] = self.spec.eps
        return {
            "spec": spec,
            "monomials": [
                {"exps": list(e), "coeff": self.terms[e].to_json()}
                for e in sorted(self.terms)
            ],
        }


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------


def _shift_factor_1d(n_pow: int, eps_m: int, shift: int, j: int) -> dict:
    """(x - eps_m)^n_pow * (x - shift)^j expanded: {exponent: int}."""
    out = {}
    for a in range(n_pow + 1):
        ca = comb(n_pow, a) * (-eps_m) ** (n_pow - a)
        if ca == 0 and not (eps_m == 0 and a == n_pow):
            continue
        for b in range(j + 1):
            cb = comb(j, b) * (-shift) ** (j - b)
            if cb == 0:
                continue
            e = a + b
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _basis_act_ints(eps: int, m, n, j) -> dict:
    """Integer part of t^m D^n acting on x^j: {exponents: int coefficient}.

    Covers prod_i (x_i - eps*m_i)^{n_i} (x_i - m_i)^{j_i}; the caller applies
    the beta sign and the Lambda^m prefactor.
    """
    per_var = [
        _shift_factor_1d(n[i], eps * m[i], m[i], j[i]) for i in range(len(m))
    ]
    out = {}
    for combo in iproduct(*[list(d.items()) for d in per_var]):
        exps = tuple(e for e, _ in combo)
        coeff = 1
        for _, c in combo:
            coeff *= c
        out[exps] = out.get(exps, 0) + coeff
    return out


def act(op: DiffOp, v: PolyVec) -> PolyVec:
    """Action of the (extended) differential-operator algebra; C acts by 0."""
    spec = v.spec
    if spec.family not in ("d", "dnu"):
        raise FamilyMismatch(f"act expects a d/dnu module, got {spec.family!r}")
    if op.ctx.rank != spec.rank:
        raise FamilyMismatch(
            f"operator rank {op.ctx.rank} vs module rank {spec.rank}"
        )
    beta = spec.beta_sign
    out: dict = {}
    for (m, n), c in op.terms.items():
        sign = beta ** ((1 - sum(n)) % 2)
        prefactor = c * spec.lam_power(m) * sign
        for j, fc in v.terms.items():
            coeff = prefactor * fc
            for exps, k in _basis_act_ints(spec.eps, m, n, j).items():
                nc = out.get(exps)
                add = coeff * k
                nc = add if nc is None else nc + add
                if nc.is_zero():
                    out.pop(exps, None)
                else:
                    out[exps] = nc
    return PolyVec(spec, out)


def _shift_poly(f: PolyVec, m: int) -> dict:
    """f(x - m) for a rank-1 vector, as a raw exponent map."""
    out: dict = {}
    for (j,), c in f.terms.items():
        for b in range(j + 1):
            k = comb(j, b) * (-m) ** (j - b)
            if k == 0:
                continue
            key = (b,)
            nc = out.get(key)
            add = c * k
            nc = add if nc is None else nc + add
            if nc.is_zero():
                out.pop(key, None)
            else:
                out[key] = nc
    return out


def act_vir(spec: OmegaSpec, m: int, f: PolyVec) -> PolyVec:
    """L_m f = lambda^m (x - m*alpha) f(x - m); the center acts by zero."""
    if spec.family != "vir":
        raise FamilyMismatch(f"act_vir expects a vir module, got {spec.family!r}")
    shifted = _shift_poly(f, m)
    lam_m = spec.lam[0] ** m
    out: dict = {}
    malpha = spec.alpha * m
    for (j,), c in shifted.items():
        top = out.get((j + 1,))
        add = c * lam_m
        out[(j + 1,)] = add if top is None else top + add
        low = out.get((j,))
        sub = add * malpha
        low = -sub if low is None else low - sub
        if low.is_zero():
            out.pop((j,), None)
        else:
            out[(j,)] = low
    return PolyVec(spec, {e: c for e, c in out.items() if not c.is_zero()})


def act_hv(spec: OmegaSpec, gen, f: PolyVec) -> PolyVec:
    """Action of L_m or I_m on the two-parameter rank-1 family.

    ``gen`` is ("L", m) or ("I", m); I_m f = beta * lambda^m f(x - m).
    """
    if spec.family != "hv":
        raise FamilyMismatch(f"act_hv expects an hv module, got {spec.family!r}")
    kind, m = gen
    lam_m = spec.lam[0] ** m
    if kind == "I":
        shifted = _shift_poly(f, m)
        s = lam_m * spec.beta
        return PolyVec(spec, {e: c * s for e, c in shifted.items()})
    if kind != "L":
        raise ValueError(f"generator kind must be 'L' or 'I', got {kind!r}")
    shifted = _shift_poly(f, m)
    out: dict = {}
    malpha = spec.alpha * m
    for (j,), c in shifted.items():
        add = c * lam_m
        top = out.get((j + 1,))
        out[(j + 1,)] = add if top is None else top + add
        low = out.get((j,))
        sub = add * malpha
        low = -sub if low is None else low - sub
        if low.is_zero():
            out.pop((j,), None)
        else:
            out[(j,)] = low
    return PolyVec(spec, {e: c for e, c in out.items() if not c.is_zero()})


# ---------------------------------------------------------------------------
# Module-axiom verification
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    ok: bool
    checked: int
    counterexample: tuple | None = None


def _family_generators(spec: OmegaSpec, m_bound: int, n_bound: int):
    """(label, apply) pairs for the family's basis operators within bounds."""
    gens = []
    if spec.family in ("d", "dnu"):
        ctx = AlgebraCtx(spec.rank, central=False)
        for m in iproduct(*[range(-m_bound, m_bound + 1)] * spec.rank):
            for n in iproduct(*[range(n_bound + 1)] * spec.rank):
                gens.append(((m, n), ctx.basis(m, n)))
    elif spec.family == "vir":
        for m in range(-m_bound, m_bound + 1):
            gens.append((("L", m), ("L", m)))
    else:
        for m in range(-m_bound, m_bound + 1):
            gens.append((("L", m), ("L", m)))
            gens.append((("I", m), ("I", m)))
    return gens


def _hv_bracket_terms(g1, g2):
    """Bracket of L/I generators in the degree-(0,1) subalgebra.

    [L_m, L_n] = (n-m) L_{m+n}; [L_m, I_n] = n I_{m+n}; [I_m, I_n] = 0.
    """
    k1, m = g1
    k2, n = g2
    if k1 == "L" and k2 == "L":
        return [(("L", m + n), Fraction(n - m))]
    if k1 == "L" and k2 == "I":
        return [(("I", m + n), Fraction(n))]
    if k1 == "I" and k2 == "L":
        return [(("I", m + n), Fraction(-m))]
    return []


def verify_module_axiom(
    spec: OmegaSpec,
    m_bound: int,
    n_bound: int,
    deg_bound: int,
    action=None,
    ordered_pairs: bool = False,
) -> AxiomReport:
    """Check [a,b].f = a.(b.f) - b.(a.f) over basis operators and monomials.

    With symbolic parameters this certifies the action for all admissible
    parameter values at once.  By default unordered pairs (a <= b) are
    checked; the swapped identity is the exact negation, so coverage over
    ordered pairs follows from bilinearity.  ``action`` may override the
    module action (used by mutation tests).
    """
    rank = spec.rank
    if spec.family in ("d", "dnu"):
        if rank >= 2 and action is None:
            return _verify_axiom_dnu_fast(spec, m_bound, n_bound, deg_bound)
        ctx = AlgebraCtx(rank, central=False)
        act_fn = action if action is not None else act
        gens = _family_generators(spec, m_bound, n_bound)
        monos = [
            spec.monomial(e)
            for e in iproduct(*[range(deg_bound + 1)] * rank)
            if sum(e) <= deg_bound
        ]
        checked = 0
        for i, (la, a) in enumerate(gens):
            start = 0 if ordered_pairs else i
            for lb, b in gens[start:]:
                br = bracket(a, b)
                for f in monos:
                    lhs = act_fn(br, f)
                    rhs = act_fn(a, act_fn(b, f)) - act_fn(b, act_fn(a, f))
                    checked += 1
                    if lhs != rhs:
                        return AxiomReport(False, checked, (la, lb, f, lhs, rhs))
        return AxiomReport(True, checked)

    # vir / hv families act through named generators
    apply_fn = action
    if apply_fn is None:
        apply_fn = (lambda g, f: act_vir(spec, g[1], f)) if spec.family == "vir" \
            else (lambda g, f: act_hv(spec, g, f))
    gens = [g for _, g in _family_generators(spec, m_bound, n_bound)]
    monos = [spec.monomial((k,)) for k in range(deg_bound + 1)]
    checked = 0
    for i, a in enumerate(gens):
        start = 0 if ordered_pairs else i
        for b in gens[start:]:
            if spec.family == "vir":
                terms = [(("L", a[1] + b[1]), Fraction(b[1] - a[1]))]
            else:
                terms = _hv_bracket_terms(a, b)
            for f in monos:
                lhs = spec.zero_vec()
                for g, k in terms:
                    lhs = lhs + apply_fn(g, f).scale(RATIONALS.rational(k))
                rhs = apply_fn(a, apply_fn(b, f)) - apply_fn(b, apply_fn(a, f))
                checked += 1
                if lhs != rhs:
                    return AxiomReport(False, checked, (a, b, f, lhs, rhs))
    return AxiomReport(True, checked)


def _verify_axiom_dnu_fast(spec: OmegaSpec, m_bound: int, n_bound: int,
                           deg_bound: int) -> AxiomReport:
    """Vectorized rank-nu axiom check over integer action matrices.

    Every basis action on a monomial is Lambda^m times an integer polynomial,
    so for a fixed operator pair both sides of the axiom share the prefactor
    Lambda^(m_a + m_b) and the comparison reduces to exact int64 matrices.
    Magnitudes are certified against overflow with an absolute-value shadow
    product before trusting the int64 arithmetic.
    """
    import numpy as np
    from .liealg import basis_bracket

    rank = spec.rank
    eps = spec.eps
    beta = spec.beta_sign
    ops = [
        (m, n)
        for m in iproduct(*[range(-m_bound, m_bound + 1)] * rank)
        for n in iproduct(*[range(n_bound + 1)] * rank)
    ]
    in_exps = [e for e in iproduct(*[range(deg_bound + 1)] * rank)
               if sum(e) <= deg_bound]
    in_pos = {e: i for i, e in enumerate(in_exps)}
    mid_side = deg_bound + n_bound + 1
    mid_exps = list(iproduct(*[range(mid_side)] * rank))
    mid_pos = {e: i for i, e in enumerate(mid_exps)}
    out_side = deg_bound + 2 * n_bound + 1
    out_exps = list(iproduct(*[range(out_side)] * rank))
    out_pos = {e: i for i, e in enumerate(out_exps)}

    def sign_of(n):
        return beta ** ((1 - sum(n)) % 2)

    def action_matrix(m, n, col_exps, col_pos_unused, row_pos):
        mat = np.zeros((len(row_pos), len(col_exps)), dtype=np.int64)
        s = sign_of(n)
        for ci, j in enumerate(col_exps):
            for exps, k in _basis_act_ints(eps, m, n, j).items():
                mat[row_pos[exps], ci] += s * k
        return mat

    # full matrices on the mid space (for the outer factor of a composition)
    full = {}
    small = {}
    for (m, n) in ops:
        full[(m, n)] = action_matrix(m, n, mid_exps, None, out_pos)
        sm = np.zeros((len(mid_exps), len(in_exps)), dtype=np.int64)
        s = sign_of(n)
        for ci, j in enumerate(in_exps):
            for exps, k in _basis_act_ints(eps, m, n, j).items():
                sm[mid_pos[exps], ci] += s * k
        small[(m, n)] = sm

    # int64 safety: bound every composed entry by the abs-value product
    max_full = np.max(np.stack([np.abs(v) for v in full.values()]), axis=0)
    max_small = np.max(np.stack([np.abs(v) for v in small.values()]), axis=0)
    bound = (max_full.astype(float) @ max_small.astype(float)).max()
    if bound >= 2.0 ** 61:
        raise OverflowError("axiom fast path would overflow int64 at these bounds")

    bracket_mats: dict = {}

    def bracket_matrix(m, n):
        key = (m, n)
        got = bracket_mats.get(key)
        if got is None:
            got = action_matrix(m, n, in_exps, None, out_pos)
            bracket_mats[key] = got
        return got

    checked = 0
    nops = len(ops)
    for i in range(nops):
        ma, na = ops[i]
        fa = full[(ma, na)]
        sa = small[(ma, na)]
        for jdx in range(i, nops):
            mb, nb = ops[jdx]
            rhs = fa @ small[(mb, nb)] - full[(mb, nb)] @ sa
            lhs = np.zeros_like(rhs)
            for (mk, nk), k in basis_bracket(ma, na, mb, nb).items():
                lhs += k * bracket_matrix(mk, nk)
            checked += len(in_exps)
            if not np.array_equal(lhs, rhs):
                bad = np.argwhere(lhs != rhs)
                ci = int(bad[0][1])
                return AxiomReport(
                    False, checked,
                    ((ma, na), (mb, nb), spec.monomial(in_exps[ci]), None, None),
                )
    return AxiomReport(True, checked)


# ---------------------------------------------------------------------------
# Irreducibility witnesses
# ---------------------------------------------------------------------------


def degree_reduction_witness(spec: OmegaSpec, f: PolyVec):
    """Chain of difference operators driving f down to a nonzero constant.

    Each step applies beta^-1 lambda_i^-1 t_i - beta^-1 (as an algebra
    element), which realizes f |-> f(..., x_i - 1, ...) - f and drops the
    x_i-degree by exactly one.  The chain has length equal to the total
    degree of f and certifies that the submodule generated by f contains 1.
    """
    if f.is_zero():
        raise ValueError("cannot reduce the zero vector")
    if spec.family not in ("d", "dnu"):
        raise FamilyMismatch("degree reduction works on the d/dnu families")
    ctx = AlgebraCtx(spec.rank, central=False)
    beta_inv = RATIONALS.rational(spec.beta_sign)  # beta^2 = 1
    chain = []
    cur = f
    while cur.degree() > 0:
        var = None
        for exps in cur.terms:
            for i, e in enumerate(exps):
                if e > 0 and sum(exps) == cur.degree():
                    var = i
                    break
            if var is not None:
                break
        e_i = tuple(1 if i == var else 0 for i in range(spec.rank))
        zero = (0,) * spec.rank
        step_op = ctx.basis(e_i, zero, beta_inv * spec.lam[var].inverse()) \
            - ctx.basis(zero, zero, beta_inv)
        cur = act(step_op, cur)
        if cur.is_zero():
            raise AssertionError("difference step annihilated a positive-degree vector")
        chain.append((step_op, cur))
    return chain


@dataclass
class SimplicityReport:
    reducible: bool
    verdict: str
    witness: list | None = None
    seed: int | None = None
    degree_bound: int = 0


def _probe_generators(spec: OmegaSpec, m_range: int):
    if spec.family in ("d", "dnu"):
        ctx = AlgebraCtx(spec.rank, central=False)
        gens = []
        for i in range(spec.rank):
            for m in range(-m_range, m_range + 1):
                mv = tuple(m if k == i else 0 for k in range(spec.rank))
                for n in range(3):
                    nv = tuple(n if k == i else 0 for k in range(spec.rank))
                    op = ctx.basis(mv, nv)
                    gens.append(lambda f, op=op: act(op, f))
        return gens
    if spec.family == "vir":
        return [
            (lambda f, m=m: act_vir(spec, m, f))
            for m in range(-m_range, m_range + 1)
        ]
    gens = []
    for m in range(-m_range, m_range + 1):
        gens.append(lambda f, m=m: act_hv(spec, ("L", m), f))
        gens.append(lambda f, m=m: act_hv(spec, ("I", m), f))
    return gens


def simplicity_probe(spec: OmegaSpec, degree_bound: int) -> SimplicityReport:
    """Bounded search for a proper invariant subspace.

    For each monomial seed of total degree <= degree_bound - 2 the probe
    closes the span under all generator applications whose result stays
    within the degree window, then accepts the span as a witness only if it
    is a proper subspace in every degree slice from the seed degree up to the
    bound.  Seeds at the top two degrees are skipped: their closures look
    invariant only because every application overflows the window.  A clean
    sweep is reported as "no proper invariant subspace within bound", never
    as a proof of simplicity.
    """
    if degree_bound < 2:
        raise ValueError("degree bound must be at least 2")
    gens = _probe_generators(spec, degree_bound + 2)
    rank = spec.rank
    if rank != 1 and spec.family != "dnu":
        raise FamilyMismatch("unexpected rank for this family")

    def slice_dim(d):
        return sum(1 for e in iproduct(*[range(d + 1)] * rank) if sum(e) == d)

    full_dims = [slice_dim(d) for d in range(degree_bound + 1)]

    seeds = [
        e for e in iproduct(*[range(degree_bound - 1)] * rank)
        if sum(e) <= degree_bound - 2
    ]
    for seed in seeds:
        vecs = [spec.monomial(seed)]
        span = SpanBasis()
        span.add(vecs[0].terms)
        frontier = vecs[:]
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = g(v)
                    if w.is_zero() or w.degree() > degree_bound:
                        continue
                    if span.add(w.terms):
                        new.append(w)
            frontier = new
        # per-degree dimensions of the closure
        got = [0] * (degree_bound + 1)
        for lead in span.pivots:
            got[sum(lead)] += 1
        # cumulative: closure dim at degree <= d versus full dim
        proper_everywhere = True
        nontrivial = False
        for d in range(sum(seed), degree_bound + 1):
            cdim = sum(got[: d + 1])
            fdim = sum(full_dims[: d + 1])
            if cdim > 0:
                nontrivial = True
            if cdim >= fdim:
                proper_everywhere = False
                break
        if proper_everywhere and nontrivial:
            witness = [dict(row) for row in span.pivots.values()]
            return SimplicityReport(
                True, "invariant-subspace-within-bound",
                witness=witness, seed=seed, degree_bound=degree_bound,
            )
    return SimplicityReport(
        False, "no-proper-invariant-subspace-within-bound",
        degree_bound=degree_bound,
    )


def assoc_action_split(spec: OmegaSpec, m_bound: int, n_bound: int,
                       deg_bound: int):
    """Test whether the module is also a module over the associative product.

    Returns (holds, counterexample): act(a*b, f) versus act(a, act(b, f))
    over the windowed basis pairs.  The eps = 1 family satisfies it; the
    eps = 0 family has explicit counterexamples.
    """
    if spec.family != "d":
        raise FamilyMismatch("the associative split is a rank-1 d-family check")
    ctx = AlgebraCtx(1, central=False)
    gens = [
        ctx.basis((m,), (n,))
        for m in range(-m_bound, m_bound + 1)
        for n in range(n_bound + 1)
    ]
    monos = [spec.monomial((k,)) for k in range(deg_bound + 1)]
    for a in gens:
        for b in gens:
            ab = assoc_product(a, b)
            for f in monos:
                lhs = act(ab, f)
                rhs = act(a, act(b, f))
                if lhs != rhs:
                    return False, (a, b, f, lhs, rhs)
    return True, None
