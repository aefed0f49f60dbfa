"""Named verification suites behind ``weylmod verify``.

Each suite re-derives a family of identities with exact arithmetic and
returns a structured result; the default bounds are the ones the test suite
pins.  Suites are deterministic: the only randomness is the seeded sampling
inside the irreducibility suite's combination vectors.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import comb

from .scalars import ParamDecl, RATIONALS
from .liealg import (
    AlgebraCtx, D_ALG, D_HAT, DiffOp, basis_bracket, bracket,
    cocycle_basis, generated_span_probe,
)
from . import umod as U
from . import hwmod as H
from . import tensor as T


@dataclass
class SuiteResult:
    name: str
    ok: bool
    checks: int
    seconds: float
    detail: str = ""

    def line(self, timings: bool = False) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        stamp = f", {self.seconds:.2f}s" if timings else ""
        return f"{self.name}: {status} [{self.checks} checks{stamp}]{extra}"


def _result(name, ok, checks, t0, detail=""):
    return SuiteResult(name, ok, checks, time.time() - t0, detail)


# ---------------------------------------------------------------------------
# 1. displayed bracket identities
# ---------------------------------------------------------------------------


def suite_bracket_identities(bounds=None) -> SuiteResult:
    t0 = time.time()
    ctx = D_ALG
    checks = 0
    ok = True

    def expect(lhs: DiffOp, rhs: DiffOp):
        nonlocal checks, ok
        checks += 1
        if lhs != rhs:
            ok = False

    for m in range(-5, 6):
        # [D^2, t^m] = 2m t^m D + m^2 t^m
        expect(bracket(ctx.d_op(2), ctx.t(m)),
               ctx.basis(m, 1, 2 * m) + ctx.basis(m, 0, m * m))
        # [D^2, t^m D] = m^2 t^m D + 2m t^m D^2
        expect(bracket(ctx.d_op(2), ctx.basis(m, 1)),
               ctx.basis(m, 1, m * m) + ctx.basis(m, 2, 2 * m))
    # [t^-1 D^2, t D^2] = 4 D^3
    expect(bracket(ctx.basis(-1, 2), ctx.basis(1, 2)), ctx.d_op(3, 4))
    # [D^3, tD] = 3tD^3 + 3tD^2 + tD
    expect(bracket(ctx.d_op(3), ctx.basis(1, 1)),
           ctx.basis(1, 3, 3) + ctx.basis(1, 2, 3) + ctx.basis(1, 1))
    # [tD^2, t^-1 D] = -3D^2 + D
    expect(bracket(ctx.basis(1, 2), ctx.basis(-1, 1)),
           ctx.d_op(2, -3) + ctx.d_op(1))
    # [t^-1 D^k, t D^2] = (k+2) D^(k+1) + (k+1)(k-2)/2 D^k + sum C(k,i) D^(k+2-i)
    for k in range(7):
        rhs = ctx.d_op(k + 1, k + 2) + ctx.d_op(k, Fraction((k + 1) * (k - 2), 2))
        for i in range(3, k + 1):
            rhs = rhs + ctx.d_op(k + 2 - i, comb(k, i))
        expect(bracket(ctx.basis(-1, k), ctx.basis(1, 2)), rhs)
    return _result("bracket-identities", ok, checks, t0)


# ---------------------------------------------------------------------------
# 2. Jacobi + antisymmetry
# ---------------------------------------------------------------------------


def _hat_bracket_table(elems):
    """Pairwise brackets in the extended rank-1 algebra over Fractions.

    Elements are (key or "C"); values are (term dict, central Fraction).
    """
    table = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if a == "C" or b == "C":
                table[(i, j)] = ({}, Fraction(0))
                continue
            (m1,), (n1,) = a
            (m2,), (n2,) = b
            terms = {k: Fraction(v) for k, v in basis_bracket((m1,), (n1,), (m2,), (n2,)).items()}
            table[(i, j)] = (terms, cocycle_basis(m1, n1, m2, n2))
    return table


def _hat_apply(table, elems, idx, vec):
    """[elems[idx], vec] for vec = (terms dict keyed by basis key, central)."""
    out: dict = {}
    central = Fraction(0)
    a = elems[idx]
    if a == "C":
        return out, central
    (m1,), (n1,) = a
    for key, c in vec[0].items():
        (m2,), (n2,) = key
        for k, v in basis_bracket((m1,), (n1,), (m2,), (n2,)).items():
            nv = out.get(k, 0) + c * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        central += c * cocycle_basis(m1, n1, m2, n2)
    return out, central


def suite_jacobi(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    m1 = bounds.get("m", 3)
    n1 = bounds.get("n", 3)
    m2 = bounds.get("m2", 2)
    n2 = bounds.get("n2", 2)
    t0 = time.time()
    checks = 0

    # rank 1 with the center adjoined
    elems = [((m,), (n,)) for m in range(-m1, m1 + 1) for n in range(n1 + 1)]
    elems.append("C")
    table = _hat_bracket_table(elems)
    n_el = len(elems)
    for i in range(n_el):
        for j in range(n_el):
            terms_ij, c_ij = table[(i, j)]
            terms_ji, c_ji = table[(j, i)]
            checks += 1
            merged = dict(terms_ij)
            for k, v in terms_ji.items():
                merged[k] = merged.get(k, 0) + v
            if any(merged.values()) or c_ij + c_ji != 0:
                return _result("jacobi-antisymmetry", False, checks, t0,
                               f"antisymmetry fails at {elems[i]}, {elems[j]}")
    # Jacobi on unordered distinct triples: with antisymmetry verified on all
    # ordered pairs and bilinearity by construction, the Jacobiator is an
    # alternating trilinear form, so this covers every ordered triple.
    for i, j, k in combinations(range(n_el), 3):
        acc: dict = {}
        central = Fraction(0)
        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
            inner = table[(y, z)]
            outer_terms, outer_c = _hat_apply(table, elems, x, inner)
            for key, v in outer_terms.items():
                acc[key] = acc.get(key, 0) + v
            central += outer_c
        checks += 1
        if any(acc.values()) or central != 0:
            return _result("jacobi-antisymmetry", False, checks, t0,
                           f"Jacobi fails at triple {elems[i]}, {elems[j]}, {elems[k]}")

    # rank 2: the identity ad([b,c]) = ad(b) ad(c) - ad(c) ad(b) as sparse
    # integer matrices over the windowed source space checks Jacobi for every
    # source basis element a at once.
    ok2, checks2, detail = _jacobi_rank2_matrices(m2, n2)
    checks += checks2
    if not ok2:
        return _result("jacobi-antisymmetry", False, checks, t0, detail)
    return _result("jacobi-antisymmetry", True, checks, t0)


def _jacobi_rank2_matrices(m_bound: int, n_bound: int):
    """ad([b,c]) = ad(b) ad(c) - ad(c) ad(b) on the windowed rank-2 basis.

    Everything is graded by the t-degree vector, so each ad map is one dense
    integer block per source degree; compositions become batched small
    matmuls over the 25 source-degree blocks.  Checking the matrix identity
    for a pair (b, c) checks Jacobi against every source basis element a at
    once, and antisymmetry (verified on all ordered pairs first) transfers
    the unordered-pair coverage to all ordered triples.
    """
    import numpy as np

    def degrees(bound):
        return list(iproduct(range(-bound, bound + 1), repeat=2))

    def ngrid(bound):
        return list(iproduct(range(bound + 1), repeat=2))

    src_deg = degrees(m_bound)
    mid_deg = degrees(2 * m_bound)
    src_n = ngrid(n_bound)
    mid_n = ngrid(2 * n_bound)
    out_n = ngrid(3 * n_bound)
    src_deg_pos = {d: i for i, d in enumerate(src_deg)}
    mid_deg_pos = {d: i for i, d in enumerate(mid_deg)}
    src_n_pos = {n: i for i, n in enumerate(src_n)}
    mid_n_pos = {n: i for i, n in enumerate(mid_n)}
    out_n_pos = {n: i for i, n in enumerate(out_n)}
    ns, nm, no = len(src_n), len(mid_n), len(out_n)

    src = [(d, n) for d in src_deg for n in src_n]

    # antisymmetry on every ordered basis pair
    checks = 0
    for a in src:
        for b in src:
            t1 = basis_bracket(a[0], a[1], b[0], b[1])
            t2 = basis_bracket(b[0], b[1], a[0], a[1])
            checks += 1
            if any(t1.get(k, 0) + t2.get(k, 0) for k in set(t1) | set(t2)):
                return False, checks, f"rank-2 antisymmetry fails at {a}, {b}"

    # ad(c) blocks on source degrees: (src degree) -> mid n-grid
    ad_src = np.zeros((len(src), len(src_deg), nm, ns), dtype=np.int64)
    # ad(b) blocks on mid degrees: mid n-grid -> out n-grid
    ad_mid = np.zeros((len(src), len(mid_deg), no, nm), dtype=np.int64)
    for oi, op in enumerate(src):
        om, on = op
        for di, mu in enumerate(src_deg):
            m = ad_src[oi, di]
            for ci, nn in enumerate(src_n):
                for (km, kn), v in basis_bracket(om, on, mu, nn).items():
                    m[mid_n_pos[kn], ci] += v
        for di, mu in enumerate(mid_deg):
            m = ad_mid[oi, di]
            for ci, nn in enumerate(mid_n):
                for (km, kn), v in basis_bracket(om, on, mu, nn).items():
                    m[out_n_pos[kn], ci] += v

    # ad(y) blocks on source degrees for every mid basis element y
    mid_basis = [(d, n) for d in mid_deg for n in mid_n]
    mid_basis_pos = {y: i for i, y in enumerate(mid_basis)}
    ad_y = np.zeros((len(mid_basis), len(src_deg), no, ns), dtype=np.int64)
    for yi, (ym, yn) in enumerate(mid_basis):
        for di, mu in enumerate(src_deg):
            m = ad_y[yi, di]
            for ci, nn in enumerate(src_n):
                for (km, kn), v in basis_bracket(ym, yn, mu, nn).items():
                    m[out_n_pos[kn], ci] += v

    # gather tables: for op degree theta, the mid-degree block above source mu
    shift_idx = {}
    for theta in set(d for d, _ in src):
        shift_idx[theta] = np.array(
            [mid_deg_pos[(mu[0] + theta[0], mu[1] + theta[1])] for mu in src_deg],
            dtype=np.intp,
        )

    n_src_total = len(src)
    for bi in range(n_src_total):
        b = src[bi]
        shift_b = shift_idx[b[0]]
        for ci in range(bi, n_src_total):
            c = src[ci]
            comp1 = np.matmul(ad_mid[bi][shift_idx[c[0]]], ad_src[ci])
            comp2 = np.matmul(ad_mid[ci][shift_b], ad_src[bi])
            terms = basis_bracket(b[0], b[1], c[0], c[1])
            if terms:
                idxs = np.array([mid_basis_pos[k] for k in terms], dtype=np.intp)
                vals = np.array(list(terms.values()), dtype=np.int64)
                lhs = np.einsum("t,tdij->dij", vals, ad_y[idxs])
            else:
                lhs = np.zeros_like(comp1)
            checks += n_src_total
            if not np.array_equal(lhs, comp1 - comp2):
                return False, checks, f"rank-2 Jacobi fails at {b}, {c}"
    return True, checks, ""


# ---------------------------------------------------------------------------
# 3. cocycle
# ---------------------------------------------------------------------------


def suite_cocycle(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    mb = bounds.get("m", 3)
    nb = bounds.get("n", 3)
    t0 = time.time()
    checks = 0
    keys = [(m, n) for m in range(-mb, mb + 1) for n in range(nb + 1)]

    # 2-cocycle identity phi([a,b],c) + phi([b,c],a) + phi([c,a],b) = 0
    def phi_of_bracket(a, b, c):
        total = Fraction(0)
        for (km, kn), v in basis_bracket((a[0],), (a[1],), (b[0],), (b[1],)).items():
            total += v * cocycle_basis(km[0], kn[0], c[0], c[1])
        return total

    for a in keys:
        for b in keys:
            for c in keys:
                checks += 1
                s = phi_of_bracket(a, b, c) + phi_of_bracket(b, c, a) \
                    + phi_of_bracket(c, a, b)
                if s != 0:
                    return _result("cocycle", False, checks, t0,
                                   f"cocycle identity fails at {a}, {b}, {c}")
    # Virasoro central values
    for m in range(-6, 7):
        checks += 1
        if cocycle_basis(m, 1, -m, 1) != Fraction(m ** 3 - m, 12):
            return _result("cocycle", False, checks, t0,
                           f"Virasoro value wrong at m={m}")
    # vanishing for m1 = 0
    for n1 in range(7):
        for m2 in range(-6, 7):
            for n2 in range(7):
                checks += 1
                if cocycle_basis(0, n1, m2, n2) != 0:
                    return _result("cocycle", False, checks, t0, "m1=0 should vanish")
    return _result("cocycle", True, checks, t0)


# ---------------------------------------------------------------------------
# 4. module axiom
# ---------------------------------------------------------------------------


def suite_module_axiom(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    mb = bounds.get("m", 3)
    nb = bounds.get("n", 3)
    deg = bounds.get("deg", 4)
    t0 = time.time()
    checks = 0

    decl = ParamDecl(invertible=("lambda",), plain=("alpha", "beta"))
    lam = decl.param("lambda")
    for eps in (1, 0):
        rep = U.verify_module_axiom(U.omega_d(lam, eps), mb, nb, deg)
        checks += rep.checked
        if not rep.ok:
            return _result("module-axiom", False, checks, t0,
                           f"d-family eps={eps}: {rep.counterexample[:3]}")
    rep = U.verify_module_axiom(
        U.omega_hv(lam, decl.param("alpha"), decl.param("beta")), mb, nb, deg)
    checks += rep.checked
    if not rep.ok:
        return _result("module-axiom", False, checks, t0, "hv family")
    rep = U.verify_module_axiom(U.omega_vir(lam, decl.param("alpha")), mb, nb, deg)
    checks += rep.checked
    if not rep.ok:
        return _result("module-axiom", False, checks, t0, "vir family")

    decl2 = ParamDecl(invertible=("l1", "l2"))
    spec2 = U.omega_dnu((decl2.param("l1"), decl2.param("l2")), 1)
    rep = U.verify_module_axiom(spec2, mb, nb, deg)
    checks += rep.checked
    if not rep.ok:
        return _result("module-axiom", False, checks, t0, "rank-2 eps=1")
    spec2b = U.omega_dnu((decl2.param("l1"), decl2.param("l2")), 0)
    rep = U.verify_module_axiom(spec2b, mb, nb, deg)
    checks += rep.checked
    if not rep.ok:
        return _result("module-axiom", False, checks, t0, "rank-2 eps=0")
    return _result("module-axiom", True, checks, t0)


# ---------------------------------------------------------------------------
# 5. associative-action split
# ---------------------------------------------------------------------------


def suite_assoc_split(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    mb = bounds.get("m", 3)
    nb = bounds.get("n", 3)
    deg = bounds.get("deg", 3)
    t0 = time.time()
    decl = ParamDecl(invertible=("lambda",))
    lam = decl.param("lambda")
    holds1, _ = U.assoc_action_split(U.omega_d(lam, 1), mb, nb, deg)
    holds0, counter = U.assoc_action_split(U.omega_d(lam, 0), mb, nb, deg)
    ok = holds1 and not holds0 and counter is not None
    pairs = (2 * mb + 1) * (nb + 1)
    detail = "" if ok else "eps=1 must satisfy, eps=0 must break the product law"
    return _result("assoc-split", ok, 2 * pairs * pairs * (deg + 1), t0, detail)


# ---------------------------------------------------------------------------
# 6. irreducibility witnesses
# ---------------------------------------------------------------------------


def suite_irreducibility(bounds=None, seed=0) -> SuiteResult:
    bounds = bounds or {}
    max_deg = bounds.get("deg", 8)
    probe_deg = bounds.get("probe_deg", 6)
    t0 = time.time()
    checks = 0
    rng = random.Random(seed)

    decl = ParamDecl(invertible=("lambda",))
    lam = decl.param("lambda")
    for eps in (1, 0):
        spec = U.omega_d(lam, eps)
        for d in range(max_deg + 1):
            # plain monomial, then a seeded random combination of that degree
            vectors = [spec.monomial((d,))]
            combo = spec.zero_vec()
            for k in range(d + 1):
                coeff = rng.randint(-5, 5)
                if k == d and coeff == 0:
                    coeff = 1
                combo = combo + spec.monomial((k,), coeff)
            vectors.append(combo)
            for f in vectors:
                if f.is_zero():
                    continue
                chain = U.degree_reduction_witness(spec, f)
                checks += 1
                if f.degree() > 0:
                    if len(chain) != f.degree():
                        return _result("irreducibility", False, checks, t0,
                                       f"chain length {len(chain)} != degree {f.degree()}")
                    last = chain[-1][1]
                    if last.degree() != 0 or last.is_zero():
                        return _result("irreducibility", False, checks, t0,
                                       "chain did not end at a nonzero constant")

    # rank-2 spot checks of the same reduction
    decl2 = ParamDecl(invertible=("l1", "l2"))
    spec2 = U.omega_dnu((decl2.param("l1"), decl2.param("l2")), 0)
    for exps in ((2, 1), (0, 3), (4, 4)):
        chain = U.degree_reduction_witness(spec2, spec2.monomial(exps))
        checks += 1
        if len(chain) != sum(exps) or chain[-1][1].degree() != 0:
            return _result("irreducibility", False, checks, t0, "rank-2 chain wrong")

    # reducible controls and simple families
    dl = ParamDecl(invertible=("lambda",))
    lam2 = dl.param("lambda")
    rep = U.simplicity_probe(U.omega_hv(lam2, dl.zero, dl.zero), probe_deg)
    checks += 1
    if not rep.reducible:
        return _result("irreducibility", False, checks, t0,
                       "missed the codimension-1 submodule of the hv family")
    rep = U.simplicity_probe(U.omega_vir(lam2, dl.zero), probe_deg)
    checks += 1
    if not rep.reducible:
        return _result("irreducibility", False, checks, t0,
                       "missed the codimension-1 submodule of the vir family")
    for eps in (0, 1):
        rep = U.simplicity_probe(U.omega_d(lam2, eps), probe_deg)
        checks += 1
        if rep.reducible:
            return _result("irreducibility", False, checks, t0,
                           f"false invariant subspace for eps={eps}")
    return _result("irreducibility", True, checks, t0)


# ---------------------------------------------------------------------------
# 7. highest weight
# ---------------------------------------------------------------------------


def _bernoulli(n: int) -> list:
    out = [Fraction(1)]
    for m in range(1, n + 1):
        s = Fraction(0)
        for j in range(m):
            s += comb(m + 1, j) * out[j]
        out.append(-s / (m + 1))
    return out


def suite_highest_weight(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    t0 = time.time()
    checks = 0

    # h_n = -B_n for phi = x, against the independent recurrence
    phi = H.Quasipolynomial.poly([RATIONALS.zero, RATIONALS.one])
    spec = H.HWSpec(RATIONALS.zero, phi)
    bern = _bernoulli(8)
    for n in range(9):
        checks += 1
        if spec.h(n) != RATIONALS.rational(-bern[n]):
            return _result("highest-weight", False, checks, t0,
                           f"h_{n} != -B_{n}")

    # bracket compatibility on the (L=2, N=2) window with symbolic weights
    gen = H.HWSpec.generic(8)
    window = H.verma_basis(gen, 2, 2)
    host = H.verma_basis(gen, 6, 2)
    ops = [D_HAT.basis(m, n) for m in range(-2, 3) for n in range(3)]
    ops.append(D_HAT.center())
    basis = window.basis()
    for i, a in enumerate(ops):
        for b in ops[i:]:
            br = bracket(a, b)
            for mono in basis:
                v = host.elem({mono: 1})
                lhs = H.act_verma(br, v)
                rhs = H.act_verma(a, H.act_verma(b, v)) - H.act_verma(b, H.act_verma(a, v))
                checks += 1
                if lhs != rhs:
                    return _result("highest-weight", False, checks, t0,
                                   f"straightening breaks at {a}, {b}, {mono}")

    # D^k 1 = h_k 1
    tv1 = H.verma_basis(gen, 1, 0)
    for k in range(7):
        checks += 1
        if H.act_verma(D_HAT.d_op(k), tv1.vacuum()) != tv1.vacuum().scale(gen.h(k)):
            return _result("highest-weight", False, checks, t0, f"D^{k} weight wrong")

    # generic level-1 nullspace is trivial at (N=0, M=2)
    tv = H.verma_basis(gen, 1, 0)
    rep = H.singular_vectors(tv, 1, 2)
    checks += 1
    if rep.vectors:
        return _result("highest-weight", False, checks, t0,
                       "generic weights admitted a level-1 singular vector")
    # trivial weights: every level-1 vector is singular at (N=1, M=3)
    triv = H.HWSpec(RATIONALS.zero, H.Quasipolynomial.zero())
    tvt = H.verma_basis(triv, 2, 1)
    rep = H.singular_vectors(tvt, 1, 3)
    checks += 1
    if len(rep.vectors) != len(tvt.basis_at_level(1)):
        return _result("highest-weight", False, checks, t0,
                       "trivial weights should make all of level 1 singular")
    # singular vectors are weight vectors and the quotient kills level 1
    for v in rep.vectors:
        checks += 1
        if H.weight_of(v) is None:
            return _result("highest-weight", False, checks, t0,
                           "singular vector is not a weight vector")
    dims = H.weight_space_dims(tvt, rep.vectors)
    checks += 1
    if dims[1] != 0:
        return _result("highest-weight", False, checks, t0,
                       "level-1 quotient dimension should vanish")
    # Delta round trip at order 8
    from .scalars import Series, exp_series
    order = 8
    fact = [1] * (order + 1)
    for k in range(1, order + 1):
        fact[k] = fact[k - 1] * k
    delta = Series(order, tuple(gen.h(n) * Fraction(-1, fact[n]) for n in range(order + 1)))
    ex = exp_series(RATIONALS.one, order)
    one = Series(order, tuple(RATIONALS.one if k == 0 else RATIONALS.zero
                              for k in range(order + 1)))
    back = delta * (ex - one)
    phis = gen.phi.series(order)
    checks += 1
    if any(back[k] != phis[k] for k in range(order + 1)):
        return _result("highest-weight", False, checks, t0, "series round trip failed")
    return _result("highest-weight", True, checks, t0)


# ---------------------------------------------------------------------------
# 8. tensor suite
# ---------------------------------------------------------------------------


def suite_tensor(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    d = bounds.get("deg", 3)
    L = bounds.get("L", 2)
    N = bounds.get("N", 1)
    mb = bounds.get("m", 4)
    t0 = time.time()
    checks = 0

    decl = ParamDecl(invertible=("lambda",), plain=("c",))
    lam = decl.param("lambda")
    phi = H.Quasipolynomial.poly([RATIONALS.zero, RATIONALS.one])
    hw_spec = H.HWSpec(decl.param("c"), phi)

    for eps in (1, 0):
        hw = H.verma_basis(hw_spec, L + 5, N)
        ts = T.TensorSpec(U.omega_d(lam, eps), hw)
        # pivotal identity on 1 (x) v for m, m' in [K, K+4]
        for mono in [()] + hw.basis_at_level(1) + hw.basis_at_level(2):
            v = ts.elem({(0, mono): 1})
            K = T.vanishing_bound(H.VermaElem(hw, {mono: 1}))
            for m in range(K, K + 5):
                for mp in range(K, K + 5):
                    lhs = T.act_tensor(T._scaled_weight_op(ts, m, 1), v) \
                        - T.act_tensor(T._scaled_weight_op(ts, mp, 1), v)
                    checks += 1
                    if lhs != v.scale(eps * (mp - m)):
                        return _result("tensor", False, checks, t0,
                                       f"pivotal identity fails eps={eps} m={m} m'={mp}")
        # strict degree reduction from every windowed seed with 1 <= s <= 3
        for s in range(1, 4):
            for mono in hw.basis_at_level(0) + hw.basis_at_level(1) + hw.basis_at_level(2):
                if sum(j for j, _ in mono) > L:
                    continue
                w = ts.elem({(s, mono): 1, (0, ()): 1})
                r = T.vandermonde_reduce(ts, w)
                checks += 1
                if r.is_zero() or r.x_degree() >= s:
                    return _result("tensor", False, checks, t0,
                                   f"reduction failed eps={eps} s={s} {mono}")
    # bounded cyclicity at (d, L, N, |m|)
    for eps in (1, 0):
        hw = H.verma_basis(hw_spec, L, N)
        ts = T.TensorSpec(U.omega_d(lam, eps), hw)
        rep = T.irreducibility_probe(ts, d, mb, 2)
        checks += rep.seeds_checked
        if rep.verdict != "cyclic-within-bounds":
            return _result("tensor", False, checks, t0,
                           f"probe verdict {rep.verdict} for eps={eps}")
    # degenerate control finds the invariant subspace
    oh = U.omega_hv(decl.param("lambda"), decl.zero, decl.zero)
    tsh = T.TensorSpec(oh, H.verma_basis(hw_spec, L, N))
    rep = T.irreducibility_probe(tsh, d, mb)
    checks += 1
    if rep.verdict != "not-cyclic-within-bounds":
        return _result("tensor", False, checks, t0, "control probe missed the witness")

    # intertwiner dimensions at rational instantiations
    phiq = H.Quasipolynomial.poly([RATIONALS.zero, RATIONALS.one])
    hws = H.HWSpec(RATIONALS.rational(Fraction(1, 2)), phiq)

    def mk(lamq, eps):
        return T.TensorSpec(U.omega_d(RATIONALS.rational(lamq), eps),
                            H.verma_basis(hws, L, N))

    same = T.intertwiner_dim(mk(2, 1), mk(2, 1), d, mb, 1)
    checks += 1
    if same < 1:
        return _result("tensor", False, checks, t0, "identity intertwiner missing")
    checks += 1
    if T.intertwiner_dim(mk(2, 1), mk(3, 1), d, mb, 1) != 0:
        return _result("tensor", False, checks, t0, "lambda 2 vs 3 should give 0")
    checks += 1
    if T.intertwiner_dim(mk(2, 0), mk(2, 1), d, mb, 1) != 0:
        return _result("tensor", False, checks, t0, "eps mismatch should give 0")
    return _result("tensor", True, checks, t0)


# ---------------------------------------------------------------------------
# 9. generator closure
# ---------------------------------------------------------------------------


def suite_span(bounds=None) -> SuiteResult:
    bounds = bounds or {}
    depth = bounds.get("depth", 8)
    t0 = time.time()
    checks = 0

    ctx = D_ALG
    rep = generated_span_probe([ctx.t(1), ctx.t(-1), ctx.d_op(2)], 2, 3, depth)
    checks += len(rep.reached) + len(rep.missing)
    if rep.missing:
        return _result("span-closure", False, checks, t0,
                       f"rank-1 window missing {rep.missing[:4]}")

    ctx2 = AlgebraCtx(2)
    gens = [
        ctx2.basis((1, 0), (0, 0)), ctx2.basis((-1, 0), (0, 0)),
        ctx2.basis((0, 1), (0, 0)), ctx2.basis((0, -1), (0, 0)),
        ctx2.basis((0, 0), (1, 1)),
        ctx2.basis((0, 0), (2, 0)), ctx2.basis((0, 0), (0, 2)),
    ]
    rep2 = generated_span_probe(gens, 1, 1, depth)
    checks += len(rep2.reached) + len(rep2.missing)
    if rep2.missing:
        return _result("span-closure", False, checks, t0,
                       f"rank-2 window missing {rep2.missing[:4]}")
    return _result("span-closure", True, checks, t0)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


SUITES = {
    "bracket-identities": suite_bracket_identities,
    "jacobi-antisymmetry": suite_jacobi,
    "cocycle": suite_cocycle,
    "module-axiom": suite_module_axiom,
    "assoc-split": suite_assoc_split,
    "irreducibility": suite_irreducibility,
    "highest-weight": suite_highest_weight,
    "tensor": suite_tensor,
    "span-closure": suite_span,
}


def run_suites(names, bounds=None, seed=0):
    results = []
    for name in sorted(names):
        fn = SUITES[name]
        if name == "irreducibility":
            results.append(fn(bounds, seed=seed))
        else:
            results.append(fn(bounds))
    return results
