"""Exact coefficient arithmetic.

Scalars are Laurent polynomials in a declared finite set of formal parameters
with arbitrary-precision rational coefficients.  A parameter is either plain
(exponents must stay >= 0) or invertible (any integer exponent, e.g. a
parameter standing for a nonzero complex number whose negative powers are
needed).  Division never happens inside Scalar arithmetic; it is confined to
truncated-series quotients and to linear solving, where results are returned
as (numerator, denominator) pairs.

The canonical monomial order is lexicographic on parameter names, then
exponent.  Everything here is immutable after construction and all operations
are pure, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class NonInvertibleParameter(ValueError):
    """A Laurent exponent went negative on a parameter not declared invertible."""


class ScalarDivisionError(ArithmeticError):
    """Exact division failed (non-unit divisor or non-divisible operands)."""


# A monomial key is a tuple of (name, exponent) pairs, sorted by name, with
# all exponents nonzero.  The empty tuple is the constant monomial.
Mono = tuple


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        ne = exps.get(name, 0) + e
        if ne:
            exps[name] = ne
        else:
            del exps[name]
    return tuple(sorted(exps.items()))


def _mono_key(mono: Mono, names: Sequence[str]) -> tuple:
    """Exponent vector of ``mono`` over ``names`` (missing names count as 0)."""
    d = dict(mono)
    return tuple(d.get(n, 0) for n in names)


def _mono_cmp_names(a: Mono, b: Mono) -> Sequence[str]:
    return sorted({n for n, _ in a} | {n for n, _ in b})


def _mono_le(a: Mono, b: Mono) -> bool:
    """a <= b in the canonical order (lex on names, then exponent)."""
    names = _mono_cmp_names(a, b)
    return _mono_key(a, names) <= _mono_key(b, names)


class ParamDecl:
    """Declaration of the coefficient ring: parameter names and invertibility.

    ``ParamDecl(invertible=("lambda",), plain=("a1", "a2"))`` declares a ring
    of Laurent polynomials in lambda and ordinary polynomials in a1, a2.
    """

    __slots__ = ("names", "_invertible")

    def __init__(self, invertible: Iterable[str] = (), plain: Iterable[str] = ()):
        inv = tuple(sorted(set(invertible)))
        pl = tuple(sorted(set(plain)))
        dup = set(inv) & set(pl)
        if dup:
            raise ValueError(f"parameters declared both invertible and plain: {sorted(dup)}")
        self.names = tuple(sorted(inv + pl))
        self._invertible = frozenset(inv)

    def is_invertible(self, name: str) -> bool:
        return name in self._invertible

    def has(self, name: str) -> bool:
        return name in self.names

    @property
    def is_empty(self) -> bool:
        return not self.names

    def __eq__(self, other):
        return (
            isinstance(other, ParamDecl)
            and self.names == other.names
            and self._invertible == other._invertible
        )

    def __hash__(self):
        return hash((self.names, self._invertible))

    def __repr__(self):
        parts = [n + "!" if self.is_invertible(n) else n for n in self.names]
        return f"ParamDecl({', '.join(parts)})"

    # -- constructors ------------------------------------------------------

    def rational(self, value) -> "Scalar":
        q = Fraction(value)
        return Scalar(self, {(): q} if q else {})

    def param(self, name: str, power: int = 1) -> "Scalar":
        if name not in self.names:
            raise ValueError(f"undeclared parameter {name!r}")
        if power == 0:
            return self.one
        if power < 0 and not self.is_invertible(name):
            raise NonInvertibleParameter(
                f"parameter {name!r} is not declared invertible"
            )
        return Scalar(self, {((name, power),): Fraction(1)})

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, {})

    @property
    def one(self) -> "Scalar":
        return Scalar(self, {(): Fraction(1)})


RATIONALS = ParamDecl()


def _merge_decl(a: ParamDecl, b: ParamDecl) -> ParamDecl:
    if a is b or a == b:
        return a
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    raise ValueError(f"cannot mix scalars over {a!r} and {b!r}")


class Scalar:
    """Immutable sparse Laurent polynomial over the rationals.

    Stored as a map from monomial keys to nonzero Fractions; equal values have
    identical stored form, so ``==`` is exact structural equality.
    """

    __slots__ = ("decl", "terms")

    def __init__(self, decl: ParamDecl, terms: Mapping[Mono, Fraction]):
        self.decl = decl
        self.terms = {m: c for m, c in terms.items() if c}

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.decl, {(): Fraction(other)} if other else {})
        return NotImplemented

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def rational_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"scalar {self} is not a plain rational")
        return self.terms[()]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True when the scalar is a single monomial in invertible parameters."""
        if len(self.terms) != 1:
            return False
        (mono, _), = self.terms.items()
        return all(self.decl.is_invertible(n) for n, _ in mono)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        decl = _merge_decl(self.decl, o.decl)
        if not o.terms:
            return self if decl is self.decl else Scalar(decl, self.terms)
        if not self.terms:
            return o if decl is o.decl else Scalar(decl, o.terms)
        terms = dict(self.terms)
        for m, c in o.terms.items():
            nc = terms.get(m, 0) + c
            if nc:
                terms[m] = nc
            else:
                del terms[m]
        return Scalar(decl, terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.decl, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        decl = _merge_decl(self.decl, o.decl)
        if not self.terms or not o.terms:
            return Scalar(decl, {})
        if len(self.terms) == 1:
            (ma, ca), = self.terms.items()
            return Scalar(decl, {_mono_mul(ma, mb): ca * cb for mb, cb in o.terms.items()})
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                m = _mono_mul(ma, mb)
                nc = terms.get(m, 0) + ca * cb
                if nc:
                    terms[m] = nc
                elif m in terms:
                    del terms[m]
        return Scalar(decl, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return Scalar(self.decl, {(): Fraction(1)})
        if k < 0:
            return self.inverse() ** (-k)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def inverse(self) -> "Scalar":
        """Inverse of a unit (single monomial with invertible parameters)."""
        if len(self.terms) != 1:
            raise ScalarDivisionError(f"cannot invert non-monomial scalar {self}")
        (mono, coeff), = self.terms.items()
        for name, e in mono:
            if e > 0 and not self.decl.is_invertible(name):
                raise NonInvertibleParameter(
                    f"parameter {name!r} is not declared invertible"
                )
        inv_mono = tuple((n, -e) for n, e in mono)
        return Scalar(self.decl, {inv_mono: Fraction(1) / coeff})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- leading term and exact division ------------------------------------

    def _sorted_monos(self) -> list:
        names = sorted({n for m in self.terms for n, _ in m})
        return sorted(self.terms, key=lambda m: _mono_key(m, names), reverse=True)

    def leading(self) -> tuple:
        """(monomial, coefficient) maximal in the canonical order."""
        if not self.terms:
            raise ValueError("zero scalar has no leading term")
        best = None
        for m in self.terms:
            if best is None or _mono_le(best, m):
                best = m
        return best, self.terms[best]

    def exact_div(self, divisor: "Scalar") -> "Scalar":
        """Exact polynomial division; raises if the quotient does not exist.

        Only called where divisibility is guaranteed (Bareiss pivots), so a
        nonzero remainder indicates a bug upstream.
        """
        if divisor.is_zero():
            raise ScalarDivisionError("division by zero scalar")
        if divisor.is_rational():
            q = divisor.terms[()]
            return Scalar(self.decl, {m: c / q for m, c in self.terms.items()})
        decl = _merge_decl(self.decl, divisor.decl)
        rem = dict(self.terms)
        dm, dc = divisor.leading()
        quot: dict = {}
        while rem:
            lead = None
            for m in rem:
                if lead is None or _mono_le(lead, m):
                    lead = m
            qc = rem[lead] / dc
            # exponent subtraction
            exps = dict(lead)
            ok = True
            for n, e in dm:
                ne = exps.get(n, 0) - e
                if ne:
                    exps[n] = ne
                elif n in exps:
                    del exps[n]
            qm = tuple(sorted(exps.items()))
            for n, e in qm:
                if e < 0 and not decl.is_invertible(n):
                    ok = False
                    break
            if not ok:
                raise ScalarDivisionError(f"{self} is not divisible by {divisor}")
            quot[qm] = quot.get(qm, Fraction(0)) + qc
            for m, c in divisor.terms.items():
                mm = _mono_mul(qm, m)
                nc = rem.get(mm, 0) - qc * c
                if nc:
                    rem[mm] = nc
                elif mm in rem:
                    del rem[mm]
        return Scalar(decl, quot)

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in self._sorted_monos():
            coeff = self.terms[mono]
            factors = []
            if not mono:
                factors.append(str(abs(coeff)))
            else:
                if abs(coeff) != 1:
                    factors.append(str(abs(coeff)))
                for name, e in mono:
                    factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not parts:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append((" + " if coeff > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Scalar({self})"

    def to_json(self) -> dict:
        monos = []
        for mono in self._sorted_monos():
            c = self.terms[mono]
            monos.append({"coeff": f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator),
                          "exps": {n: e for n, e in mono}})
        return {"monomials": monos}


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class SeriesError(ValueError):
    """Invalid truncated-series operation (zero denominator, bad valuation)."""


@dataclass(frozen=True)
class Series:
    """Truncated power series: coefficients of x^0 .. x^order (not / k!)."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("series length must be order + 1")

    @staticmethod
    def from_coeffs(coeffs: Sequence[Scalar]) -> "Series":
        return Series(len(coeffs) - 1, tuple(coeffs))

    @staticmethod
    def zero(order: int, decl: ParamDecl = RATIONALS) -> "Series":
        return Series(order, tuple(decl.zero for _ in range(order + 1)))

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def __add__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series(n, tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    def __sub__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series(n, tuple(self.coeffs[k] - other.coeffs[k] for k in range(n + 1)))

    def __mul__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        out = [None] * (n + 1)
        for k in range(n + 1):
            acc = None
            for i in range(k + 1):
                t = self.coeffs[i] * other.coeffs[k - i]
                acc = t if acc is None else acc + t
            out[k] = acc
        return Series(n, tuple(out))

    def scale(self, s: Scalar) -> "Series":
        return Series(self.order, tuple(c * s for c in self.coeffs))

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(order, self.coeffs[: order + 1])

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )


def series_quotient(num: Series, den: Series) -> Series:
    """Exact quotient of truncated series, dividing out the common power of x.

    Requires den nonzero with a unit coefficient at its valuation, and num
    vanishing to at least the same order.  The result q satisfies
    q * den == num up to the returned truncation order.
    """
    v = den.valuation()
    if v is None:
        raise SeriesError("series denominator is identically zero")
    nv = num.valuation()
    if nv is not None and nv < v:
        raise SeriesError(
            f"numerator vanishes to order {nv}, denominator to order {v}"
        )
    lead = den.coeffs[v]
    if not (lead.is_unit() or (lead.is_rational() and not lead.is_zero())):
        raise SeriesError(f"denominator lead {lead} is not a unit")
    inv = lead.inverse()
    order = min(num.order, den.order) - v
    dd = [den.coeffs[v + k] for k in range(order + 1)]
    nn = [num.coeffs[v + k] if v + k <= num.order else None for k in range(order + 1)]
    q: list = []
    for k in range(order + 1):
        acc = nn[k]
        for i in range(1, k + 1):
            acc = acc - dd[i] * q[k - i]
        q.append(acc * inv)
    return Series(order, tuple(q))


def exp_series(a: Scalar, order: int) -> Series:
    """Truncated expansion of e^(a*x): coefficients a^k / k!."""
    coeffs = []
    power = a.decl.one if isinstance(a, Scalar) else RATIONALS.one
    fact = Fraction(1)
    for k in range(order + 1):
        coeffs.append(power * Fraction(1, int(fact)))
        power = power * a
        fact *= k + 1
    return Series(order, tuple(coeffs))


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


class Matrix:
    """Dense matrix of Scalars (row major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[Scalar]]):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry count must be rows*cols")
        self.rows = rows
        self.cols = cols
        self.entries = [list(r) for r in entries]

    @staticmethod
    def from_rows(entries: Sequence[Sequence[Scalar]]) -> "Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return Matrix(rows, cols, entries)

    @staticmethod
    def identity(n: int, decl: ParamDecl = RATIONALS) -> "Matrix":
        return Matrix(
            n, n,
            [[decl.one if i == j else decl.zero for j in range(n)] for i in range(n)],
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


@dataclass
class LinearSolution:
    """Result of exact elimination.

    nullspace vectors have polynomial (Scalar) entries.  The particular
    solution, when the system is consistent and a right-hand side was given,
    is a (numerators, denominator) pair to be read as numerators[i]/den;
    compare candidate solutions by cross-multiplication.
    """

    rank: int
    pivot_cols: list
    nullspace: list
    particular: tuple | None
    consistent: bool


def _pair_add(a, b):
    # (na, da) + (nb, db) exact
    na, da = a
    nb, db = b
    return (na * db + nb * da, da * db)


def solve_linear(m: Matrix, rhs: Matrix | None = None) -> LinearSolution:
    """Fraction-free Gaussian elimination over the parameter ring.

    Returns exact rank, a nullspace basis, and (if rhs given and consistent)
    one particular solution as a numerator-vector / denominator pair.
    """
    if rhs is not None and rhs.rows != m.rows:
        raise ValueError("rhs row count must match the matrix")
    decl = RATIONALS
    for row in m.entries:
        for e in row:
            if not e.decl.is_empty:
                decl = e.decl
                break
    ncols = m.cols
    nrhs = rhs.cols if rhs is not None else 0
    aug = [
        [m.entries[i][j] for j in range(ncols)]
        + ([rhs.entries[i][j] for j in range(nrhs)] if rhs is not None else [])
        for i in range(m.rows)
    ]
    total = ncols + nrhs

    pivot_cols: list = []
    prev_pivot = None
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, m.rows):
            if not aug[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        for i in range(r + 1, m.rows):
            if aug[i][c].is_zero():
                # Bareiss still rescales untouched rows below the pivot
                for j in range(total):
                    v = aug[i][j] * piv
                    aug[i][j] = v.exact_div(prev_pivot) if prev_pivot is not None else v
                continue
            fi = aug[i][c]
            for j in range(total):
                v = aug[i][j] * piv - aug[r][j] * fi
                aug[i][j] = v.exact_div(prev_pivot) if prev_pivot is not None else v
        prev_pivot = piv
        pivot_cols.append(c)
        r += 1
        if r == m.rows:
            break

    rank = len(pivot_cols)
    consistent = True
    if rhs is not None:
        for i in range(rank, m.rows):
            if any(not aug[i][ncols + j].is_zero() for j in range(nrhs)):
                consistent = False
                break

    free_cols = [c for c in range(ncols) if c not in pivot_cols]

    def back_substitute(col_of_rhs) -> tuple:
        """Solve U x = rhs-col by fraction pairs; returns (nums, den)."""
        x = {c: (decl.zero, decl.one) for c in range(ncols)}
        for fc, val in col_of_rhs.get("free", {}).items():
            x[fc] = (val, decl.one)
        for i in range(rank - 1, -1, -1):
            pc = pivot_cols[i]
            acc = (col_of_rhs["rhs"][i], decl.one)
            for j in range(pc + 1, ncols):
                e = aug[i][j]
                if e.is_zero():
                    continue
                nj, dj = x[j]
                acc = _pair_add(acc, (-(e * nj), dj))
            n, d = acc
            x[pc] = (n, d * aug[i][pc])
        dens = []
        for c in range(ncols):
            dens.append(x[c][1])
        common = decl.one
        for d in dens:
            common = common * d
        nums = []
        for c in range(ncols):
            n, d = x[c]
            scale = decl.one
            for c2 in range(ncols):
                if c2 != c:
                    scale = scale * dens[c2]
            nums.append(n * scale)
        return nums, common

    nullspace = []
    zero_rhs = [decl.zero] * rank
    for fc in free_cols:
        rhs_col = [-aug[i][fc] for i in range(rank)]
        nums, den = back_substitute({"rhs": rhs_col, "free": {fc: decl.zero}})
        vec = list(nums)
        vec[fc] = den
        for other in free_cols:
            if other != fc:
                vec[other] = decl.zero
        nullspace.append(vec)

    particular = None
    if rhs is not None and consistent and nrhs == 1:
        rhs_col = [aug[i][ncols] for i in range(rank)]
        particular = back_substitute({"rhs": rhs_col, "free": {}})

    return LinearSolution(rank, pivot_cols, nullspace, particular, consistent)


class SpanBasis:
    """Incremental echelon basis for vectors with hashable coordinate keys.

    Vectors are {key: Scalar} dicts.  Reduction is by cross-multiplication,
    so the span is taken over the fraction field of the parameter ring while
    all stored entries stay polynomial.
    """

    def __init__(self):
        self.pivots: dict = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _lead(vec: dict):
        return min(vec.keys())

    def reduce(self, vec: Mapping) -> dict:
        v = {k: c for k, c in vec.items() if not c.is_zero()}
        while v:
            lead = self._lead(v)
            row = self.pivots.get(lead)
            if row is None:
                return v
            a = v[lead]
            b = row[lead]
            nv = {}
            for k in set(v) | set(row):
                c = v.get(k)
                d = row.get(k)
                if c is None:
                    nc = -(a * d)
                elif d is None:
                    nc = b * c
                else:
                    nc = b * c - a * d
                if not nc.is_zero():
                    nv[k] = nc
            v = nv
        return v

    def add(self, vec: Mapping) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        self.pivots[self._lead(v)] = v
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)
