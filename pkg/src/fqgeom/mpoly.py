"""Homogeneous multivariate polynomials over GF(q) and binary-form tools.

A polynomial is a sparse map from exponent tuples to nonzero field codes.
Binary forms are the two-variable case, with variables (s, t) = (x0, x1).
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from . import linalg
from . import upoly as U
from .errors import (
    ArityMismatch,
    BothZero,
    DegenerateSpan,
    FieldMismatch,
    ParseError,
    SearchSpaceTooLarge,
    ValidationError,
    ZeroForm,
    ZeroPolynomial,
)
from .gf import FIELD_SIZE_CAP, GF, FieldElem, common_field
from .points import ProjPoint, format_elem


def monomials(nvars: int, degree: int):
    """All exponent vectors of the given total degree, in descending lex order."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            yield (a,) + rest


class HomogeneousPoly:
    """A homogeneous form in ``nvars`` variables of total degree ``degree``."""

    __slots__ = ("field", "nvars", "degree", "terms", "_compiled", "_hash")

    def __init__(self, field: GF, nvars: int, degree: int, terms=None, check=True):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        clean = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c == 0:
                    continue
                e = tuple(int(x) for x in e)
                if check and (len(e) != nvars or sum(e) != degree or min(e, default=0) < 0):
                    raise ValidationError(
                        f"term {e} does not have degree {degree} in {nvars} variables", 1, 1)
                clean[e] = c
        self.terms = clean
        self._compiled = {}
        self._hash = None

    # -- constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars, degree):
        return cls(field, nvars, degree)

    @classmethod
    def constant(cls, field, nvars, c=1):
        return cls(field, nvars, 0, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, 1, {tuple(e): 1})

    @classmethod
    def linear(cls, field, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, 1, terms)

    @classmethod
    def binary(cls, field, coeffs):
        """Binary form sum_j coeffs[j] s^j t^(d-j); d = len(coeffs) - 1."""
        d = len(coeffs) - 1
        return cls(field, 2, d, {(j, d - j): c for j, c in enumerate(coeffs)})

    # -- basic protocol --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if not self.terms and not other.terms:
            return True
        return (self.field == other.field and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, self.degree,
                               tuple(sorted(self.terms.items()))))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        return f"HomogeneousPoly({self.field}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, a in enumerate(e):
                if a == 1:
                    factors.append(f"x{i}")
                elif a > 1:
                    factors.append(f"x{i}^{a}")
            coef = format_elem(self.field, c)
            if c != 1 or not factors:
                factors.insert(0, str(coef).replace(" ", ""))
            parts.append("*".join(factors))
        return "+".join(parts)

    # -- arithmetic ------------------------------------------------------------
    def _check_compatible(self, other):
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check_compatible(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValidationError("sum of forms of different degree", 1, 1)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return HomogeneousPoly(F, self.nvars, self.degree, out, check=False)

    def __neg__(self):
        F = self.field
        return HomogeneousPoly(F, self.nvars, self.degree,
                               {e: F.neg(c) for e, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            self._check_compatible(other)
            F = self.field
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
            return HomogeneousPoly(F, self.nvars, self.degree + other.degree, out, check=False)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, FieldElem):
            c = c.to(self.field).value
        F = self.field
        if c == 0:
            return HomogeneousPoly(F, self.nvars, self.degree)
        return HomogeneousPoly(F, self.nvars, self.degree,
                               {e: F.mul(c, v) for e, v in self.terms.items()}, check=False)

    def __pow__(self, e: int):
        out = HomogeneousPoly.constant(self.field, self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def coefficient(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def to_field(self, E: GF) -> "HomogeneousPoly":
        if E == self.field:
            return self
        emb = self.field.embed
        return HomogeneousPoly(E, self.nvars, self.degree,
                               {e: emb(c, E) for e, c in self.terms.items()}, check=False)

    def map_coeffs(self, fn) -> "HomogeneousPoly":
        return HomogeneousPoly(self.field, self.nvars, self.degree,
                               {e: fn(c) for e, c in self.terms.items()}, check=False)

    def frobenius(self, base: GF, times: int = 1) -> "HomogeneousPoly":
        """Raise every coefficient to the power |base|^times."""
        e = base.q ** times
        F = self.field
        return self.map_coeffs(lambda c: F.pow(c, e))

    def restrict_coeffs(self, sub: GF):
        """The same form over ``sub`` if all coefficients lie there, else None."""
        if sub == self.field:
            return self
        out = {}
        for e, c in self.terms.items():
            v = self.field.restrict(c, sub)
            if v is None:
                return None
            out[e] = v
        return HomogeneousPoly(sub, self.nvars, self.degree, out, check=False)

    def leading(self):
        """(exponent, coefficient) of the lex-largest term."""
        if not self.terms:
            return None
        e = max(self.terms)
        return e, self.terms[e]

    def normalized(self) -> "HomogeneousPoly":
        """Scale so the lex-leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading()[1]))

    # -- calculus --------------------------------------------------------------
    def partial(self, i: int) -> "HomogeneousPoly":
        F = self.field
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a == 0:
                continue
            v = F.mul(F.from_int(a), c)
            if v:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = v
        return HomogeneousPoly(F, self.nvars, max(self.degree - 1, 0), out, check=False)

    def jacobian(self) -> list["HomogeneousPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    # -- evaluation ------------------------------------------------------------
    def compiled(self, E: GF | None = None):
        """(exponent matrix, coefficient codes over E) for batch evaluation."""
        E = E or self.field
        hit = self._compiled.get(E)
        if hit is None:
            items = self.sorted_terms()
            exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), self.nvars)
            if E == self.field:
                coeffs = np.array([c for _, c in items], dtype=np.int64)
            else:
                coeffs = np.array([self.field.embed(c, E) for _, c in items], dtype=np.int64)
            hit = (exps, coeffs)
            self._compiled[E] = hit
        return hit

    def eval_many(self, pts, E: GF | None = None) -> np.ndarray:
        """Evaluate at every row of ``pts`` (codes in E, default own field)."""
        E = E or self.field
        pts = np.asarray(pts, dtype=np.int64)
        if pts.ndim != 2 or pts.shape[1] != self.nvars:
            raise ArityMismatch(f"expected points with {self.nvars} coordinates")
        if not self.terms:
            return np.zeros(pts.shape[0], dtype=np.int64)
        exps, coeffs = self.compiled(E)
        return E.eval_terms(exps, coeffs, pts)

    def eval_codes(self, x, E: GF | None = None) -> int:
        """Scalar evaluation at a coordinate tuple of codes in E."""
        E = E or self.field
        if len(x) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates, got {len(x)}")
        same = E == self.field
        acc = 0
        for e, c in self.terms.items():
            v = c if same else self.field.embed(c, E)
            for xi, a in zip(x, e):
                if a:
                    if xi == 0:
                        v = 0
                        break
                    v = E.mul(v, E.pow(xi, a))
            if v:
                acc = E.add(acc, v)
        return acc

    def __call__(self, *args):
        return evaluate(self, args[0] if len(args) == 1 else args)

    # -- substitution ----------------------------------------------------------
    def substitute(self, images) -> "HomogeneousPoly":
        """P(g_0, ..., g_{n-1}) for forms g_i of a common degree and arity."""
        if len(images) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} substitutions, got {len(images)}")
        E = common_field(self.field, *(g.field for g in images))
        images = [g.to_field(E) for g in images]
        m = images[0].nvars
        e_deg = max((g.degree for g in images if g.terms), default=0)
        out_deg = self.degree * e_deg
        powers = [dict() for _ in images]

        def power(i, a):
            cache = powers[i]
            if a not in cache:
                if a == 0:
                    cache[a] = HomogeneousPoly.constant(E, m)
                elif a == 1:
                    cache[a] = images[i]
                else:
                    cache[a] = power(i, a - 1) * images[i]
            return cache[a]

        acc: dict = {}
        for e, c in self.terms.items():
            c = self.field.embed(c, E) if E != self.field else c
            term = None
            for i, a in enumerate(e):
                if a:
                    pw = power(i, a)
                    if not pw.terms:
                        term = None
                        c = 0
                        break
                    term = pw if term is None else term * pw
            if c == 0:
                continue
            if term is None:
                term = HomogeneousPoly.constant(E, m)
            for ee, v in term.terms.items():
                acc[ee] = E.add(acc.get(ee, 0), E.mul(c, v))
        return HomogeneousPoly(E, m, out_deg, acc, check=False)

    def taylor(self, p) -> list["HomogeneousPoly"]:
        """Forms T_j(v) with P(s*p + v) = sum_j s^(deg-j) T_j(v), j = 0..deg."""
        F = self.field
        if isinstance(p, ProjPoint):
            E = common_field(F, p.field)
            coords = p.to(E).coords
        else:
            E, coords = F, tuple(p)
        n = self.nvars
        images = []
        for i in range(n):
            terms = {}
            e = [0] * (n + 1)
            e[0] = 1
            terms[tuple(e)] = coords[i]
            e = [0] * (n + 1)
            e[i + 1] = 1
            terms[tuple(e)] = 1
            images.append(HomogeneousPoly(E, n + 1, 1, terms))
        full = self.to_field(E).substitute(images)
        parts = [dict() for _ in range(self.degree + 1)]
        for e, c in full.terms.items():
            j = self.degree - e[0]
            parts[j][e[1:]] = c
        return [HomogeneousPoly(E, n, j, parts[j], check=False) for j in range(self.degree + 1)]


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\[[^\]]*\])|(x\d+)|(\d+)|(\^)|(\*)|(\+)|(-)|(\S))")


def parse_poly(text: str, field: GF, nvars: int | None = None,
               degree: int | None = None, line: int = 1) -> HomogeneousPoly:
    """Parse ``coeff*x0^a0*x1^a1 + ...``; inhomogeneous input is rejected."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastindex
        col = m.start(kind) + 1
        tokens.append((kind, m.group(kind), col))
        pos = m.end()
    for kind, tok, col in tokens:
        if kind == 8:
            raise ParseError(f"unexpected character {tok!r}", line, col)
    if not tokens:
        raise ParseError("empty polynomial", line, 1)

    idx = 0
    raw_terms = []  # (exponent dict, coeff code, sign, column)

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None, len(text) + 1)

    def parse_coeff(tok, col):
        if tok.startswith("["):
            try:
                digits = [int(x) for x in tok[1:-1].split(",")]
            except ValueError:
                raise ParseError(f"bad element {tok!r}", line, col) from None
            if len(digits) != field.k:
                raise ValidationError(
                    f"element {tok} needs {field.k} coefficients", line, col)
            return field.from_digits(digits)
        return field.from_int(int(tok))

    sign = 1
    kind, tok, col = peek()
    if kind in (6, 7):
        sign = -1 if kind == 7 else 1
        idx += 1
    while True:
        exps: dict = {}
        coeff = 1
        kind, tok, col = peek()
        term_col = col
        expect_factor = True
        while expect_factor:
            kind, tok, col = peek()
            if kind in (1, 3):
                coeff = field.mul(coeff, parse_coeff(tok, col))
                idx += 1
            elif kind == 2:
                var = int(tok[1:])
                idx += 1
                power = 1
                if peek()[0] == 4:
                    idx += 1
                    k2, t2, c2 = peek()
                    if k2 != 3:
                        raise ParseError("expected exponent", line, c2)
                    power = int(t2)
                    idx += 1
                exps[var] = exps.get(var, 0) + power
            else:
                raise ParseError(f"unexpected token {tok!r}", line, col)
            if peek()[0] == 5:
                idx += 1
            else:
                expect_factor = False
        if sign < 0:
            coeff = field.neg(coeff)
        raw_terms.append((exps, coeff, term_col))
        kind, tok, col = peek()
        if kind is None:
            break
        if kind in (6, 7):
            sign = -1 if kind == 7 else 1
            idx += 1
            continue
        raise ParseError(f"unexpected token {tok!r}", line, col)

    top = max((max(e) for e, _, _ in raw_terms if e), default=-1)
    if nvars is None:
        nvars = top + 1 if top >= 0 else 1
    if degree is None:
        degree = sum(raw_terms[0][0].values())
    terms: dict = {}
    for exps, coeff, col in raw_terms:
        if exps and max(exps) >= nvars:
            raise ValidationError(
                f"variable x{max(exps)} out of range", line, col)
        if sum(exps.values()) != degree:
            raise ValidationError(
                f"inhomogeneous term of degree {sum(exps.values())} (expected {degree})", line, col)
        e = tuple(exps.get(i, 0) for i in range(nvars))
        terms[e] = field.add(terms.get(e, 0), coeff)
    return HomogeneousPoly(field, nvars, degree, terms, check=False)


# ---------------------------------------------------------------------------
# operations on forms


def _coerce_point(x, F: GF):
    """Return (field, codes) for a coordinate sequence."""
    if isinstance(x, ProjPoint):
        return x.field, x.coords
    x = list(x)
    if x and isinstance(x[0], FieldElem):
        E = common_field(*(v.field for v in x))
        return E, tuple(v.to(E).value for v in x)
    return F, tuple(int(v) for v in x)


def evaluate(P: HomogeneousPoly, x) -> FieldElem:
    """Exact value of P at coordinates over any extension of P's field."""
    E, codes = _coerce_point(x, P.field)
    if len(codes) != P.nvars:
        raise ArityMismatch(f"expected {P.nvars} coordinates, got {len(codes)}")
    if P.field.p != E.p or E.k % P.field.k:
        # allow P over a larger field than the point
        if P.field.p == E.p and P.field.k % E.k == 0:
            G = P.field
            codes = tuple(E.embed(c, G) for c in codes)
            return FieldElem(G, P.eval_codes(codes, G))
        raise FieldMismatch(f"cannot evaluate a form over {P.field} at a point over {E}")
    return FieldElem(E, P.eval_codes(codes, E))


def jacobian(P: HomogeneousPoly) -> list[HomogeneousPoly]:
    return P.jacobian()


def restrict_to_line(P: HomogeneousPoly, L, B=None) -> HomogeneousPoly:
    """The binary form P(s*A + t*B) for a line spanned by A and B."""
    if B is None:
        A, B = L.A, L.B
    else:
        A = L
    E, (A, B) = _span_points(P.field, A, B)
    if linalg.rank(E, [list(A), list(B)]) < 2:
        raise DegenerateSpan("the two points do not span a line")
    if len(A) != P.nvars:
        raise ArityMismatch(f"line lives in {len(A) - 1}-space, form has {P.nvars} variables")
    images = [HomogeneousPoly(E, 2, 1, {(1, 0): a, (0, 1): b}) for a, b in zip(A, B)]
    return P.to_field(common_field(E, P.field)).substitute(images)


def _span_points(F, A, B):
    EA, ca = _coerce_point(A, F)
    EB, cb = _coerce_point(B, F)
    E = common_field(EA, EB, F)
    ca = tuple(EA.embed(c, E) for c in ca) if EA != E else ca
    cb = tuple(EB.embed(c, E) for c in cb) if EB != E else cb
    return E, (ca, cb)


def binary_to_univariate(f: HomogeneousPoly):
    """(coefficients of f(x, 1) low-to-high, multiplicity of the root (1:0))."""
    d = f.degree
    coeffs = [0] * (d + 1)
    for (a, b), c in f.terms.items():
        coeffs[a] = c
    g = U.trim(coeffs)
    return g, d - U.deg(g)


def univariate_to_binary(F: GF, g, d: int) -> HomogeneousPoly:
    g = list(g) + [0] * (d + 1 - len(g))
    return HomogeneousPoly.binary(F, g[: d + 1])


def binary_roots(f: HomogeneousPoly, m: int = 1) -> list[tuple[ProjPoint, int]]:
    """Roots of a binary form in P^1(GF(q^m)) with multiplicities."""
    if f.nvars != 2:
        raise ArityMismatch("binary_roots needs a form in two variables")
    if not f.terms:
        raise ZeroForm("the form is identically zero")
    E = f.field.extension(m) if m > 1 else f.field
    fe = f.to_field(E)
    g, inf = binary_to_univariate(fe)
    out = []
    if inf:
        out.append((ProjPoint(E, (1, 0)), inf))
    if U.deg(g) > 0:
        for r, mult in U.roots(E, g):
            out.append((ProjPoint(E, (r, 1)), mult))
    out.sort(key=lambda pm: pm[0].key)
    return out


def binary_factor(f: HomogeneousPoly):
    """Irreducible factors over f's field: list of (monic binary form, multiplicity)."""
    if not f.terms:
        raise ZeroForm("the form is identically zero")
    F = f.field
    g, inf = binary_to_univariate(f)
    out = []
    if inf:
        out.append((HomogeneousPoly(F, 2, 1, {(0, 1): 1}), inf))
    if U.deg(g) > 0:
        for h, mult in U.factor(F, g):
            out.append((univariate_to_binary(F, h, U.deg(h)), mult))
    return out


def binary_gcd(f: HomogeneousPoly, g: HomogeneousPoly) -> HomogeneousPoly:
    """Normalized gcd of two binary forms (leading coefficient, s first, equal to 1)."""
    if not f.terms and not g.terms:
        raise BothZero("both forms are identically zero")
    E = common_field(f.field, g.field)
    f, g = f.to_field(E), g.to_field(E)
    if not f.terms:
        return g.normalized()
    if not g.terms:
        return f.normalized()
    uf, ef = binary_to_univariate(f)
    ug, eg = binary_to_univariate(g)
    h = U.gcd(E, uf, ug)
    e = min(ef, eg)
    dh = U.deg(h)
    out = univariate_to_binary(E, h, dh)
    if e:
        out = out * HomogeneousPoly(E, 2, e, {(0, e): 1})
    return out


def binary_gcd_many(forms) -> HomogeneousPoly:
    forms = [f for f in forms if f.terms]
    if not forms:
        raise BothZero("all forms are identically zero")
    g = forms[0].normalized()
    for f in forms[1:]:
        if g.degree == 0:
            break
        g = binary_gcd(g, f)
    return g


def binary_divide(f: HomogeneousPoly, g: HomogeneousPoly) -> HomogeneousPoly:
    """Exact quotient f / g of binary forms (g must divide f)."""
    E = common_field(f.field, g.field)
    f, g = f.to_field(E), g.to_field(E)
    if not f.terms:
        return HomogeneousPoly(E, 2, f.degree - g.degree)
    uf, ef = binary_to_univariate(f)
    ug, eg = binary_to_univariate(g)
    q, r = U.divmod_(E, uf, ug)
    if r or ef < eg:
        raise ValueError("binary form division is not exact")
    return univariate_to_binary(E, q, f.degree - g.degree)


def sylvester_matrix(F: GF, f, g, df: int | None = None, dg: int | None = None):
    """Sylvester matrix of two coefficient lists (low-to-high) with formal degrees."""
    f, g = list(f), list(g)
    df = U.deg(U.trim(f)) if df is None else df
    dg = U.deg(U.trim(g)) if dg is None else dg
    f = f + [0] * (df + 1 - len(f))
    g = g + [0] * (dg + 1 - len(g))
    n = df + dg
    rows = []
    for i in range(dg):
        row = [0] * n
        for j in range(df + 1):
            row[i + j] = f[df - j]
        rows.append(row)
    for i in range(df):
        row = [0] * n
        for j in range(dg + 1):
            row[i + j] = g[dg - j]
        rows.append(row)
    return rows


def sylvester_resultant(f, g, field: GF | None = None, df: int | None = None,
                        dg: int | None = None):
    """Determinant of the Sylvester matrix of two univariate polynomials.

    ``f`` and ``g`` are coefficient lists (low-to-high) of codes in ``field`` or
    lists of FieldElem. With formal degrees df, dg the result is the
    homogeneous resultant of the corresponding binary forms.
    """
    if field is None:
        elems = [x for x in list(f) + list(g) if isinstance(x, FieldElem)]
        field = common_field(*(x.field for x in elems))
        f = [x.to(field).value if isinstance(x, FieldElem) else field.from_int(x) for x in f]
        g = [x.to(field).value if isinstance(x, FieldElem) else field.from_int(x) for x in g]
    if not U.trim(f) or not U.trim(g):
        raise ZeroPolynomial("resultant of a zero polynomial")
    df = U.deg(U.trim(f)) if df is None else df
    dg = U.deg(U.trim(g)) if dg is None else dg
    if df < 1 or dg < 1:
        raise ZeroPolynomial("resultant needs positive degrees")
    return FieldElem(field, linalg.det(field, sylvester_matrix(field, f, g, df, dg)))


def iter_affine_chunks(F: GF, nvars: int, chunk: int = 1 << 16):
    """All vectors of GF(q)^nvars as int64 arrays of bounded row count."""
    q = F.q
    total = q ** nvars
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = []
        for _ in range(nvars):
            cols.append(idx % q)
            idx = idx // q
        yield np.stack(cols[::-1], axis=1) if nvars else np.zeros((len(idx), 0), dtype=np.int64)


def iter_projective_chunks(F: GF, nvars: int, chunk: int = 1 << 16):
    """Canonical points of P^(nvars-1)(GF(q)): chart j has x_j = 1, earlier coordinates 0."""
    for j in range(nvars):
        rest = nvars - j - 1
        for block in iter_affine_chunks(F, rest, chunk):
            n = block.shape[0]
            pts = np.zeros((n, nvars), dtype=np.int64)
            pts[:, j] = 1
            pts[:, j + 1:] = block
            yield pts


def vanishes_on_rational_points(P: HomogeneousPoly, projective: bool = True) -> bool:
    """True iff P is zero at every rational point (projective or affine)."""
    F = P.field
    size = (F.q ** P.nvars)
    if size > FIELD_SIZE_CAP:
        raise SearchSpaceTooLarge(f"{size} evaluation points exceed the 2^24 cap")
    if not P.terms:
        return True
    chunks = iter_projective_chunks(F, P.nvars) if projective else iter_affine_chunks(F, P.nvars)
    for pts in chunks:
        if np.any(P.eval_many(pts) != 0):
            return False
    return True


def all_forms(F: GF, nvars: int, degree: int):
    """Every form of the given shape (exhaustive; callers bound the size)."""
    mons = list(monomials(nvars, degree))
    for coeffs in itertools.product(range(F.q), repeat=len(mons)):
        yield HomogeneousPoly(F, nvars, degree, dict(zip(mons, coeffs)), check=False)
