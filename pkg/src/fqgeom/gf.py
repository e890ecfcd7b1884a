"""Exact arithmetic in GF(p^k).

Elements are stored as integer codes ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``
where ``c0 + c1*t + ...`` is the polynomial-basis representative modulo the
field's modulus. Arithmetic goes through log/exp tables built once per field.

Fields are cached: ``GF.get(p, k)`` always returns the same object, whose
modulus is the lexicographically smallest monic irreducible of degree k
(coefficients compared low degree first).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DegenerateLeadingCoefficient,
    FieldMismatch,
    FieldTooLarge,
    NotASubfield,
    NotPrime,
    ReducibleModulus,
)

FIELD_SIZE_CAP = 1 << 24
_ADD_TABLE_MAX = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    r = math.isqrt(n)
    return all(n % d for d in range(3, r + 1, 2))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^k; raises NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1 or not is_prime(p):
                raise NotPrime("not a prime power")
            return p, k
    raise NotPrime("not a prime power")


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists low-to-high


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return _trim(result)


def is_irreducible_mod_p(coeffs, p: int) -> bool:
    """Ben-Or test: no factor of degree i <= k/2 divides the polynomial."""
    m = _trim(list(c % p for c in coeffs))
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, k // 2 + 1):
        xp = _ppowmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible of degree {k} over GF({p})")  # unreachable


# ---------------------------------------------------------------------------


class GF:
    """The finite field GF(p^k) with a fixed polynomial model."""

    _cache: dict = {}

    @classmethod
    def get(cls, p: int, k: int = 1, modulus=None) -> "GF":
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** k > FIELD_SIZE_CAP:
            raise FieldTooLarge(f"GF({p}^{k}) exceeds the 2^24 field-size cap")
        if modulus is None:
            key = (p, k, None)
            if key not in cls._cache:
                mod = default_modulus(p, k)
                if (p, k, mod) not in cls._cache:
                    cls._cache[(p, k, mod)] = cls(p, k, mod)
                cls._cache[key] = cls._cache[(p, k, mod)]
            return cls._cache[key]
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {k}")
        if not is_irreducible_mod_p(mod, p):
            raise ReducibleModulus(f"modulus {list(mod)} is reducible over GF({p})")
        key = (p, k, mod)
        if key not in cls._cache:
            cls._cache[key] = cls(p, k, mod)
        return cls._cache[key]

    @classmethod
    def of_size(cls, q: int) -> "GF":
        p, k = prime_power(q)
        return cls.get(p, k)

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self._tables_built = False
        self._build_tables()

    # -- identity -----------------------------------------------------------
    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (GF.get, (self.p, self.k, self.modulus))

    @property
    def literal(self) -> str:
        """Serialized form ``GF(p^k;m0,...,mk)``."""
        return f"GF({self.p}^{self.k};{','.join(str(c) for c in self.modulus)})"

    @property
    def is_default(self) -> bool:
        return self.modulus == default_modulus(self.p, self.k)

    # -- tables -------------------------------------------------------------
    def _mul_matrix(self, a_digits):
        """Rows are digits of t^j * a; digits(x*a) = digits(x) @ M mod p."""
        rows = []
        cur = list(a_digits)
        for _ in range(self.k):
            rows.append(cur + [0] * (self.k - len(cur)))
            cur = _pmod([0] + cur, self.modulus, self.p)
        return np.array(rows, dtype=np.int64)

    def _find_primitive(self):
        p, q = self.p, self.q
        if q == 2:
            return [1]
        factors = prime_factors(q - 1)
        for code in range(2, q):
            digits = self._digits_slow(code)
            if all(_ppowmod(digits, (q - 1) // r, self.modulus, p) != [1] for r in factors):
                return digits
        raise RuntimeError("no primitive element")

    def _digits_slow(self, code):
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        place = p ** np.arange(k, dtype=np.int64)
        g = self._find_primitive()
        self.primitive = int(np.dot(g + [0] * (k - len(g)), place))
        n = q - 1
        digits = np.zeros((1, k), dtype=np.int64)
        digits[0, 0] = 1
        gmat = self._mul_matrix(g)
        while digits.shape[0] < n:
            # next power g^L, then shift the whole block by it
            nxt = (digits[-1] @ gmat) % p
            block = (digits @ self._mul_matrix(nxt.tolist())) % p
            digits = np.vstack([digits, block])
        digits = digits[:n]
        exp_codes = digits @ place
        log = np.full(q, -1, dtype=np.int64)
        log[exp_codes] = np.arange(n, dtype=np.int64)
        if q > 2 and (log[1:] < 0).any():
            raise RuntimeError("exp table construction failed")
        if q == 2:
            log[1] = 0
        self.exp_arr = np.concatenate([exp_codes, exp_codes]).astype(np.int64)
        if q == 2:
            self.exp_arr = np.array([1, 1], dtype=np.int64)
        self.log_arr = log
        self._exp = self.exp_arr.tolist()
        self._log = log.tolist()
        if p != 2 and k > 1 and q <= _ADD_TABLE_MAX:
            codes = np.arange(q, dtype=np.int64)
            self.addtab = kernels._kernels_py.vadd(codes[:, None], codes[None, :], p, k, None)
            self._addtab = self.addtab.tolist()
        else:
            self.addtab = None
            self._addtab = None
        if p == 2:
            self._neg = None
        else:
            codes = np.arange(q, dtype=np.int64)
            dig = np.stack([(codes // p ** i) % p for i in range(k)], axis=1)
            self._neg = (((-dig) % p) @ place).tolist()
        self._place = place

    # -- scalar arithmetic on codes ----------------------------------------
    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if self._addtab is not None:
            return self._addtab[a][b]
        p = self.p
        res, place = 0, 1
        for _ in range(self.k):
            res += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return res

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_digits(self, digits) -> int:
        digits = list(digits)
        if len(digits) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(digits)}")
        code = 0
        for i, c in enumerate(digits):
            code += (int(c) % self.p) * self.p ** i
        return code

    def key(self, a: int) -> tuple[int, ...]:
        """Lexicographic key, low-degree coefficient first."""
        return self.digits(a)

    def elements(self) -> range:
        return range(self.q)

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p ** times)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int):
        """A square root of a, or None if a is a non-square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if not self.is_square(a):
            return None
        q = self.q
        if q % 4 == 3:
            r = self.pow(a, (q + 1) // 4)
        else:
            r = _tonelli_shanks(self, a)
        assert self.mul(r, r) == a
        return r

    def trace(self, a: int, sub: "GF | None" = None) -> int:
        """Trace down to ``sub`` (default the prime field), as a code of self."""
        step = 1 if sub is None else sub.k
        if self.k % step:
            raise NotASubfield(f"{sub} is not a subfield of {self}")
        acc = 0
        x = a
        for _ in range(self.k // step):
            acc = self.add(acc, x)
            x = self.pow(x, self.p ** step)
        return acc

    # -- vector arithmetic ---------------------------------------------------
    def vadd(self, a, b):
        return kernels.vadd(a, b, self.p, self.k, self.addtab)

    def vmul(self, a, b):
        return kernels.vmul(a, b, self.log_arr, self.exp_arr)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return np.asarray(self._neg, dtype=np.int64)[a]

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self.exp_arr[(self.log_arr[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def eval_terms(self, exps, coeffs, pts):
        return kernels.eval_terms(np.asarray(exps, dtype=np.int64),
                                  np.asarray(coeffs, dtype=np.int64),
                                  np.asarray(pts, dtype=np.int64),
                                  self.p, self.k, self.log_arr, self.exp_arr, self.addtab)

    # -- towers --------------------------------------------------------------
    def is_subfield_of(self, other: "GF") -> bool:
        return self.p == other.p and other.k % self.k == 0

    def extension(self, m: int) -> "GF":
        """The default model of GF(q^m)."""
        return GF.get(self.p, self.k * m)

    def embed(self, a: int, target: "GF") -> int:
        return int(embedding_array(self, target)[a])

    def restrict(self, a: int, sub: "GF"):
        """Preimage of a under the embedding sub -> self, or None."""
        inv = _inverse_embedding(sub, self)
        v = int(inv[a])
        return None if v < 0 else v

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            return value.to(self)
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.from_digits(value))
        return FieldElem(self, int(value))


def construct_field(p: int, k: int = 1, modulus=None) -> GF:
    """Build GF(p^k), verifying primality and irreducibility."""
    return GF.get(p, k, modulus)


def _tonelli_shanks(F: GF, a: int) -> int:
    q = F.q
    Q, S = q - 1, 0
    while Q % 2 == 0:
        Q //= 2
        S += 1
    z = next(x for x in range(2, q) if not F.is_square(x))
    M = S
    c = F.pow(z, Q)
    t = F.pow(a, Q)
    r = F.pow(a, (Q + 1) // 2)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = F.mul(tt, tt)
            i += 1
        b = c
        for _ in range(M - i - 1):
            b = F.mul(b, b)
        M = i
        c = F.mul(b, b)
        t = F.mul(t, c)
        r = F.mul(r, b)
    return r


# ---------------------------------------------------------------------------
# embeddings

_EMB_CACHE: dict = {}
_INV_CACHE: dict = {}


def _roots_of_prime_poly_in(coeffs, F: GF) -> list[int]:
    """All roots in F of a polynomial with GF(p) coefficients (codes < p)."""
    xs = np.arange(F.q, dtype=np.int64)
    acc = np.zeros(F.q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = F.vadd(F.vmul(acc, xs), np.full(F.q, c % F.p, dtype=np.int64))
    return np.nonzero(acc == 0)[0].tolist()


def _image_table(src: GF, tgt: GF, root: int) -> np.ndarray:
    codes = np.arange(src.q, dtype=np.int64)
    out = np.zeros(src.q, dtype=np.int64)
    power = 1
    for i in range(src.k):
        ci = (codes // src.p ** i) % src.p
        out = tgt.vadd(out, tgt.vmul(ci, np.full(src.q, power, dtype=np.int64)))
        power = tgt.mul(power, root)
    return out


def embedding_array(src: GF, tgt: GF) -> np.ndarray:
    """Lookup array sending codes of ``src`` to codes of ``tgt``.

    The generator t of ``src`` goes to the lexicographically smallest root of
    src's modulus in ``tgt`` among those compatible with the embeddings
    already fixed for the maximal proper subfields of ``src``. This keeps
    every triangle GF(q) -> GF(q^a) -> GF(q^ab) commutative.
    """
    key = (src, tgt)
    hit = _EMB_CACHE.get(key)
    if hit is not None:
        return hit
    if src.p != tgt.p or tgt.k % src.k:
        raise NotASubfield(f"{src} does not embed in {tgt}")
    if src == tgt:
        table = np.arange(src.q, dtype=np.int64)
    elif src.k == 1:
        table = np.arange(src.q, dtype=np.int64)
    else:
        roots = sorted(_roots_of_prime_poly_in(src.modulus, tgt), key=tgt.key)
        subs = [GF.get(src.p, src.k // r) for r in prime_factors(src.k)]
        subs = [s for s in subs if s.k > 1]
        table = None
        for root in roots:
            cand = _image_table(src, tgt, root)
            ok = True
            for sub in subs:
                g = sub.primitive
                via = cand[embedding_array(sub, src)[g]]
                if via != embedding_array(sub, tgt)[g]:
                    ok = False
                    break
            if ok:
                table = cand
                break
        if table is None:
            raise RuntimeError(f"no compatible embedding {src} -> {tgt}")
    table.setflags(write=False)
    _EMB_CACHE[key] = table
    return table


def _inverse_embedding(sub: GF, big: GF) -> np.ndarray:
    key = (sub, big)
    hit = _INV_CACHE.get(key)
    if hit is None:
        fwd = embedding_array(sub, big)
        hit = np.full(big.q, -1, dtype=np.int64)
        hit[fwd] = np.arange(sub.q, dtype=np.int64)
        _INV_CACHE[key] = hit
    return hit


def common_field(*fields: GF) -> GF:
    """The default field generated by all arguments (their compositum)."""
    p = fields[0].p
    k = 1
    for F in fields:
        if F.p != p:
            raise FieldMismatch("fields of different characteristic")
        k = k * F.k // math.gcd(k, F.k)
    if all(F.k == k for F in fields) and len(set(fields)) == 1:
        return fields[0]
    return GF.get(p, k)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElem:
    """An element of a finite field; thin wrapper over the integer code."""

    field: GF
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def to(self, target: GF) -> "FieldElem":
        if target == self.field:
            return self
        return FieldElem(target, self.field.embed(self.value, target))

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self, other
            F = common_field(self.field, other.field)
            return self.to(F), other.to(F)
        return self, FieldElem(self.field, self.field.from_int(int(other)))

    def __add__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.field, a.field.add(a.value, b.value))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.field, a.field.sub(a.value, b.value))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.field, a.field.sub(b.value, a.value))

    def __mul__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.field, a.field.mul(a.value, b.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.field, a.field.div(a.value, b.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def is_zero(self):
        return self.value == 0

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.value}"
        return f"{list(self.coeffs)}"


def embed(x: FieldElem, target: GF) -> FieldElem:
    """Ring-homomorphic image of x in ``target`` (a superfield)."""
    return x.to(target)


def frobenius_orbit(x: FieldElem, base: GF) -> list[FieldElem]:
    """The orbit {x, x^q, x^(q^2), ...} without repetition, q = |base|."""
    F = x.field
    if not base.is_subfield_of(F):
        raise NotASubfield(f"{base} is not a subfield of {F}")
    out = [x.value]
    y = F.pow(x.value, base.q)
    while y != x.value:
        out.append(y)
        y = F.pow(y, base.q)
    return [FieldElem(F, v) for v in out]


def minimal_degree(F: GF, a: int, base: GF) -> int:
    """Degree of a over ``base`` (length of its Frobenius orbit)."""
    d = 1
    y = F.pow(a, base.q)
    while y != a:
        y = F.pow(y, base.q)
        d += 1
    return d


@dataclass(frozen=True)
class QuadraticRoots:
    """Roots of a*x^2 + b*x + c.

    ``field`` is where the roots live: the base field when ``split`` is true,
    otherwise its quadratic extension, in which case the roots are Frobenius
    conjugates over the base.
    """

    roots: tuple[FieldElem, FieldElem]
    field: GF
    base: GF
    split: bool

    @property
    def repeated(self) -> bool:
        return self.roots[0] == self.roots[1]


def _artin_schreier(F: GF, beta: int):
    """A root y of y^2 + y = beta in F (char 2), or None."""
    if F.trace(beta) != 0:
        return None
    if F.k % 2 == 1:
        y, x = 0, beta
        for _ in range((F.k - 1) // 2 + 1):
            y = F.add(y, x)
            x = F.pow(x, 4)
        return y
    # even degree: y = sum_i (sum_{j>i} delta^(2^j)) beta^(2^i) with Tr(delta) = 1
    delta = next(d for d in range(1, F.q) if F.trace(d) == 1)
    dpow = [F.pow(delta, 2 ** j) for j in range(F.k)]
    y = 0
    bpow = beta
    for i in range(F.k):
        s = 0
        for j in range(i + 1, F.k):
            s = F.add(s, dpow[j])
        y = F.add(y, F.mul(s, bpow))
        bpow = F.mul(bpow, bpow)
    return y


def solve_quadratic_codes(F: GF, a: int, b: int, c: int):
    """Roots of a x^2 + b x + c over F; returns (r1, r2, field, split)."""
    if a == 0:
        raise DegenerateLeadingCoefficient("leading coefficient is zero")
    if F.p == 2:
        if b == 0:
            r = F.sqrt(F.div(c, a))
            return r, r, F, True
        beta = F.div(F.mul(a, c), F.mul(b, b))
        scale = F.div(b, a)
        y = _artin_schreier(F, beta)
        if y is not None:
            return F.mul(scale, y), F.mul(scale, F.add(y, 1)), F, True
        E = F.extension(2)
        yb = _artin_schreier(E, F.embed(beta, E))
        sE = F.embed(scale, E)
        return E.mul(sE, yb), E.mul(sE, E.add(yb, 1)), E, False
    disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))
    two_a = F.mul(F.from_int(2), a)
    root = F.sqrt(disc)
    if root is not None:
        r1 = F.div(F.sub(root, b), two_a)
        r2 = F.div(F.sub(F.neg(root), b), two_a)
        return r1, r2, F, True
    E = F.extension(2)
    rootE = E.sqrt(F.embed(disc, E))
    bE, taE = F.embed(b, E), F.embed(two_a, E)
    r1 = E.div(E.sub(rootE, bE), taE)
    r2 = E.div(E.sub(E.neg(rootE), bE), taE)
    return r1, r2, E, False


def solve_quadratic(a: FieldElem, b: FieldElem, c: FieldElem) -> QuadraticRoots:
    """Roots of a x^2 + b x + c tagged with their field of definition."""
    F = common_field(a.field, b.field, c.field)
    a, b, c = a.to(F), b.to(F), c.to(F)
    r1, r2, E, split = solve_quadratic_codes(F, a.value, b.value, c.value)
    if not split and E.key(r2) < E.key(r1):
        r1, r2 = r2, r1
    return QuadraticRoots((FieldElem(E, r1), FieldElem(E, r2)), E, F, split)


def parse_field_literal(text: str) -> GF:
    """Parse ``GF(p^k;m0,...,mk)``, ``GF(p^k)`` or ``GF(q)``."""
    from .errors import ParseError, ValidationError

    s = text.strip()
    if not (s.startswith("GF(") and s.endswith(")")):
        raise ParseError(f"bad field literal {text!r}", 1, 1)
    body = s[3:-1]
    mod = None
    if ";" in body:
        body, mtext = body.split(";", 1)
        try:
            mod = [int(x) for x in mtext.split(",")]
        except ValueError:
            raise ParseError(f"bad modulus in {text!r}", 1, s.index(";") + 2) from None
    try:
        if "^" in body:
            p, k = (int(x) for x in body.split("^"))
        else:
            p, k = prime_power(int(body))
    except (ValueError, NotPrime) as exc:
        raise ParseError(f"bad field size in {text!r}: {exc}", 1, 4) from None
    try:
        return GF.get(p, k, mod)
    except (ReducibleModulus, NotPrime) as exc:
        raise ValidationError(str(exc), 1, 1) from exc
