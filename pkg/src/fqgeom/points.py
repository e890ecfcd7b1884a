"""Projective points with canonical normalization and element serialization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF, common_field


def format_elem(F: GF, a: int):
    """JSON-friendly element: an int over a prime field, a digit list otherwise."""
    if F.k == 1:
        return int(a)
    return list(F.digits(a))


def parse_elem(F: GF, value) -> int:
    if isinstance(value, (list, tuple)):
        return F.from_digits(value)
    return F.from_int(int(value))


def canonical_coords(F: GF, coords) -> tuple[int, ...]:
    coords = tuple(int(c) for c in coords)
    for c in coords:
        if c:
            if c == 1:
                return coords
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in coords)
    raise ValueError("all coordinates are zero")


@dataclass(frozen=True)
class ProjPoint:
    """A point of projective space; the first nonzero coordinate is 1."""

    field: GF
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", canonical_coords(self.field, self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def key(self):
        F = self.field
        return tuple(F.key(c) for c in self.coords)

    def __lt__(self, other: "ProjPoint"):
        return self.key < other.key

    def to(self, target: GF) -> "ProjPoint":
        if target == self.field:
            return self
        return ProjPoint(target, tuple(self.field.embed(c, target) for c in self.coords))

    def frobenius(self, base: GF, times: int = 1) -> "ProjPoint":
        e = base.q ** times
        return ProjPoint(self.field, tuple(self.field.pow(c, e) for c in self.coords))

    def restrict(self, sub: GF):
        """The same point over ``sub`` if all coordinates lie there, else None."""
        if sub == self.field:
            return self
        out = []
        for c in self.coords:
            v = self.field.restrict(c, sub)
            if v is None:
                return None
            out.append(v)
        return ProjPoint(sub, tuple(out))

    def degree_over(self, base: GF) -> int:
        """Size of the Frobenius orbit over ``base``."""
        d = 1
        y = self.frobenius(base)
        while y != self:
            y = y.frobenius(base)
            d += 1
        return d

    def to_json(self):
        return [format_elem(self.field, c) for c in self.coords]

    @classmethod
    def from_json(cls, F: GF, data) -> "ProjPoint":
        return cls(F, tuple(parse_elem(F, v) for v in data))

    def __repr__(self):
        return "(" + ":".join(str(format_elem(self.field, c)) for c in self.coords) + ")"


def same_field(*points: ProjPoint):
    """Coerce points to their common field."""
    E = common_field(*(pt.field for pt in points))
    return E, [pt.to(E) for pt in points]


_RANK_CACHE: dict = {}


def lex_rank(F: GF):
    """Array r with r[a] < r[b] iff key(a) < key(b)."""
    hit = _RANK_CACHE.get(F)
    if hit is None:
        codes = np.arange(F.q, dtype=np.int64)
        hit = np.zeros(F.q, dtype=np.int64)
        for i in range(F.k):
            hit += ((codes // F.p ** i) % F.p) * F.p ** (F.k - 1 - i)
        _RANK_CACHE[F] = hit
    return hit


def lex_sort_rows(F: GF, rows):
    """Sort an int64 code matrix row-wise in lexicographic key order."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[0] == 0:
        return rows
    r = lex_rank(F)[rows]
    order = np.lexsort(r.T[::-1])
    return rows[order]
