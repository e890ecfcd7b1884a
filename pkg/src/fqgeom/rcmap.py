"""Maps P^1 -> P^N given by binary forms of a common degree."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CommonFactor, ValidationError
from .gf import GF, common_field
from .mpoly import HomogeneousPoly, binary_divide, binary_gcd_many
from .points import ProjPoint, format_elem, parse_elem


def _coeff_row(f: HomogeneousPoly, d: int) -> list[int]:
    """Coefficients of s^d, s^(d-1) t, ..., t^d."""
    return [f.terms.get((d - j, j), 0) for j in range(d + 1)]


@dataclass(frozen=True, eq=False)
class RationalCurveMap:
    """(s:t) -> (f_0(s,t) : ... : f_N(s,t)) with deg f_i = d and no common zero.

    Scaling is canonical: the first nonzero entry of the coefficient matrix
    (rows are coordinates, columns run s^d, s^(d-1)t, ..., t^d) equals 1.
    """

    field: GF
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise ValidationError("a curve map needs at least one coordinate")
        d = max((f.degree for f in coords if f.terms), default=None)
        if d is None:
            raise ValidationError("all coordinates are zero")
        fixed = []
        for f in coords:
            if f.nvars != 2:
                raise ValidationError("curve coordinates must be binary forms")
            if f.field != self.field:
                f = f.to_field(self.field)
            if not f.terms:
                f = HomogeneousPoly(self.field, 2, d)
            elif f.degree != d:
                raise ValidationError("curve coordinates must share one degree")
            fixed.append(f)
        lead = next(c for row in (_coeff_row(f, d) for f in fixed) for c in row if c)
        if lead != 1:
            inv = self.field.inv(lead)
            fixed = [f.scale(inv) for f in fixed]
        object.__setattr__(self, "coords", tuple(fixed))

    @classmethod
    def from_forms(cls, forms, cancel: bool = True, field: GF | None = None) -> "RationalCurveMap":
        """Build a map, dividing out the common factor of the forms when ``cancel``."""
        forms = list(forms)
        E = field or common_field(*(f.field for f in forms))
        forms = [f.to_field(E) for f in forms]
        g = binary_gcd_many(forms)
        if g.degree > 0:
            if not cancel:
                raise CommonFactor(f"coordinates share the factor {g}")
            forms = [binary_divide(f, g) if f.terms else HomogeneousPoly(E, 2, f.degree - g.degree)
                     for f in forms]
        return cls(E, tuple(forms))

    @classmethod
    def constant(cls, point: ProjPoint) -> "RationalCurveMap":
        E = point.field
        return cls(E, tuple(HomogeneousPoly(E, 2, 0, {(0, 0): c}) for c in point.coords))

    # -- accessors ---------------------------------------------------------------
    @property
    def degree(self) -> int:
        return next(f.degree for f in self.coords if f.terms)

    @property
    def N(self) -> int:
        return len(self.coords) - 1

    def matrix(self) -> list[list[int]]:
        d = self.degree
        return [_coeff_row(f, d) for f in self.coords]

    def __eq__(self, other):
        return (isinstance(other, RationalCurveMap) and self.field == other.field
                and self.matrix() == other.matrix())

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.matrix())))

    def __repr__(self):
        return f"RationalCurveMap({self.field}, d={self.degree}, [{', '.join(str(f) for f in self.coords)}])"

    # -- evaluation ----------------------------------------------------------------
    def value_codes(self, s: int, t: int, E: GF | None = None) -> tuple[int, ...]:
        E = E or self.field
        return tuple(f.eval_codes((s, t), E) if f.terms else 0 for f in self.coords)

    def at(self, param) -> ProjPoint:
        """Image of a parameter point (ProjPoint of P^1 or an (s, t) pair of codes)."""
        if isinstance(param, ProjPoint):
            E = common_field(self.field, param.field)
            s, t = param.to(E).coords
        else:
            E = self.field
            s, t = param
        return ProjPoint(E, self.value_codes(s, t, E))

    def compose(self, P: HomogeneousPoly) -> HomogeneousPoly:
        """The binary form P(f_0, ..., f_N)."""
        return P.substitute(list(self.coords))

    # -- field operations -------------------------------------------------------------
    def to_field(self, E: GF) -> "RationalCurveMap":
        if E == self.field:
            return self
        return RationalCurveMap(E, tuple(f.to_field(E) for f in self.coords))

    def frobenius(self, base: GF, times: int = 1) -> "RationalCurveMap":
        return RationalCurveMap(self.field, tuple(f.frobenius(base, times) for f in self.coords))

    def restrict_coeffs(self, sub: GF):
        out = []
        for f in self.coords:
            g = f.restrict_coeffs(sub)
            if g is None:
                return None
            out.append(g)
        return RationalCurveMap(sub, tuple(out))

    def reparametrize(self, a, b, c, e) -> "RationalCurveMap":
        """Compose with (s:t) -> (a s + b t : c s + e t)."""
        E = self.field
        sub = [HomogeneousPoly(E, 2, 1, {(1, 0): a, (0, 1): b}),
               HomogeneousPoly(E, 2, 1, {(1, 0): c, (0, 1): e})]
        return RationalCurveMap.from_forms([f.substitute(sub) if f.terms else
                                            HomogeneousPoly(E, 2, self.degree)
                                            for f in self.coords], field=E)

    # -- serialization ------------------------------------------------------------------
    def to_json(self):
        F = self.field
        return {
            "field": F.literal,
            "degree": self.degree,
            "coeffs": [[format_elem(F, c) for c in row] for row in self.matrix()],
        }

    @classmethod
    def from_json(cls, data) -> "RationalCurveMap":
        from .gf import parse_field_literal

        F = parse_field_literal(data["field"])
        d = int(data["degree"])
        forms = []
        for row in data["coeffs"]:
            if len(row) != d + 1:
                raise ValidationError(f"coefficient row needs {d + 1} entries")
            forms.append(HomogeneousPoly(F, 2, d, {(d - j, j): parse_elem(F, c)
                                                   for j, c in enumerate(row)}))
        return cls.from_forms(forms, cancel=False, field=F)

    def to_text(self) -> str:
        lines = [self.field.literal, f"degree {self.degree}"]
        for row in self.to_json()["coeffs"]:
            lines.append(" ".join(str(c).replace(" ", "") for c in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RationalCurveMap":
        import json

        from .errors import ParseError
        from .gf import parse_field_literal

        rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if len(rows) < 3:
            raise ParseError("curve file needs a field, a degree line and coefficient rows", 1, 1)
        F = parse_field_literal(rows[0])
        parts = rows[1].split()
        if len(parts) != 2 or parts[0] != "degree":
            raise ParseError("expected 'degree <int>'", 2, 1)
        d = int(parts[1])
        coeffs = []
        for i, ln in enumerate(rows[2:], start=3):
            try:
                coeffs.append([json.loads(tok) for tok in ln.split()])
            except json.JSONDecodeError:
                raise ParseError("bad coefficient row", i, 1) from None
        return cls.from_json({"field": F.literal, "degree": d, "coeffs": coeffs})
