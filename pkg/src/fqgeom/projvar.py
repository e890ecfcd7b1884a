"""Hypersurfaces in projective space: point censuses, smoothness, count windows."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    ParseError,
    PointNotOnHypersurface,
    SearchSpaceTooLarge,
    ValidationError,
)
from .gf import FIELD_SIZE_CAP, GF, parse_field_literal
from .mpoly import HomogeneousPoly, iter_projective_chunks, parse_poly
from .points import ProjPoint

DEFAULT_KMAX = 4


def projective_count(q: int, n: int) -> int:
    """#P^n(GF(q))."""
    if n < 0:
        return 0
    return sum(q ** i for i in range(n + 1))


@dataclass(frozen=True, eq=False)
class Hypersurface:
    """X = V(F) in P^(n+1), where F has n+2 variables."""

    equation: HomogeneousPoly

    def __post_init__(self):
        if self.equation.is_zero():
            raise ValidationError("the zero form does not define a hypersurface")
        if self.equation.nvars < 2:
            raise ValidationError("a hypersurface needs at least two variables")

    @property
    def field(self) -> GF:
        return self.equation.field

    @property
    def n(self) -> int:
        return self.equation.nvars - 2

    @property
    def nvars(self) -> int:
        return self.equation.nvars

    @property
    def degree(self) -> int:
        return self.equation.degree

    def __eq__(self, other):
        return isinstance(other, Hypersurface) and self.equation == other.equation

    def __hash__(self):
        return hash(self.equation)

    def contains(self, p) -> bool:
        E = p.field if isinstance(p, ProjPoint) else self.field
        coords = p.coords if isinstance(p, ProjPoint) else tuple(p)
        E2 = _ambient_field(self.field, E)
        if E2 != E:
            coords = tuple(E.embed(c, E2) for c in coords)
        return self.equation.eval_codes(coords, E2) == 0

    def base_change(self, E: GF) -> "Hypersurface":
        return Hypersurface(self.equation.to_field(E))

    def partials(self):
        cache = self.__dict__.get("_partials")
        if cache is None:
            cache = self.equation.jacobian()
            object.__setattr__(self, "_partials", cache)
        return cache

    def gradient_at(self, p: ProjPoint) -> list[int]:
        E = _ambient_field(self.field, p.field)
        coords = p.to(E).coords
        return [d.eval_codes(coords, E) for d in self.partials()]

    # -- text format -------------------------------------------------------------
    def to_text(self) -> str:
        return "\n".join([
            self.field.literal,
            f"vars {self.nvars}",
            f"deg {self.degree}",
            str(self.equation),
        ]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypersurface":
        lines = text.splitlines()
        body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
        if len(body) < 4:
            raise ParseError("hypersurface file needs a field, vars, deg and polynomial line",
                             len(lines) + 1, 1)
        (l1, fl), (l2, vl), (l3, dl) = body[:3]
        try:
            F = parse_field_literal(fl)
        except (ParseError, ValidationError) as exc:
            raise type(exc)(str(exc).split(" (line")[0], l1, exc.column or 1) from exc
        nvars = _header_int(vl, "vars", l2)
        deg = _header_int(dl, "deg", l3)
        poly_lines = body[3:]
        joined = ""
        offsets = []
        for ln_no, ln in poly_lines:
            offsets.append((len(joined), ln_no))
            joined += ln + " "
        try:
            P = parse_poly(joined, F, nvars, deg)
        except (ParseError, ValidationError) as exc:
            col = exc.column or 1
            ln_no, start = poly_lines[0][0], 0
            for off, no in offsets:
                if off < col:
                    ln_no, start = no, off
            raise type(exc)(str(exc).split(" (line")[0], ln_no, col - start) from exc
        return cls(P)


def _header_int(line: str, name: str, line_no: int) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != name:
        raise ParseError(f"expected '{name} <int>'", line_no, 1)
    try:
        return int(parts[1])
    except ValueError:
        raise ParseError(f"expected an integer after '{name}'", line_no, len(parts[0]) + 2) from None


def _ambient_field(F: GF, E: GF) -> GF:
    if F == E:
        return F
    if E.is_subfield_of(F) and not F.is_subfield_of(E):
        return F
    from .gf import common_field
    return common_field(F, E)


# ---------------------------------------------------------------------------
# enumeration


def _check_enumeration(q: int, nvars: int):
    size = q ** (nvars - 1)
    if size > FIELD_SIZE_CAP:
        raise SearchSpaceTooLarge(f"enumerating P^{nvars - 1} over GF({q}) needs ~{size} points (cap 2^24)")


def point_array(X: Hypersurface, m: int = 1) -> tuple[GF, np.ndarray]:
    """Rational points over GF(q^m) as an int64 array of canonical coordinates."""
    E = X.field.extension(m) if m > 1 else X.field
    _check_enumeration(E.q, X.nvars)
    hits = []
    for pts in iter_projective_chunks(E, X.nvars):
        vals = X.equation.eval_many(pts, E)
        sel = pts[vals == 0]
        if len(sel):
            hits.append(sel)
    arr = np.concatenate(hits) if hits else np.zeros((0, X.nvars), dtype=np.int64)
    return E, arr


def enumerate_points(X: Hypersurface, m: int = 1) -> list[ProjPoint]:
    """All points of X(GF(q^m)), canonical and sorted lexicographically."""
    E, arr = point_array(X, m)
    pts = [ProjPoint(E, tuple(int(c) for c in row)) for row in arr]
    pts.sort(key=lambda pt: pt.key)
    return pts


def count_points(X: Hypersurface, m: int = 1) -> int:
    return int(point_array(X, m)[1].shape[0])


def is_smooth_point(X: Hypersurface, p: ProjPoint) -> bool:
    """True iff some partial derivative of the equation is nonzero at p."""
    if not X.contains(p):
        raise PointNotOnHypersurface(f"{p} is not on the hypersurface")
    return any(v != 0 for v in X.gradient_at(p))


def singular_points(X: Hypersurface, m: int = 1) -> list[ProjPoint]:
    """Common zeros of the equation and all partials over GF(q^m)."""
    E = X.field.extension(m) if m > 1 else X.field
    _check_enumeration(E.q, X.nvars)
    polys = [X.equation] + [d for d in X.partials() if not d.is_zero()]
    out = []
    for pts in iter_projective_chunks(E, X.nvars):
        mask = np.ones(pts.shape[0], dtype=bool)
        for P in polys:
            sel = pts[mask]
            if not len(sel):
                break
            mask[np.nonzero(mask)[0][P.eval_many(sel, E) != 0]] = False
        for row in pts[mask]:
            out.append(ProjPoint(E, tuple(int(c) for c in row)))
    out.sort(key=lambda pt: pt.key)
    return out


@dataclass
class SingularityReport:
    """Outcome of a bounded search for singular points.

    ``verdict`` is one of ``singular``, ``none-found`` or ``infeasible``.
    ``none-found`` means no singular point exists over GF(q^m) for m <= kmax;
    it is not a smoothness certificate.
    """

    kmax: int
    verdict: str
    found: dict = dc_field(default_factory=dict)
    checked: list = dc_field(default_factory=list)
    infeasible_from: int | None = None

    @property
    def note(self) -> str:
        if self.verdict == "singular":
            return "singular point found"
        if self.verdict == "none-found":
            return (f"no singular point found over extensions of degree <= {self.kmax}; "
                    "this is not a proof of smoothness")
        return f"enumeration infeasible from extension degree {self.infeasible_from}"

    @property
    def probe_smooth(self) -> bool:
        return self.verdict == "none-found"

    def to_json(self):
        return {
            "kmax": self.kmax,
            "verdict": self.verdict,
            "note": self.note,
            "checked_degrees": self.checked,
            "singular_points": {str(m): [p.to_json() for p in pts] for m, pts in self.found.items()},
            "infeasible_from": self.infeasible_from,
        }


def singular_locus_probe(X: Hypersurface, kmax: int = DEFAULT_KMAX,
                         stop_at_first: bool = False) -> SingularityReport:
    """Search for singular points over GF(q^m) for m = 1..kmax."""
    report = SingularityReport(kmax=kmax, verdict="none-found")
    for m in range(1, kmax + 1):
        try:
            pts = singular_points(X, m)
        except SearchSpaceTooLarge:
            report.infeasible_from = m
            if not report.found:
                report.verdict = "infeasible"
            break
        report.checked.append(m)
        if pts:
            report.found[m] = pts
            report.verdict = "singular"
            if stop_at_first:
                break
    return report


def is_probe_smooth(X: Hypersurface, kmax: int = DEFAULT_KMAX) -> bool:
    return singular_locus_probe(X, kmax, stop_at_first=True).verdict == "none-found"


@dataclass
class CountWindows:
    """Point count against the Chevalley-Warning floor and the Deligne-Weil window."""

    q: int
    n: int
    degree: int
    count: int
    cw_r: int | None
    cw_bound: int | None
    cw_pass: bool | None
    dw_center: int
    dw_radius_sq: int
    dw_pass: bool
    smooth_assumed: bool
    dw_conditional: bool = True

    @property
    def dw_radius(self) -> float:
        return self.dw_radius_sq ** 0.5

    def to_json(self):
        return {
            "q": self.q, "n": self.n, "degree": self.degree, "count": self.count,
            "cw_r": self.cw_r, "cw_bound": self.cw_bound, "cw_pass": self.cw_pass,
            "dw_center": self.dw_center, "dw_radius": self.dw_radius,
            "dw_pass": self.dw_pass, "dw_conditional_on_smoothness": self.dw_conditional,
            "smooth_assumed": self.smooth_assumed,
        }


def count_windows(X: Hypersurface, count: int | None = None,
                  smooth_assumed: bool = False) -> CountWindows:
    """Compare #X(GF(q)) with the lower bound #P^r(GF(q)), r = n+1-deg, and the
    window |#X - #P^n| <= d^(n+1) q^(n/2) (meaningful only for smooth X)."""
    q, n, d = X.field.q, X.n, X.degree
    if count is None:
        count = count_points(X)
    if d <= n + 1:
        r = n + 1 - d
        bound = projective_count(q, r)
        cw_pass = count >= bound
    else:
        r = bound = cw_pass = None
    center = projective_count(q, n)
    radius_sq = d ** (2 * (n + 1)) * q ** n
    dw_pass = (count - center) ** 2 <= radius_sq
    return CountWindows(q, n, d, count, r, bound, cw_pass, center, radius_sq, dw_pass,
                        smooth_assumed)


def subvariety_count_bound(V, r: int, d: int, q: int | None = None) -> bool:
    """#V(GF(q)) <= d * #P^r(GF(q)) for V of dimension r and degree d."""
    if isinstance(V, Hypersurface):
        q = V.field.q if q is None else q
        count = count_points(V)
    elif isinstance(V, int):
        count = V
    else:
        V = list(V)
        count = len(set(V))
        if q is None:
            if not V:
                return True
            q = V[0].field.q
    if q is None:
        raise ValueError("field size required")
    return count <= d * projective_count(q, r)


def census_text(X: Hypersurface, m: int, points) -> str:
    """JSON header line, then one canonical point per line."""
    E = X.field.extension(m) if m > 1 else X.field
    head = json.dumps({"field": E.literal, "m": m, "count": len(points), "kind": "points"},
                      sort_keys=True)
    lines = [head] + [json.dumps(p.to_json(), separators=(",", ":")) for p in points]
    return "\n".join(lines) + "\n"
