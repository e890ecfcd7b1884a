"""Command-line interface.

Exit codes depend only on the outcome category: 0 success, 1 honest
negative (exhausted search, failed claim), 2 infeasible input or error.
Every invocation emits one run manifest, appended to ``DIR/manifests.jsonl``
with ``--store DIR`` or written to stderr otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .errors import FqGeomError, ParseError, ReplayMismatch, ValidationError

EXIT_CODES = {"success": 0, "negative": 1, "infeasible": 2}
_VOLATILE = {"runtime", "wall_time"}


@dataclass
class Outcome:
    payload: dict
    category: str = "success"
    text: str | None = None


@dataclass
class Context:
    args: argparse.Namespace
    inputs: dict = dc_field(default_factory=dict)
    fields: list = dc_field(default_factory=list)
    store: object = None

    def use_field(self, F):
        self.fields.append(F.literal)
        return F


def _strip_volatile(obj):
    if isinstance(obj, dict):
        return {k: _strip_volatile(v) for k, v in obj.items() if k not in _VOLATILE}
    if isinstance(obj, list):
        return [_strip_volatile(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# input parsing


def _read(ctx: Context, path: str) -> str:
    from .store import file_digest

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    ctx.inputs[path] = file_digest(path)
    return text


def load_hypersurface(ctx: Context, source: str):
    """A hypersurface file, or a gallery identifier such as ``sd`` or ``fermat(2,4)``."""
    from . import gallery
    from .errors import UnknownClaim
    from .projvar import Hypersurface
    from .store import digest

    if os.path.exists(source):
        X = Hypersurface.from_text(_read(ctx, source))
    else:
        try:
            X = gallery.build(source).hypersurface
        except UnknownClaim:
            raise ParseError(f"{source!r} is neither a file nor a gallery entry", 1, 1) from None
        ctx.inputs[f"gallery:{source}"] = digest(X.to_text())
    ctx.use_field(X.field)
    return X


def parse_point(F, text: str, line: int = 1):
    """``[c0,...]`` JSON (digit lists over extension fields) or ``c0:c1:...``."""
    from .points import ProjPoint

    s = text.strip()
    try:
        if s.startswith("["):
            data = json.loads(s)
        else:
            data = [json.loads(tok) for tok in s.split(":")]
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad point {text!r}", line, exc.pos + 1) from None
    try:
        return ProjPoint.from_json(F, data)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"bad point {text!r}: {exc}", line, 1) from None


def load_curve(ctx: Context, path: str):
    from .rcmap import RationalCurveMap

    text = _read(ctx, path)
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON in {path}", exc.lineno, exc.colno) from None
        try:
            f = RationalCurveMap.from_json(data)
        except KeyError as exc:
            raise ValidationError(f"curve file {path} lacks {exc}") from None
    else:
        f = RationalCurveMap.from_text(text)
    ctx.use_field(f.field)
    return f


def _load_json(ctx: Context, path: str):
    """JSON from a file, or inline when the argument starts with a bracket."""
    text = path if path.lstrip()[:1] in ("[", "{") else _read(ctx, path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path}", exc.lineno, exc.colno) from None


def _ext(ctx: Context, X, m: int):
    E = X.field.extension(m) if m > 1 else X.field
    return ctx.use_field(E)


def _table_pairs(F, data):
    rows = data["table"] if isinstance(data, dict) else data
    from .points import ProjPoint

    out = []
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise ValidationError("table rows are [parameter, point] pairs", i, 1)
        try:
            out.append((ProjPoint.from_json(F, row[0]), ProjPoint.from_json(F, row[1])))
        except (ValueError, TypeError) as exc:
            raise ValidationError(f"bad table row: {exc}", i, 1) from None
    return out


def _parse_through(F, items):
    """``t=x`` constraints; points use the colon or JSON point syntax."""
    out = []
    for n, text in enumerate(items, start=1):
        for part in _split_top(text):
            if "=" not in part:
                raise ParseError(f"constraint {part!r} needs the form t=x", n, 1)
            t, x = part.split("=", 1)
            out.append((parse_point(F, t, n), parse_point(F, x, n)))
    return out


def _split_top(text: str):
    """Split on commas outside brackets."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        depth += ch == "["
        depth -= ch == "]"
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def _write(path: str | None, text: str):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# ---------------------------------------------------------------------------
# handlers


def cmd_field(ctx: Context) -> Outcome:
    from .gf import parse_field_literal

    F = ctx.use_field(parse_field_literal(ctx.args.literal))
    payload = {"field": F.literal, "p": F.p, "k": F.k, "q": F.q,
               "modulus": list(F.modulus), "default_modulus": F.is_default,
               "primitive": list(F.digits(F.primitive))}
    if ctx.args.elements:
        payload["elements"] = [list(F.digits(a)) for a in F.elements()]
    return Outcome(payload, text=f"{F.literal}: q = {F.q}, primitive element {payload['primitive']}")


def cmd_poly(ctx: Context) -> Outcome:
    from .gf import parse_field_literal
    from .mpoly import parse_poly

    F = ctx.use_field(parse_field_literal(ctx.args.field))
    text = _read(ctx, ctx.args.file) if ctx.args.file else ctx.args.text
    if text is None:
        raise ValidationError("give a polynomial or --file")
    P = parse_poly(" ".join(text.split()), F, ctx.args.nvars)
    payload = {"field": F.literal, "nvars": P.nvars, "degree": P.degree,
               "terms": len(P.terms), "canonical": str(P)}
    if ctx.args.eval:
        x = parse_point(F, ctx.args.eval)
        payload["value"] = list(F.digits(P.eval_codes(x.coords, F)))
    return Outcome(payload, text=str(P))


def cmd_variety_count(ctx: Context) -> Outcome:
    from .projvar import census_text, enumerate_points

    X = load_hypersurface(ctx, ctx.args.X)
    E = _ext(ctx, X, ctx.args.m)
    pts = enumerate_points(X, ctx.args.m)
    _write(ctx.args.out, census_text(X, ctx.args.m, pts))
    payload = {"field": E.literal, "m": ctx.args.m, "count": len(pts)}
    if ctx.args.list:
        payload["points"] = [p.to_json() for p in pts]
    return Outcome(payload, text=f"#X({E.literal}) = {len(pts)}")


def cmd_variety_probe(ctx: Context) -> Outcome:
    from .projvar import singular_locus_probe

    X = load_hypersurface(ctx, ctx.args.X)
    rep = singular_locus_probe(X, ctx.args.kmax)
    cat = "success" if rep.verdict == "none-found" else ("negative" if rep.verdict == "singular"
                                                         else "infeasible")
    return Outcome(rep.to_json(), cat, text=f"probe to kmax={ctx.args.kmax}: {rep.verdict}")


def cmd_variety_windows(ctx: Context) -> Outcome:
    from .projvar import count_points, count_windows

    X = load_hypersurface(ctx, ctx.args.X)
    Y = X.base_change(_ext(ctx, X, ctx.args.m)) if ctx.args.m > 1 else X
    w = count_windows(Y, count_points(Y), smooth_assumed=ctx.args.smooth)
    data = w.to_json()
    ok = w.dw_pass and (w.cw_pass is not False)
    return Outcome(data, "success" if ok else "negative",
                   text=f"count {w.count}: lower bound {w.cw_pass}, window {w.dw_pass}")


def _lines_payload(lines, E):
    return {"field": E.literal, "count": len(lines), "lines": [L.to_json() for L in lines]}


def cmd_lines_census(ctx: Context) -> Outcome:
    from .incidence import lines_on

    X = load_hypersurface(ctx, ctx.args.X)
    E = _ext(ctx, X, ctx.args.m)
    lines = lines_on(X, ctx.args.m, ctx.args.method)
    payload = _lines_payload(lines, E)
    _write(ctx.args.out, _dumps(payload) + "\n")
    return Outcome(payload, text=f"{len(lines)} lines over {E.literal}")


def cmd_lines_through(ctx: Context) -> Outcome:
    from .incidence import lines_through_point

    X = load_hypersurface(ctx, ctx.args.X)
    E = _ext(ctx, X, ctx.args.m)
    p = parse_point(E, ctx.args.point)
    lines = lines_through_point(X, p, ctx.args.m)
    return Outcome(_lines_payload(lines, E), text=f"{len(lines)} lines through {p}")


def cmd_lines_classify(ctx: Context) -> Outcome:
    from .incidence import Plane, classify_plane_section

    X = load_hypersurface(ctx, ctx.args.X)
    E = _ext(ctx, X, ctx.args.m)
    H = Plane(E, parse_point(E, ctx.args.plane).coords)
    sec = classify_plane_section(X, H)
    data = sec.to_json()
    data["conjugate_triple"] = sec.conjugate_triple
    return Outcome(data, text=f"{sec.kind}" + (" (conjugate triple)" if sec.conjugate_triple else ""))


def cmd_chord_third(ctx: Context) -> Outcome:
    from .chord import third_point

    X = load_hypersurface(ctx, ctx.args.X)
    E = _ext(ctx, X, ctx.args.m)
    r = third_point(X, parse_point(E, ctx.args.p), parse_point(E, ctx.args.p2))
    return Outcome({"field": r.field.literal, "point": r.to_json()}, text=repr(r))


def cmd_chord_descend(ctx: Context) -> Outcome:
    from .chord import descend

    X = load_hypersurface(ctx, ctx.args.X)
    phi = descend(X, load_curve(ctx, ctx.args.phi2))
    _write(ctx.args.out, _dumps(phi.to_json()) + "\n")
    return Outcome({"phi": phi.to_json()}, text=f"descended curve of degree {phi.degree}")


def cmd_chord_set_map(ctx: Context) -> Outcome:
    from .chord import descend_set_map
    from .errors import ExtensionSearchExhausted

    X = load_hypersurface(ctx, ctx.args.X)
    table = _table_pairs(X.field, _load_json(ctx, ctx.args.table))
    ctx.use_field(X.field.extension(2))
    try:
        cert = descend_set_map(X, table, dmax=ctx.args.dmax, budget=ctx.args.budget)
    except ExtensionSearchExhausted as exc:
        payload = {"marker": "Exhausted", "reason": str(exc), "partial": exc.certificate}
        return Outcome(payload, "negative", text=f"no extension found: {exc}")
    data = cert.to_json()
    _write(ctx.args.out, cert.dumps() + "\n")
    if ctx.store is not None:
        ctx.store.append("certificate", data)
    return Outcome(data, text=f"extension of degree {cert.phi.degree} found")


def cmd_chord_weil(ctx: Context) -> Outcome:
    from .chord import weil_restrict_p1

    W = weil_restrict_p1(ctx.args.q, ctx.args.a)
    ctx.use_field(W.base)
    ctx.use_field(W.ext)
    data = W.to_json()
    if ctx.args.points:
        pts = W.model_points()
        back = {W.to_model(W.from_model(u)) == u for u in pts}
        data["count"] = len(pts)
        data["round_trip"] = back == {True}
    return Outcome(data, text=f"{data['equation']} over {W.base.literal}")


def cmd_chord_verify(ctx: Context) -> Outcome:
    from .chord import replay_certificate

    data = _load_json(ctx, ctx.args.certificate)
    X = load_hypersurface(ctx, ctx.args.X) if ctx.args.X else None
    log = replay_certificate(X, data)
    return Outcome({"checks": log, "count": len(log)}, text=f"{len(log)} checks passed")


def cmd_curves_verify(ctx: Context) -> Outcome:
    from .curvespace import verify_member

    X = load_hypersurface(ctx, ctx.args.X)
    ok = verify_member(X, load_curve(ctx, ctx.args.curve))
    return Outcome({"member": ok}, "success" if ok else "negative",
                   text="on X" if ok else "not on X")


def cmd_curves_splitting(ctx: Context) -> Outcome:
    from .curvespace import freeness_by_h0, pullback_splitting

    X = load_hypersurface(ctx, ctx.args.X)
    f = load_curve(ctx, ctx.args.curve)
    st = pullback_splitting(X, f)
    free2, vfree2 = freeness_by_h0(X, f)
    payload = {"degrees": list(st.degrees), "total": st.total, "free": st.free,
               "very_free": st.very_free, "free_by_h0": free2, "very_free_by_h0": vfree2}
    return Outcome(payload, text=f"splitting type {tuple(st.degrees)}, free {st.free}, "
                                 f"very free {st.very_free}")


def cmd_curves_search(ctx: Context) -> Outcome:
    from .curvespace import search_curves

    X = load_hypersurface(ctx, ctx.args.X)
    cons = _parse_through(X.field, ctx.args.through or [])
    degrees = [ctx.args.degree] if ctx.args.degree else list(range(1, ctx.args.dmax + 1))
    strategies = tuple(ctx.args.strategy.split(","))
    results = []
    exhausted = True
    for d in degrees:
        r = search_curves(X, d, cons, budget=ctx.args.budget, strategies=strategies)
        results.append(dict(r.to_json(), degree=d))
        exhausted = exhausted and r.marker == "Exhausted"
    total = sum(r["count"] for r in results)
    payload = {"searches": results, "count": total}
    _write(ctx.args.out, _dumps(payload) + "\n")
    cat = "success" if total else "negative"
    marker = "Exhausted" if exhausted else results[-1]["marker"]
    return Outcome(payload, cat, text=f"{total} curves, marker {marker}")


def cmd_curves_interpolate(ctx: Context) -> Outcome:
    from .curvespace import interpolate_to_Pn
    from .gf import parse_field_literal

    data = _load_json(ctx, ctx.args.table)
    if not isinstance(data, dict) or "field" not in data:
        raise ValidationError("interpolation table needs a 'field' and a 'table'")
    F = ctx.use_field(parse_field_literal(data["field"]))
    table = _table_pairs(F, data)
    d = ctx.args.degree if ctx.args.degree is not None else data.get("degree")
    if d is None:
        d = max(1, sum(t.degree_over(F) for t, _ in table) - 1)
    f = interpolate_to_Pn(table, d, base=F)
    _write(ctx.args.out, _dumps(f.to_json()) + "\n")
    return Outcome({"curve": f.to_json()}, text=f"degree {f.degree} map over {f.field.literal}")


def cmd_gallery_build(ctx: Context) -> Outcome:
    from . import gallery

    entry = gallery.build(ctx.args.identifier)
    ctx.use_field(entry.hypersurface.field)
    _write(ctx.args.out, entry.hypersurface.to_text())
    return Outcome(entry.to_json(), text=entry.hypersurface.to_text().rstrip())


def cmd_gallery_verify(ctx: Context) -> Outcome:
    from . import gallery

    if ctx.args.all:
        claims = list(gallery.DEFAULT_CLAIMS)
    elif ctx.args.claims:
        claims = ctx.args.claims
    else:
        raise ValidationError("name claims or pass --all")
    recs = [gallery.verify_claim(c, ctx.store) for c in claims]
    outcomes = [r.outcome for r in recs]
    if any(o.startswith("Infeasible") for o in outcomes):
        cat = "infeasible"
    elif all(r.passed for r in recs):
        cat = "success"
    else:
        cat = "negative"
    text = "\n".join(f"{r.claim}: {r.outcome}" for r in recs)
    return Outcome({"claims": [r.to_json() for r in recs]}, cat, text=text)


def cmd_store_verify(ctx: Context) -> Outcome:
    from .store import Store

    S = Store(ctx.args.directory)
    counts = {}
    for path in sorted(S.root.glob("*s.jsonl")):
        kind = path.name[:-len("s.jsonl")]
        counts[kind] = len(S.records(kind))
    return Outcome({"records": counts}, text=", ".join(f"{k}: {v}" for k, v in counts.items()))


def cmd_store_replay(ctx: Context) -> Outcome:
    """Re-run a stored manifest, certificate or claim and compare outcomes."""
    from . import gallery
    from .chord import replay_certificate
    from .store import Store

    S = Store(ctx.args.directory)
    kind = ctx.args.kind
    rec = S.get(kind, ctx.args.digest)
    old = rec["payload"]
    if kind == "certificate":
        log = replay_certificate(None, old)
        return Outcome({"digest": rec["digest"], "checks": len(log), "match": True},
                       text=f"certificate replayed: {len(log)} checks")
    if kind == "claim":
        new = gallery.verify_claim(old["claim"]).to_json(with_runtime=False)
        if new != old:
            raise ReplayMismatch(f"claim {old['claim']} now gives {new['outcome']}")
        return Outcome({"digest": rec["digest"], "outcome": new["outcome"], "match": True},
                       text=f"claim {old['claim']} reproduced: {new['outcome']}")
    if kind == "manifest":
        code, payload, _ = run(old["argv"])
        from .store import digest

        got = digest(_strip_volatile(payload))
        if got != old["result_digest"] or code != old["exit_code"]:
            raise ReplayMismatch(f"rerun of {' '.join(old['argv'])} differs "
                                 f"(exit {code} vs {old['exit_code']})")
        return Outcome({"digest": rec["digest"], "exit_code": code, "match": True},
                       text=f"reproduced exit {code}")
    raise ValidationError(f"cannot replay records of kind {kind!r}")


# ---------------------------------------------------------------------------
# argument parser


def _globals_parser(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--budget", type=int, default=d(1 << 20), help="search budget in candidates")
    g.add_argument("--kmax", type=int, default=d(4), help="largest extension degree probed")
    g.add_argument("--dmax", type=int, default=d(6), help="largest curve degree searched")
    g.add_argument("--store", metavar="DIR", default=d(None), help="append records and manifests here")
    g.add_argument("--json", action="store_true", default=d(False), help="print JSON output")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals_parser(suppress=True)
    parser = argparse.ArgumentParser(prog="fqgeom", parents=[_globals_parser(suppress=False)],
                                     description="Exact geometry of hypersurfaces over finite fields.")
    parser.add_argument("--version", action="version", version=f"fqgeom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, fn, help_):
        p = parent.add_parser(name, parents=[common], help=help_)
        p.set_defaults(handler=fn)
        return p

    def add_X(p):
        p.add_argument("X", help="hypersurface file or gallery id (sd, fermat(2,4), ...)")

    p = add(sub, "field", cmd_field, "describe a finite field")
    p.add_argument("literal", help="GF(p^k;m0,...,mk), GF(p^k) or GF(q)")
    p.add_argument("--elements", action="store_true")

    p = add(sub, "poly", cmd_poly, "parse and normalize a homogeneous polynomial")
    p.add_argument("text", nargs="?")
    p.add_argument("--field", required=True)
    p.add_argument("--file")
    p.add_argument("--nvars", type=int)
    p.add_argument("--eval", metavar="POINT")

    var = sub.add_parser("variety", help="point counts and smoothness probes").add_subparsers(
        dest="action", required=True)
    p = add(var, "count", cmd_variety_count, "count rational points")
    add_X(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--out", help="write the census file here")
    p.add_argument("--list", action="store_true", help="include the points in the output")
    p = add(var, "probe", cmd_variety_probe, "search for singular points")
    add_X(p)
    p = add(var, "windows", cmd_variety_windows, "check point-count windows")
    add_X(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--smooth", action="store_true", help="treat X as smooth")

    lines = sub.add_parser("lines", help="lines and plane sections").add_subparsers(
        dest="action", required=True)
    p = add(lines, "census", cmd_lines_census, "all lines over GF(q^m)")
    add_X(p)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--method", default="auto", choices=["auto", "grassmannian", "section", "pairs"])
    p.add_argument("--out")
    p = add(lines, "through", cmd_lines_through, "lines through a point")
    add_X(p)
    p.add_argument("--point", required=True)
    p.add_argument("--m", type=int, default=1)
    p = add(lines, "classify", cmd_lines_classify, "factorization type of a plane section")
    add_X(p)
    p.add_argument("--plane", required=True, help="linear form coefficients")
    p.add_argument("--m", type=int, default=1)

    chord = sub.add_parser("chord", help="chord constructions and descent").add_subparsers(
        dest="action", required=True)
    p = add(chord, "third-point", cmd_chord_third, "third intersection of a chord")
    add_X(p)
    p.add_argument("--p", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--m", type=int, default=1)
    p = add(chord, "descend", cmd_chord_descend, "descend a curve from the quadratic extension")
    add_X(p)
    p.add_argument("--phi2", required=True, help="curve file")
    p.add_argument("--out")
    p = add(chord, "descend-set-map", cmd_chord_set_map, "extend a set map to a morphism")
    add_X(p)
    p.add_argument("--table", required=True, help="JSON list of [t, x] pairs, inline or a file")
    p.add_argument("--out", help="write the certificate here")
    p = add(chord, "weil-restrict", cmd_chord_weil, "quadric model of a Weil restriction")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--points", action="store_true", help="enumerate and round-trip the model")
    p = add(chord, "verify-certificate", cmd_chord_verify, "replay a descent certificate")
    p.add_argument("certificate")
    p.add_argument("X", nargs="?")

    cur = sub.add_parser("curves", help="rational curves on hypersurfaces").add_subparsers(
        dest="action", required=True)
    p = add(cur, "verify", cmd_curves_verify, "check that a curve lies on X")
    add_X(p)
    p.add_argument("curve")
    p = add(cur, "splitting", cmd_curves_splitting, "splitting type of the pulled-back tangent bundle")
    add_X(p)
    p.add_argument("curve")
    p = add(cur, "search", cmd_curves_search, "search for curves of given degree")
    add_X(p)
    p.add_argument("--degree", type=int)
    p.add_argument("--through", action="append", metavar="t=x,...")
    p.add_argument("--strategy", default="structured,linear")
    p.add_argument("--out")
    p = add(cur, "interpolate", cmd_curves_interpolate, "map P^1 to P^n through a table")
    p.add_argument("--table", required=True, help="JSON {field, table, degree?}, inline or a file")
    p.add_argument("--degree", type=int)
    p.add_argument("--out")

    gal = sub.add_parser("gallery", help="named hypersurfaces and claims").add_subparsers(
        dest="action", required=True)
    p = add(gal, "build", cmd_gallery_build, "print a gallery hypersurface")
    p.add_argument("identifier")
    p.add_argument("--out")
    p = add(gal, "verify", cmd_gallery_verify, "verify registered claims")
    p.add_argument("claims", nargs="*")
    p.add_argument("--all", action="store_true")

    st = sub.add_parser("store", help="inspect and replay the record store").add_subparsers(
        dest="action", required=True)
    p = add(st, "verify", cmd_store_verify, "check every record digest")
    p.add_argument("directory")
    p = add(st, "replay", cmd_store_replay, "re-run a stored record and compare")
    p.add_argument("directory")
    p.add_argument("kind", choices=["manifest", "certificate", "claim"])
    p.add_argument("digest", help="digest or unique prefix")
    return parser


# ---------------------------------------------------------------------------
# dispatch


def _error_payload(exc: FqGeomError):
    out = {"error": exc.code, "type": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "line", None) is not None:
        out["line"] = exc.line
        out["column"] = exc.column
    return out


def run(argv):
    """Parse and execute; returns (exit code, payload, context) without side outputs."""
    from .store import Store

    args = build_parser().parse_args(argv)
    ctx = Context(args)
    if args.store:
        ctx.store = Store(args.store)
    try:
        out = args.handler(ctx)
    except FqGeomError as exc:
        cat = "negative" if exc.category == "negative" else "infeasible"
        out = Outcome(_error_payload(exc), cat, text=f"{exc.code}: {exc}")
    except KeyError as exc:
        out = Outcome({"error": "NOT_FOUND", "message": f"no record {exc}"}, "infeasible",
                      text=f"NOT_FOUND: no record {exc}")
    ctx.outcome = out
    return EXIT_CODES[out.category], out.payload, ctx


def _manifest_params(args) -> dict:
    skip = {"handler", "store", "json", "command", "action"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    from .store import RunManifest, digest

    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        code, payload, ctx = run(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0) if exc.code in (0, None) else 2
    out = ctx.outcome
    if ctx.args.json or out.text is None:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        stream = sys.stderr if out.category == "infeasible" else sys.stdout
        print(out.text, file=stream)
    command = " ".join(x for x in (ctx.args.command, getattr(ctx.args, "action", None)) if x)
    replay_argv = _strip_store(argv)
    man = RunManifest(command=command, parameters=_manifest_params(ctx.args), inputs=ctx.inputs,
                      fields=ctx.fields, outcome=out.category, exit_code=code,
                      wall_time=time.perf_counter() - t0, version=__version__,
                      result_digest=digest(_strip_volatile(payload)))
    record = dict(man.to_json(), argv=replay_argv)
    if ctx.store is not None:
        ctx.store.append("manifest", record)
    else:
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
    return code


def _strip_store(argv):
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--store":
            skip = True
            continue
        if a.startswith("--store="):
            continue
        out.append(a)
    return out


if __name__ == "__main__":
    sys.exit(main())
