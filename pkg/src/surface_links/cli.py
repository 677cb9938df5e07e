"""Command-line front end.

    surface-links analyze --gauss "O1+ U2+ O3+ U1+ O2+ U3+"
    surface-links orbit diagram.json --bound 1000
    surface-links equiv a.json b.json
    surface-links virtualize --gauss "O1+ O2+ U1+ U2+"
    surface-links devirtualize virtual.json
    surface-links connect-sum A B --site-a 0:1 --site-b 0:2
    surface-links census 5 --figures figs/

Inputs are Gauss code text or JSON (a diagram dict, a virtual diagram dict,
or ``{"gauss": "..."}``), given inline with ``--gauss`` or as a file path.
Exit status: 0 success, 1 analysis error, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .diagram import (
    CombMap,
    canonical_form,
    checkerboard_coloring,
    is_alternating,
    is_colorable,
    writhe,
)
from .errors import GaussParseError, InvariantViolation, StructuralError, SurfaceLinkError
from .gauss import GaussCode, code_of_map, connect_sum, format_gauss, gauss_to_surface, parse_gauss
from .goeritz import COLORS, alternating_by_definiteness, goeritz, report
from .moves import flype_equivalent, flype_orbit
from .structure import classify
from .virtual import VirtualDiagram, find_lasso, gauss_of, surface_to_virtual


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


# -- input ---------------------------------------------------------------------------


def _from_text(text: str, origin: str):
    """A CombMap, VirtualDiagram or GaussCode from file/inline text."""
    s = text.strip()
    if not s:
        raise UsageError(f"{origin}: empty input")
    try:
        if s.startswith("{"):
            data = json.loads(s)
            if "gauss" in data:
                return parse_gauss(data["gauss"])
            if "virtual" in data:
                return VirtualDiagram.from_dict(data)
            return CombMap.from_dict(data)
        return parse_gauss(s)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}: bad JSON: {exc}") from None
    except (GaussParseError, StructuralError) as exc:
        raise InputError(f"{origin}: {exc}") from None


def _read_path(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args, positional: Optional[str] = None):
    sources = [x for x in (args.gauss, args.json, positional) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one input: --gauss CODE, --json FILE or a path")
    if args.gauss is not None:
        if not args.gauss.strip():
            raise UsageError("--gauss: empty Gauss code")
        try:
            return parse_gauss(args.gauss)
        except GaussParseError as exc:
            raise InputError(f"--gauss: {exc}") from None
    path = args.json if args.json is not None else positional
    return _from_text(_read_path(path), path)


def _as_map(obj) -> CombMap:
    if isinstance(obj, GaussCode):
        return gauss_to_surface(obj)
    if isinstance(obj, VirtualDiagram):
        return gauss_to_surface(gauss_of(obj))
    return obj


def _as_code(obj) -> GaussCode:
    if isinstance(obj, GaussCode):
        return obj
    if isinstance(obj, VirtualDiagram):
        return gauss_of(obj)
    return code_of_map(obj)


def _parse_site(text: str) -> tuple:
    try:
        k, e = text.split(":")
        return int(k), int(e)
    except ValueError:
        raise UsageError(f"site {text!r} must look like COMPONENT:EDGE") from None


# -- output --------------------------------------------------------------------------


def _diagram_out(m: CombMap, fmt: str):
    if fmt == "gauss":
        return format_gauss(code_of_map(m))
    return m.to_dict()


def _flatten(prefix: str, value, lines: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, lines)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, lines)
    else:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, list):
            text = json.dumps(value, separators=(",", ":"))
        elif value is None:
            text = "-"
        else:
            text = str(value)
        lines.append(f"{prefix}: {text}")


def _emit(data: dict, style: str, out) -> None:
    if style == "text":
        lines: list = []
        _flatten("", data, lines)
        out.write("\n".join(lines) + "\n")
    else:
        out.write(json.dumps(data, indent=2) + "\n")


# -- verbs ---------------------------------------------------------------------------


def _analyze(args, out) -> int:
    obj = _load(args, args.input)
    m = _as_map(obj)
    code = _as_code(obj)
    colors = [args.color] if args.color else list(COLORS)
    data = {
        "gauss": format_gauss(code),
        "crossings": len(m.crossings),
        "components": m.component_count(),
        "genus": m.genus(),
        "writhe": writhe(m.oriented_copy()),
        "alternating": is_alternating(m),
        "colorable": is_colorable(m),
    }
    if data["colorable"] and m.is_connected():
        fs = checkerboard_coloring(m)
        rep = report(m)
        data["coloring"] = {
            "faces": len(fs.faces),
            "face_colors": list(fs.coloring),
        }
        data["goeritz"] = {}
        for c in colors:
            f = goeritz(m, c)
            data["goeritz"][c] = {
                "matrix": [list(r) for r in f.matrix],
                "beta1": f.beta1,
                "sigma": f.sigma,
                "slope": f.slope,
                "definite": f.definite,
                "sigma_invariant": str(f.sigma_invariant),
            }
        data["definite_colors_opposite"] = alternating_by_definiteness(m)
        data["identities"] = rep["identities"]
    else:
        data["coloring"] = None
        data["goeritz"] = None
        data["definite_colors_opposite"] = None
        data["identities"] = None
    data["structure"] = classify(m).to_dict()
    if args.figures:
        from . import plotting

        figs = [plotting.gauss_diagram(code, os.path.join(args.figures, "gauss_diagram.png"), data["gauss"])]
        if data["goeritz"]:
            figs.append(plotting.goeritz_matrices({c: goeritz(m, c) for c in colors},
                                                  os.path.join(args.figures, "goeritz.png")))
        data["figures"] = figs
    _emit(data, args.report, out)
    return 0


def _orbit(args, out) -> int:
    m = _as_map(_load(args, args.input))
    orb = flype_orbit(m, bound=args.bound)
    data = {
        "size": len(orb),
        "truncated": orb.truncated,
        "diagrams": [
            {"form": f.hex(), "diagram": _diagram_out(orb.maps[f], args.format)} for f in sorted(orb.forms)
        ],
    }
    _emit(data, args.report, out)
    return 0


def _equiv(args, out) -> int:
    if args.gauss is not None or args.json is not None:
        raise UsageError("equiv takes two paths")
    a = _as_map(_from_text(_read_path(args.a), args.a))
    b = _as_map(_from_text(_read_path(args.b), args.b))
    res = flype_equivalent(a, b, bound=args.bound)
    _emit(res.to_dict(), args.report, out)
    return 0


def _virtualize(args, out) -> int:
    obj = _load(args, args.input)
    m = _as_map(obj)
    v = surface_to_virtual(m, seed=args.seed)
    lasso = find_lasso(v)
    data = {
        "genus": m.genus(),
        "virtual_crossings": len(v.virtual),
        "gauss": format_gauss(gauss_of(v)),
        "diagram": v.to_dict(),
        "lasso": None
        if lasso is None
        else {"vertices": sorted(lasso.vertices), "edges": len(lasso.edges), "faces": list(lasso.faces)},
    }
    if args.figures:
        from . import plotting

        data["figures"] = [
            plotting.gauss_diagram(gauss_of(v), os.path.join(args.figures, "gauss_diagram.png"), data["gauss"])
        ]
    _emit(data, args.report, out)
    return 0


def _devirtualize(args, out) -> int:
    obj = _load(args, args.input)
    m = _as_map(obj)
    data = {
        "genus": m.genus(),
        "crossings": len(m.crossings),
        "diagram": _diagram_out(m, args.format),
    }
    _emit(data, args.report, out)
    return 0


def _connect_sum(args, out) -> int:
    a = _as_code(_from_text(args.a if not os.path.exists(args.a) else _read_path(args.a), args.a))
    b = _as_code(_from_text(args.b if not os.path.exists(args.b) else _read_path(args.b), args.b))
    code = connect_sum(a, b, _parse_site(args.site_a), _parse_site(args.site_b))
    m = gauss_to_surface(code)
    data = {
        "gauss": format_gauss(code),
        "genus": m.genus(),
        "form": canonical_form(m).hex(),
        "structure": classify(m).to_dict(),
    }
    if args.format == "json":
        data["diagram"] = m.to_dict()
    _emit(data, args.report, out)
    return 0


def _census(args, out, err) -> int:
    from .census import run_census

    if args.n < 0:
        raise UsageError("census size must be non-negative")

    def progress(level):
        err.write(f"census: {level['crossings']} crossings, {level['codes']} codes\n")

    res = run_census(args.n, progress=progress if args.verbose else None)
    if args.figures:
        from . import plotting

        res["figures"] = [plotting.census_histogram(res, os.path.join(args.figures, "census.png"))]
    _emit(res, args.report, out)
    return 0 if res["ok"] else 1


# -- parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="surface-links", description="Link diagrams on closed orientable surfaces.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, positional=True):
        if positional:
            sp.add_argument("input", nargs="?", help="Gauss code or JSON file")
            sp.add_argument("--gauss", help="inline Gauss code")
            sp.add_argument("--json", help="JSON diagram file")
        sp.add_argument("--report", choices=("json", "text"), default="json")
        sp.add_argument("--format", choices=("gauss", "json"), default="json", help="diagram output format")

    a = sub.add_parser("analyze", help="genus, colouring, checkerboard forms, identities, structure")
    common(a)
    a.add_argument("--color", choices=COLORS)
    a.add_argument("--figures", metavar="DIR")

    o = sub.add_parser("orbit", help="flype orbit up to isomorphism")
    common(o)
    o.add_argument("--bound", type=int, default=10**4)

    e = sub.add_parser("equiv", help="flype equivalence with a witness path")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--gauss", help=argparse.SUPPRESS)
    e.add_argument("--json", help=argparse.SUPPRESS)
    e.add_argument("--bound", type=int, default=10**4)
    e.add_argument("--report", choices=("json", "text"), default="json")

    v = sub.add_parser("virtualize", help="surface diagram to virtual diagram")
    common(v)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--figures", metavar="DIR")

    d = sub.add_parser("devirtualize", help="virtual diagram or Gauss code to cellular surface diagram")
    common(d)

    c = sub.add_parser("connect-sum", help="splice two codes at strand positions")
    c.add_argument("a", help="Gauss code or file")
    c.add_argument("b", help="Gauss code or file")
    c.add_argument("--site-a", default="0:0")
    c.add_argument("--site-b", default="0:0")
    common(c, positional=False)

    s = sub.add_parser("census", help="all knot codes up to N crossings and the identity suites")
    s.add_argument("n", type=int)
    s.add_argument("--figures", metavar="DIR")
    s.add_argument("--verbose", action="store_true")
    s.add_argument("--report", choices=("json", "text"), default="json")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "bound", 1) < 1:
            raise UsageError("--bound must be positive")
        verb = args.verb
        if verb == "analyze":
            return _analyze(args, out)
        if verb == "orbit":
            return _orbit(args, out)
        if verb == "equiv":
            return _equiv(args, out)
        if verb == "virtualize":
            return _virtualize(args, out)
        if verb == "devirtualize":
            return _devirtualize(args, out)
        if verb == "connect-sum":
            return _connect_sum(args, out)
        return _census(args, out, err)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except InputError as exc:
        err.write(f"parse error: {exc}\n")
        return 2
    except InvariantViolation as exc:
        err.write(f"invariant violation: {exc}\n")
        return 1
    except SurfaceLinkError as exc:
        err.write(f"analysis error: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
