"""Signed over/under Gauss codes and their cellular surface diagrams.

Text grammar::

    code      := component ("/" component)*
    component := token+ | "()"
    token     := ("O" | "U") digits ("+" | "-")

Tokens are separated by whitespace and/or commas.  ``()`` writes a
crossingless component.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import CombMap, canonical_form, crossing_sign
from .errors import GaussParseError, SiteError

_TOKEN = re.compile(r"([OU])(\d+)([+-])\Z")


@dataclass(frozen=True, order=True)
class Token:
    over: bool
    label: int
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.label}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    components: tuple

    def __post_init__(self):
        comps = tuple(tuple(Token(bool(t.over), int(t.label), int(t.sign)) for t in comp) for comp in self.components)
        object.__setattr__(self, "components", comps)
        seen: dict = {}
        for comp in comps:
            for t in comp:
                if t.sign not in (1, -1):
                    raise GaussParseError(f"bad sign in {t}")
                seen.setdefault(t.label, []).append(t)
        for label, ts in seen.items():
            if len(ts) != 2:
                raise GaussParseError(f"label {label} occurs {len(ts)} times")
            if ts[0].over == ts[1].over:
                raise GaussParseError(f"label {label} needs one O and one U occurrence")
            if ts[0].sign != ts[1].sign:
                raise GaussParseError(f"label {label} has mismatched signs")

    @property
    def labels(self) -> list:
        return sorted({t.label for comp in self.components for t in comp})

    @property
    def crossing_count(self) -> int:
        return sum(len(c) for c in self.components) // 2

    def sign(self, label: int) -> int:
        for comp in self.components:
            for t in comp:
                if t.label == label:
                    return t.sign
        raise KeyError(label)

    def __str__(self) -> str:
        return " / ".join(" ".join(map(str, comp)) if comp else "()" for comp in self.components)

    def relabel(self, mapping) -> "GaussCode":
        return GaussCode(tuple(tuple(Token(t.over, mapping[t.label], t.sign) for t in comp) for comp in self.components))

    def mirror(self) -> "GaussCode":
        """Switch every crossing (over/under and sign)."""
        return GaussCode(tuple(tuple(Token(not t.over, t.label, -t.sign) for t in comp) for comp in self.components))

    def crossing_changed(self, labels: Iterable[int]) -> "GaussCode":
        ls = set(labels)
        return GaussCode(
            tuple(
                tuple(Token(not t.over, t.label, -t.sign) if t.label in ls else t for t in comp)
                for comp in self.components
            )
        )

    def is_alternating(self) -> bool:
        for comp in self.components:
            for i, t in enumerate(comp):
                if t.over == comp[(i + 1) % len(comp)].over:
                    return False
        return True


def parse_gauss(text: str) -> GaussCode:
    if not isinstance(text, str) or not text.strip():
        raise GaussParseError("empty Gauss code")
    comps = []
    for chunk in text.split("/"):
        words = [w for w in re.split(r"[\s,]+", chunk.strip()) if w]
        if words == ["()"]:
            comps.append(())
            continue
        if not words:
            raise GaussParseError("empty component")
        toks = []
        for w in words:
            mt = _TOKEN.match(w)
            if not mt:
                raise GaussParseError(f"bad token {w!r}")
            toks.append(Token(mt.group(1) == "O", int(mt.group(2)), 1 if mt.group(3) == "+" else -1))
        comps.append(tuple(toks))
    return GaussCode(tuple(comps))


def format_gauss(code: GaussCode) -> str:
    return str(code)


def gauss_to_surface(code: GaussCode) -> CombMap:
    """The cellularly embedded, oriented diagram carrying ``code``.

    Crossing ids are the labels.  The over pass of a crossing enters at slot
    0; the under pass enters at slot 1 for a positive crossing and at slot 3
    for a negative one.
    """
    match = {}
    incoming = []
    loops = 0
    for comp in code.components:
        if not comp:
            loops += 1
            continue
        ins = []
        outs = []
        for t in comp:
            if t.over:
                i = 0
            else:
                i = 1 if t.sign > 0 else 3
            ins.append((t.label, i))
            outs.append((t.label, (i + 2) % 4))
        for j in range(len(comp)):
            match[outs[j]] = ins[(j + 1) % len(comp)]
        incoming.extend(ins)
    return CombMap(match, loops=loops, incoming=incoming)


def code_of_map(m: CombMap) -> GaussCode:
    """Gauss code read off the strand traversal (orienting ``m`` if needed)."""
    m = m.oriented_copy()
    comps = []
    for comp in m.components():
        comps.append(tuple(Token(k % 2 == 0, c, crossing_sign(m, c)) for c, k in comp))
    comps.extend(() for _ in range(m.loops))
    return GaussCode(tuple(comps))


def _knot_canon(comp: Sequence[Token]) -> tuple:
    n = len(comp)
    best = None
    # the minimal encoding starts at a token with the smallest (over, sign) key
    key = [(0 if t.over else 1, 0 if t.sign > 0 else 1) for t in comp]
    lead = min(key, default=None)
    for r in range(n):
        if key[r] != lead:
            continue
        lab: dict = {}
        enc = []
        for j in range(n):
            t = comp[(r + j) % n]
            if t.label not in lab:
                lab[t.label] = len(lab)
            enc.append((0 if t.over else 1, lab[t.label], 0 if t.sign > 0 else 1))
        enc = tuple(enc)
        if best is None or enc < best:
            best = enc
    return best or ()


def canonical_gauss(code: GaussCode) -> bytes:
    """Invariant under relabelling, rotation of components and their order."""
    comps = code.components
    if len(comps) == 1:
        enc = _knot_canon(comps[0])
        return ("K" + "".join(f"{'OU'[o]}{l}{'+-'[s]}" for o, l, s in enc)).encode("ascii")
    return b"M%d:" % len(comps) + canonical_form(gauss_to_surface(code))


def connect_sum(a: GaussCode, b: GaussCode, site_a: tuple, site_b: tuple) -> GaussCode:
    """Splice a component of ``b`` into a component of ``a``.

    A site is ``(component index, edge index)``; edge ``e`` of a component
    runs from its token ``e`` to token ``e + 1``.  The edge of ``b`` is cut
    and its component is inserted, starting after token ``site_b[1]``,
    into the cut edge of ``a``.  Labels of ``b`` are shifted past those of
    ``a``; the other components of ``b`` are appended.
    """
    ka, ea = site_a
    kb, eb = site_b
    for code, k, e in ((a, ka, ea), (b, kb, eb)):
        if not 0 <= k < len(code.components):
            raise SiteError(f"no component {k}")
        n = len(code.components[k])
        if not (0 <= e < max(n, 1)):
            raise SiteError(f"no edge {e} on component {k}")
    shift = max(a.labels, default=0)
    bb = b.relabel({l: l + shift for l in b.labels})
    ca = list(a.components[ka])
    cb = list(bb.components[kb])
    if cb:
        cb = cb[eb + 1 :] + cb[: eb + 1]
    spliced = tuple(ca[: ea + 1] + cb + ca[ea + 1 :]) if ca else tuple(cb)
    comps = list(a.components)
    comps[ka] = spliced
    comps.extend(c for i, c in enumerate(bb.components) if i != kb)
    return GaussCode(tuple(comps))


def trefoil() -> GaussCode:
    return parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+")


def virtual_trefoil() -> GaussCode:
    return parse_gauss("O1+ O2+ U1+ U2+")
