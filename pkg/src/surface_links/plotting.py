"""Figures for the CLI report path (written only when ``--figures DIR`` is given)."""
from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .gauss import GaussCode  # noqa: E402

_STYLE = {
    "figure.dpi": 120,
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}
_POS = "#1f77b4"
_NEG = "#d62728"


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    # fixed metadata keeps the bytes stable across runs
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def gauss_diagram(code: GaussCode, path: str, title: str = "") -> str:
    """Gauss diagram: one circle per component, a chord per crossing.

    Chords run from the over to the under occurrence; colour gives the sign.
    """
    comps = [c for c in code.components]
    k = max(len(comps), 1)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(3.2 * k, 3.4))
        centers = [(3.0 * i, 0.0) for i in range(k)]
        where = {}
        for i, comp in enumerate(comps):
            cx, cy = centers[i]
            th = [2 * math.pi * t / 200 for t in range(201)]
            ax.plot([cx + math.cos(t) for t in th], [cy + math.sin(t) for t in th], color="0.3", lw=1)
            n = max(len(comp), 1)
            for j, tok in enumerate(comp):
                a = math.pi / 2 - 2 * math.pi * j / n
                p = (cx + math.cos(a), cy + math.sin(a))
                where.setdefault(tok.label, {})[tok.over] = (p, tok.sign)
                ax.annotate(str(tok), p, xytext=(cx + 1.22 * math.cos(a), cy + 1.22 * math.sin(a)),
                            ha="center", va="center", fontsize=7)
        for label in sorted(where):
            (po, sign), (pu, _) = where[label][True], where[label][False]
            ax.annotate("", xy=pu, xytext=po,
                        arrowprops={"arrowstyle": "-|>", "color": _POS if sign > 0 else _NEG, "lw": 1.2})
        ax.set_aspect("equal")
        ax.axis("off")
        if title:
            ax.set_title(title, pad=18)
        return _save(fig, path)


def goeritz_matrices(forms: dict, path: str) -> str:
    """Heat maps of the checkerboard pairing matrices, one panel per colour."""
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(1, len(forms), figsize=(3.2 * len(forms), 3.0))
        if len(forms) == 1:
            axes = [axes]
        for ax, (color, f) in zip(axes, sorted(forms.items())):
            mat = [list(r) for r in f.matrix] or [[0]]
            vmax = max(1, max(abs(x) for r in mat for x in r))
            ax.imshow(mat, cmap="RdBu_r", vmin=-vmax, vmax=vmax)
            for i, row in enumerate(f.matrix):
                for j, x in enumerate(row):
                    ax.text(j, i, str(x), ha="center", va="center", fontsize=8,
                            color="white" if 2 * abs(x) > vmax else "black")
            ax.set_title(f"{color}: beta1={f.beta1}, sigma={f.sigma}, {f.definite}")
            ax.set_xticks([])
            ax.set_yticks([])
        fig.tight_layout()
        return _save(fig, path)


def census_histogram(result: dict, path: str) -> str:
    """Codes per crossing count, split into alternating and the rest; right panel: structures by genus."""
    levels = result["levels"]
    ns = [lv["crossings"] for lv in levels]
    with plt.rc_context(_STYLE):
        fig, (a1, a2) = plt.subplots(1, 2, figsize=(8, 3.2))
        alt = [lv["alternating"] for lv in levels]
        rest = [lv["codes"] - lv["alternating"] for lv in levels]
        a1.bar(ns, alt, color=_POS, label="alternating")
        a1.bar(ns, rest, bottom=alt, color="0.7", label="other")
        a1.set_yscale("log")
        a1.set_xlabel("crossings")
        a1.set_ylabel("codes on colourable maps")
        a1.legend(frameon=False)
        genera = sorted({int(g) for lv in levels for g in lv["by_genus"]})
        width = 0.8 / max(len(genera), 1)
        for i, g in enumerate(genera):
            ys = [lv["by_genus"].get(str(g), 0) for lv in levels]
            a2.bar([n + (i - (len(genera) - 1) / 2) * width for n in ns], ys, width=width, label=f"genus {g}")
        a2.set_yscale("log")
        a2.set_xlabel("crossings")
        a2.set_ylabel("structures")
        a2.legend(frameon=False)
        fig.tight_layout()
        return _save(fig, path)
