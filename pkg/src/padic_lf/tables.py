"""Deterministic JSON and LaTeX tables: reducibility sweeps, D-matrices and local factors."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Sequence

from .exact import RatFun
from .factors import epsilon, lfactor, tate_gamma
from .local import AddChar, FieldCtx
from .metaplectic import dmatrix, reducible_at_zero, unitary_characters
from .suites import SCHEMA_VERSION, canonical_characters, sample_characters

OUTDIR_ENV = "PADIC_LF_OUTDIR"
KINDS = ("reducibility", "dmatrix", "factors")


def default_outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "."))


def dump_json(data, path: Path | None = None) -> str:
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text


def reducibility_rows(p: int, n_list: Sequence[int], max_conductor: int = 1) -> list[dict]:
    rows = []
    for n in n_list:
        ctx = FieldCtx(p, n)
        for chi in unitary_characters(ctx, max_conductor):
            r = reducible_at_zero(chi, ctx)
            rows.append({"p": p, "n": n, "n_parity": "odd" if n % 2 else "even", "chi": chi.to_json(ctx),
                         "predicate": r.predicate, "self_dual": r.self_dual, "pole_at_zero": r.pole_at_zero,
                         "reducible": r.reducible})
    return rows


def dmatrix_rows(p: int, n_list: Sequence[int], method: str = "integral") -> list[dict]:
    rows = []
    for n in n_list:
        ctx = FieldCtx(p, n)
        psi = AddChar.standard(p)
        for chi in canonical_characters(ctx):
            D = dmatrix(chi, psi, ctx, method)
            rows.append({"p": p, "n": n, "chi": chi.to_json(ctx), **D.to_json()})
    return rows


def factor_rows(p: int, conductor_bound: int = 2) -> list[dict]:
    ctx = FieldCtx(p, 1)
    psi = AddChar.standard(p)
    rows = []
    for chi in sample_characters(ctx, conductor_bound):
        rows.append({"p": p, "chi": chi.to_json(ctx), "L": lfactor(chi, ctx).to_json(),
                     "epsilon": epsilon(chi, psi, ctx).to_json(), "gamma": tate_gamma(chi, psi, ctx).to_json()})
    return rows


def _tex_escape(text: str) -> str:
    return text.replace("_", r"\_").replace("^", r"\^{}").replace("*", r"\ast ")


def reducibility_latex(rows: list[dict]) -> str:
    by_n: dict[int, list[dict]] = {}
    for r in rows:
        by_n.setdefault(r["n"], []).append(r)
    lines = [r"\begin{tabular}{rlrrrr}", r"\hline",
             r"$n$ & parity & classes & predicate & pole at $0$ & reducible \\", r"\hline"]
    for n, rs in sorted(by_n.items()):
        lines.append(f"{n} & {rs[0]['n_parity']} & {len(rs)} & {sum(r['predicate'] for r in rs)} & "
                     f"{sum(r['pole_at_zero'] for r in rs)} & {sum(r['reducible'] for r in rs)} \\\\")
    lines += [r"\hline", r"\end{tabular}", ""]
    return "\n".join(lines)


def dmatrix_latex(rows: list[dict]) -> str:
    out = []
    for r in rows:
        entries = [[repr(RatFun.from_json(e)) for e in row] for row in r["entries"]]
        body = " \\\\\n".join(" & ".join(f"\\texttt{{{_tex_escape(e)}}}" for e in row) for row in entries)
        out.append(f"% p = {r['p']}, n = {r['n']}, case = {r['chi_case']}\n"
                   f"\\[\\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}\\]\n")
    return "\n".join(out)


def factors_latex(rows: list[dict]) -> str:
    lines = [r"\begin{tabular}{rlll}", r"\hline", r"$e(\chi)$ & $L$ & $\epsilon$ & $\gamma$ \\", r"\hline"]
    for r in rows:
        cells = [f"\\texttt{{{_tex_escape(repr(RatFun.from_json(r[k])))}}}" for k in ("L", "epsilon", "gamma")]
        lines.append(f"{r['chi']['e']} & " + " & ".join(cells) + r" \\")
    lines += [r"\hline", r"\end{tabular}", ""]
    return "\n".join(lines)


def emit_table(kind: str, p: int, n_list: Sequence[int] = (1,), outdir: Path | None = None,
               latex: bool = False, conductor_bound: int = 2) -> dict[str, Path]:
    """Write ``<kind>_p<p>.json`` (and ``.tex`` when asked) and return the paths."""
    if kind not in KINDS:
        raise ValueError(f"unknown table kind {kind!r}")
    outdir = default_outdir() if outdir is None else Path(outdir)
    if kind == "reducibility":
        rows, tex = reducibility_rows(p, n_list), reducibility_latex
    elif kind == "dmatrix":
        rows, tex = dmatrix_rows(p, n_list), dmatrix_latex
    else:
        rows, tex = factor_rows(p, conductor_bound), factors_latex
    stem = f"{kind}_p{p}"
    paths = {"json": outdir / f"{stem}.json"}
    dump_json({"schema": SCHEMA_VERSION, "kind": kind, "p": p, "n_list": list(n_list), "rows": rows},
              paths["json"])
    if latex:
        paths["latex"] = outdir / f"{stem}.tex"
        paths["latex"].write_text(tex(rows))
    return paths


__all__ = ["KINDS", "OUTDIR_ENV", "default_outdir", "dmatrix_rows", "dump_json",
           "emit_table", "factor_rows", "reducibility_rows"]
