"""JSON forms of codes (``code.json``) and AG codes (``ag.json``)."""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import linalg
from .agcodes import AGCodeSpec, RationalFunction, build_ag_code, format_divisor, parse_divisor, parse_places
from .codes import Code, RSCodeSpec, build_code
from .gf import FieldSpec
from .poly import Polynomial

FORMAT = "posetcode/code"
VERSION = 1


class CodeFileError(ValueError):
    pass


def field_to_dict(F: FieldSpec) -> dict:
    return {"p": F.p, "m": F.m, "modulus": list(F.modulus)}


def field_from_dict(d: dict) -> FieldSpec:
    return FieldSpec(int(d["p"]), int(d["m"]), tuple(d.get("modulus") or ()))


def _metric(code: Code) -> dict:
    if code.b_row is None:
        return {"type": "chain_union", "s": code.s, "r": code.r}
    return {"type": "bottleneck", "s": code.s, "r": code.r, "b_row": code.b_row}


def code_to_dict(code: Code) -> dict:
    spec = code.spec
    out = {"format": FORMAT, "version": VERSION, "field": field_to_dict(code.field),
           "metric": _metric(code), "length": code.length, "dim": code.dim}
    if isinstance(spec, RSCodeSpec):
        out.update(kind="rs", points=list(spec.points), s=spec.s, t=spec.t, b_row=spec.b_row,
                   basis=[list(f.coeffs) for f in code.basis])
    elif isinstance(spec, AGCodeSpec):
        out.update(kind="ag", places=",".join(str(p) for p in spec.places), s=spec.s,
                   divisor=format_divisor(spec.G, spec.places), degree=spec.degree,
                   constrained=code.meta.get("constrained", True),
                   basis=[{"num": list(f.num.coeffs), "den": list(f.den.coeffs)} for f in code.basis])
    else:
        raise CodeFileError(f"cannot serialise a code built from {type(spec).__name__}")
    return out


def code_from_dict(d: dict) -> Code:
    """Rebuild a code and check that the stored basis spans the same space."""
    if d.get("format") != FORMAT:
        raise CodeFileError(f"not a {FORMAT} document")
    F = field_from_dict(d["field"])
    kind = d.get("kind")
    if kind == "rs":
        code = build_code(RSCodeSpec(F, tuple(d["points"]), int(d["s"]), int(d["t"]), d.get("b_row")))
        stored = [Polynomial(F, c) for c in d["basis"]]
    elif kind == "ag":
        places = parse_places(F, d["places"])
        spec = AGCodeSpec(F, places, parse_divisor(d["divisor"], places), int(d["s"]))
        code = build_ag_code(spec, constrained=d.get("constrained", True))
        stored = [RationalFunction(Polynomial(F, b["num"]), Polynomial(F, b["den"])) for b in d["basis"]]
    else:
        raise CodeFileError(f"unknown code kind {kind!r}")
    if len(stored) != code.dim:
        raise CodeFileError(f"stored basis has {len(stored)} elements, rebuilt code has dimension {code.dim}")
    if not stored:
        return code
    gen = np.array([code.evaluate(f) for f in stored], dtype=np.int64).reshape(code.generator.shape)
    if not linalg.row_space_equal(F, gen.reshape(code.dim, -1).tolist(),
                                  code.generator.reshape(code.dim, -1).tolist()):
        raise CodeFileError("stored basis does not span the rebuilt code")
    return replace(code, basis=tuple(stored), generator=gen)


def save_code(code: Code, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code), indent=2) + "\n")


def load_code(path: str | Path) -> Code:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"{path}: {exc}") from exc
    return code_from_dict(data)
