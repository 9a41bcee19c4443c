"""The GF(5) bottleneck RS example, recomputed and checked against a golden table."""

from __future__ import annotations

import csv
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .codes import Code, RSCodeSpec, build_code, iter_codewords, weight_enumerator
from .gf import field_new
from .poly import hyperderivative, pretty

FIELD = field_new(5)
POINTS = (1, 3, 4)
S, T, B_ROW = 2, 4, 1


class GoldenMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class ExampleRow:
    polynomial: str
    hyperderivative: str
    codeword: str
    weight: int


def format_matrix(A) -> str:
    return ";".join(" ".join(str(int(x)) for x in row) for row in np.asarray(A))


def example_code() -> Code:
    return build_code(RSCodeSpec(FIELD, POINTS, S, T, B_ROW))


def compute_rows(code: Code | None = None) -> list[ExampleRow]:
    code = code or example_code()
    rows = []
    for msg, A in iter_codewords(code):
        f = code.message_function(msg)
        rows.append(ExampleRow(pretty(f), pretty(hyperderivative(f, 1)), format_matrix(A), code.weight(A)))
    return rows


def golden_path() -> Path:
    return Path(str(resources.files("posetcode") / "data" / "worked_example.csv"))


def load_golden(path: str | Path | None = None) -> list[ExampleRow]:
    path = Path(path) if path else golden_path()
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    return [ExampleRow(r["polynomial"].strip(), r["hyperderivative"].strip(),
                       r["codeword"].strip(), int(r["weight"])) for r in reader]


def check_against_golden(computed: list[ExampleRow], golden: list[ExampleRow]) -> list[ExampleRow]:
    """Return the computed rows in golden order, or raise GoldenMismatch at the first difference."""
    by_poly = {row.polynomial: row for row in computed}
    if len(by_poly) != len(computed):
        raise GoldenMismatch("computed table repeats a polynomial")
    ordered = []
    for i, want in enumerate(golden, 1):
        got = by_poly.pop(want.polynomial, None)
        if got is None:
            raise GoldenMismatch(f"golden row {i}: polynomial {want.polynomial!r} is not a codeword polynomial")
        if got != want:
            raise GoldenMismatch(f"golden row {i}: expected {asdict(want)}, computed {asdict(got)}")
        ordered.append(got)
    if by_poly:
        extra = next(iter(by_poly.values()))
        raise GoldenMismatch(f"computed row not in golden table: {asdict(extra)}")
    return ordered


def run(golden: str | Path | None = None) -> dict:
    """Build the example code, check every row, and summarise."""
    code = example_code()
    rows = check_against_golden(compute_rows(code), load_golden(golden))
    enum = weight_enumerator(code)
    return {
        "rows": rows,
        "length": code.length,
        "dim": code.dim,
        "distance": enum.min_nonzero_weight,
        "enumerator": enum,
    }
