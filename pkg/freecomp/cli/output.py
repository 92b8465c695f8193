"""Shared report formatting for the commands: rich tables, JSON and CSV."""

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
from rich.console import Console
from rich.table import Table

from freecomp.symbolic.scalars import GaussianRational, format_rational

console = Console()


def jsonable(value: Any) -> Any:
    """Exact rationals as "num/den", complex numbers as [re, im]."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, GaussianRational):
        return str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def text(value: Any) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:.10g}{value.imag:+.10g}i"
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    if isinstance(value, bool):
        return "yes" if value else "NO"
    return str(value)


def print_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]):
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(text(v) for v in row))
    console.print(table)


def print_json(payload: Any):
    sys.stdout.write(json.dumps(jsonable(payload), indent=2) + "\n")


def parse_grid(spec: str) -> np.ndarray:
    """``lo:hi:n`` as n evenly spaced points."""
    try:
        lo, hi, n = spec.split(":")
        return np.linspace(float(lo), float(hi), int(n))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"grid must look like lo:hi:n, got {spec!r}") from e


def parse_complex_grid(spec: str) -> np.ndarray:
    """``re_lo:re_hi:n,im_lo:im_hi:m`` as the n·m points of the product grid."""
    try:
        real, imag = spec.split(",")
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"complex grid must look like lo:hi:n,lo:hi:m, got {spec!r}") from e
    re_axis, im_axis = parse_grid(real), parse_grid(imag)
    return (re_axis[None, :] + 1j * im_axis[:, None]).ravel()


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[Any]]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else text(v) for v in row])
