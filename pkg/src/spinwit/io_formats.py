"""Line-oriented text formats for density matrices, channel vectors, and
coefficient tables.

Format v1 is deliberately dumb: a magic line, a couple of header fields,
then whitespace-separated decimals. Floats render with 17 significant
digits, so write -> parse -> write reproduces files byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .numerics import DensityMatrix, ValidationError
from .projector_poly import projector_coeffs, singlet_coeffs, swap_coeffs
from .spin_ops import SpinLabel
from .su2_states import AlphaVector

DENSITY_MAGIC = "spinwit-density v1"
ALPHA_MAGIC = "spinwit-alpha v1"


class FormatError(ValueError):
    """Malformed or inconsistent file content; message carries the line number."""


def format_float(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.17g}"


def _fail(lineno: int, message: str):
    raise FormatError(f"line {lineno}: {message}")


def _parse_floats(token_line: str, lineno: int) -> list[float]:
    out = []
    for col, tok in enumerate(token_line.split(), start=1):
        try:
            out.append(float(tok))
        except ValueError:
            _fail(lineno, f"column {col}: {tok!r} is not a number")
    return out


def write_density(dm: DensityMatrix) -> str:
    lines = [
        DENSITY_MAGIC,
        f"dim {dm.dim}",
        "local " + " ".join(str(d) for d in dm.local_dims),
    ]
    for row in dm.matrix:
        parts = []
        for entry in row:
            parts.append(format_float(float(entry.real)))
            parts.append(format_float(float(entry.imag)))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_density(text: str) -> DensityMatrix:
    lines = text.splitlines()
    if not lines or lines[0].strip() != DENSITY_MAGIC:
        _fail(1, f"expected header {DENSITY_MAGIC!r}")
    if len(lines) < 3:
        _fail(len(lines), "truncated file: missing dim/local headers")
    dim_parts = lines[1].split()
    if len(dim_parts) != 2 or dim_parts[0] != "dim" or not dim_parts[1].isdigit():
        _fail(2, f"expected 'dim <n>', got {lines[1]!r}")
    dim = int(dim_parts[1])
    local_parts = lines[2].split()
    if len(local_parts) < 2 or local_parts[0] != "local" or not all(
        p.isdigit() for p in local_parts[1:]
    ):
        _fail(3, f"expected 'local <d1> <d2> ...', got {lines[2]!r}")
    local_dims = tuple(int(p) for p in local_parts[1:])
    rows = [ln for ln in lines[3:] if ln.strip()]
    if len(rows) != dim:
        _fail(len(lines), f"expected {dim} matrix rows, found {len(rows)}")
    matrix = np.zeros((dim, dim), dtype=complex)
    for r, line in enumerate(rows):
        values = _parse_floats(line, 4 + r)
        if len(values) != 2 * dim:
            _fail(4 + r, f"expected {2 * dim} numbers (re im pairs), found {len(values)}")
        matrix[r] = np.array(values[0::2]) + 1j * np.array(values[1::2])
    return DensityMatrix(matrix, local_dims)


def write_density_file(dm: DensityMatrix, path) -> None:
    Path(path).write_text(write_density(dm))


def parse_density_file(path) -> DensityMatrix:
    return parse_density(Path(path).read_text())


def write_alpha(alpha: AlphaVector) -> str:
    values = " ".join(format_float(float(v)) for v in alpha.values)
    return f"{ALPHA_MAGIC}\ntwice_spin {alpha.twice_spin}\nalpha {values}\n"


def parse_alpha(text: str) -> AlphaVector:
    lines = text.splitlines()
    if not lines or lines[0].strip() != ALPHA_MAGIC:
        _fail(1, f"expected header {ALPHA_MAGIC!r}")
    if len(lines) < 3:
        _fail(len(lines), "truncated file: missing twice_spin/alpha lines")
    ts_parts = lines[1].split()
    if len(ts_parts) != 2 or ts_parts[0] != "twice_spin" or not ts_parts[1].isdigit():
        _fail(2, f"expected 'twice_spin <2s>', got {lines[1]!r}")
    twice_spin = int(ts_parts[1])
    alpha_parts = lines[2].split()
    if not alpha_parts or alpha_parts[0] != "alpha":
        _fail(3, f"expected 'alpha <a0> ...', got {lines[2]!r}")
    values = _parse_floats(" ".join(alpha_parts[1:]), 3)
    if len(values) != twice_spin + 1:
        _fail(3, f"expected {twice_spin + 1} coefficients, found {len(values)}")
    # Text files round through 17 significant digits; accept that much slack.
    return AlphaVector(twice_spin, np.array(values)).validate(atol=1e-6)


def write_alpha_file(alpha: AlphaVector, path) -> None:
    Path(path).write_text(write_alpha(alpha))


def parse_alpha_file(path) -> AlphaVector:
    return parse_alpha(Path(path).read_text())


@dataclass(frozen=True)
class CoeffTable:
    """Exact expansion of an operator in powers of the dot product."""

    twice_spin: int
    operator: str
    channel: int | None
    rows: tuple[tuple[int, str], ...]


def coeff_table(s: SpinLabel, operator: str, channel: int | None = None) -> CoeffTable:
    if operator == "swap":
        coeffs = swap_coeffs(s)
    elif operator == "singlet":
        coeffs = singlet_coeffs(s)
    elif operator == "projector":
        if channel is None:
            raise ValidationError("projector tables need a --channel value")
        coeffs = projector_coeffs(s, channel)
    else:
        raise ValidationError(f"unknown operator {operator!r} (swap, singlet, projector)")
    rows = tuple((power, str(c)) for power, c in enumerate(coeffs))
    return CoeffTable(s.twice_spin, operator, channel, rows)


def format_coeff_table(table: CoeffTable) -> str:
    head = f"operator {table.operator}"
    if table.channel is not None:
        head += f" {table.channel}"
    lines = [head, f"spin {SpinLabel(table.twice_spin)}"]
    lines += [f"{power} {coeff}" for power, coeff in table.rows]
    return "\n".join(lines) + "\n"
