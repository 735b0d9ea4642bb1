"""Command-line interface: spectrum, perturb, sweep, model.

Reports are line-oriented ``key = value`` text (vectors as comma-joined
``(re,im)`` tokens) so tests and scripts can grep exact keys; sweeps emit
CSV with the header ``x,level,perturbative,exact,abs_error`` followed by
``# order level=<n> slope=<s>`` comment lines.  Any package error maps to a
single ``error: <Name>: <detail>`` line on stderr and exit code 1.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .eigensolver import jacobi_eigendecompose
from .errors import DimensionMismatch, InsufficientData, ParseError, QPerturbError
from .fileio import format_matrix, format_real, parse_matrix, parse_vector
from .models import BoxModelSpec, box_hamiltonian, box_potential_matrix, random_hermitian
from .perturbation import (
    DEFAULT_TOL_DEGEN,
    DEFAULT_TOL_NUM,
    StateVector,
    first_order,
    residual_norm,
)
from .verify import (
    DEFAULT_X_GRID,
    SUPERPOSITION_LEVEL,
    convergence_order,
    level_sweep,
    records_for_level,
    superposition_sweep,
)

CSV_HEADER = "x,level,perturbative,exact,abs_error"


def _pair(z: complex) -> str:
    return f"({format_real(z.real)},{format_real(z.imag)})"


def _vector_line(values) -> str:
    return ", ".join(_pair(z) for z in np.asarray(values, dtype=np.complex128))


def _load_matrix(path: str):
    return parse_matrix(Path(path).read_text())


def spectrum_report(path: str) -> str:
    matrix = _load_matrix(path)
    decomp = jacobi_eigendecompose(matrix)
    lines = [f"dim = {decomp.dim}"]
    for m in range(decomp.dim):
        lines.append(f"eigenvalue_{m} = {format_real(decomp.eigenvalues[m])}")
    for m in range(decomp.dim):
        lines.append(f"phi_{m} = {_vector_line(decomp.eigenvector(m))}")
    return "\n".join(lines) + "\n"


def _resolve_state(args, dim: int) -> tuple[str, StateVector]:
    if args.level is not None:
        return "level", StateVector.basis_state(dim, args.level)
    return "state", parse_vector(Path(args.state).read_text())


def solve_report(args) -> str:
    hamiltonian = _load_matrix(args.hamiltonian)
    perturbation = _load_matrix(args.perturbation)
    if hamiltonian.dim != perturbation.dim:
        raise DimensionMismatch(
            f"H dim {hamiltonian.dim} vs H' dim {perturbation.dim}"
        )
    mode, state = _resolve_state(args, hamiltonian.dim)
    decomp = jacobi_eigendecompose(hamiltonian)
    result = first_order(
        decomp, perturbation, state, args.x, args.tol_degen, args.tol_num
    )
    psi1_full = decomp.synthesize(result.perturbed_state)
    residual = residual_norm(
        hamiltonian, perturbation, args.x, result.total_energy, psi1_full
    )
    lines = [
        f"dim = {decomp.dim}",
        f"x = {format_real(args.x)}",
        f"mode = {mode}",
    ]
    if mode == "level":
        lines.append(f"level = {args.level}")
    for n in range(decomp.dim):
        lines.append(f"E_{n} = {format_real(decomp.eigenvalues[n])}")
        lines.append(f"shift_{n} = {format_real(result.level_shifts[n])}")
        lines.append(f"E1_{n} = {format_real(result.perturbed_levels[n])}")
    lines.append(f"E = {format_real(result.expected_energy)}")
    lines.append(f"Eprime = {format_real(result.total_first_order)}")
    lines.append(f"E1 = {format_real(result.total_energy)}")
    lines.append(f"b = {_vector_line(state.coefficients)}")
    lines.append(f"a = {_vector_line(result.corrections)}")
    lines.append(f"psi1 = {_vector_line(result.perturbed_state)}")
    lines.append(f"psi1_normalized = {_vector_line(result.perturbed_state_normalized)}")
    lines.append(f"residual = {format_real(residual)}")
    return "\n".join(lines) + "\n"


def _sweep_grid(args) -> tuple[float, ...]:
    if args.points is None and args.x_min is None and args.x_max is None:
        return DEFAULT_X_GRID
    points = 5 if args.points is None else args.points
    x_min = 1e-3 if args.x_min is None else args.x_min
    x_max = 1e-1 if args.x_max is None else args.x_max
    if points < 2:
        raise InsufficientData(f"need at least 2 grid points, got {points}")
    if not (0 < x_min <= x_max) or not (math.isfinite(x_min) and math.isfinite(x_max)):
        raise InsufficientData("grid bounds must satisfy 0 < x-min <= x-max")
    # Descending, largest strength first, matching the default grid's order.
    return tuple(np.logspace(math.log10(x_max), math.log10(x_min), points))


def sweep_csv(args) -> str:
    hamiltonian = _load_matrix(args.hamiltonian)
    perturbation = _load_matrix(args.perturbation)
    if hamiltonian.dim != perturbation.dim:
        raise DimensionMismatch(
            f"H dim {hamiltonian.dim} vs H' dim {perturbation.dim}"
        )
    xs = _sweep_grid(args)
    if args.state is not None:
        state = parse_vector(Path(args.state).read_text())
        records = superposition_sweep(hamiltonian, perturbation, state, xs)
        fit_levels = [SUPERPOSITION_LEVEL]
    else:
        levels = None if args.level is None else [args.level]
        records = level_sweep(hamiltonian, perturbation, xs, levels)
        fit_levels = sorted({r.level for r in records})
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{format_real(r.x)},{r.level},{format_real(r.perturbative)},"
            f"{format_real(r.exact)},{format_real(r.abs_error)}"
        )
    for level in fit_levels:
        fit = convergence_order(records_for_level(records, level))
        slope = "floored" if fit.floored else format_real(fit.slope)
        lines.append(f"# order level={level} slope={slope}")
    return "\n".join(lines) + "\n"


def _parse_potential(spec: str) -> tuple[str, float]:
    kind, sep, raw = spec.partition(":")
    if not sep:
        raise ParseError(f"potential must look like kind:value, got {spec!r}")
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"bad potential value {raw!r}") from None
    if kind not in ("const", "linear", "quadratic"):
        raise ParseError(f"unknown potential kind {kind!r}")
    return kind, value


def run_model(args) -> list[str]:
    written = []
    if args.family == "box":
        kind, value = _parse_potential(args.potential)
        spec = BoxModelSpec(args.levels, args.width, kind, value)
        Path(args.out_h).write_text(format_matrix(box_hamiltonian(spec)))
        written.append(args.out_h)
        Path(args.out_hp).write_text(format_matrix(box_potential_matrix(spec)))
        written.append(args.out_hp)
    else:
        matrix = random_hermitian(args.seed, args.dim, args.scale)
        Path(args.out_h).write_text(format_matrix(matrix))
        written.append(args.out_h)
    return written


def _cmd_spectrum(args) -> int:
    sys.stdout.write(spectrum_report(args.hamiltonian))
    return 0


def _cmd_perturb(args) -> int:
    sys.stdout.write(solve_report(args))
    return 0


def _cmd_sweep(args) -> int:
    sys.stdout.write(sweep_csv(args))
    return 0


def _cmd_model(args) -> int:
    for path in run_model(args):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qperturb",
        description="First-order perturbation of dense Hermitian matrices, "
        "verified against exact diagonalization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="eigenvalues and eigenvectors of H")
    p_spec.add_argument("hamiltonian", help="matrix file for H")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_solve = sub.add_parser("perturb", help="first-order result at one strength")
    p_solve.add_argument("hamiltonian", help="matrix file for H")
    p_solve.add_argument("perturbation", help="matrix file for H'")
    p_solve.add_argument("--x", type=float, required=True, help="perturbation strength")
    solve_mode = p_solve.add_mutually_exclusive_group(required=True)
    solve_mode.add_argument("--level", type=int, help="eigenstate mode: level index n")
    solve_mode.add_argument("--state", help="superposition mode: vector file with b_j")
    p_solve.add_argument("--tol-degen", type=float, default=DEFAULT_TOL_DEGEN)
    p_solve.add_argument("--tol-num", type=float, default=DEFAULT_TOL_NUM)
    p_solve.set_defaults(func=_cmd_perturb)

    p_sweep = sub.add_parser("sweep", help="strength sweep vs the exact oracle (CSV)")
    p_sweep.add_argument("hamiltonian", help="matrix file for H")
    p_sweep.add_argument("perturbation", help="matrix file for H'")
    p_sweep.add_argument("--x-min", type=float, dest="x_min")
    p_sweep.add_argument("--x-max", type=float, dest="x_max")
    p_sweep.add_argument("--points", type=int, help="log-spaced grid size")
    sweep_mode = p_sweep.add_mutually_exclusive_group()
    sweep_mode.add_argument("--level", type=int, help="restrict to one level")
    sweep_mode.add_argument("--state", help="superposition mode: vector file with b_j")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_model = sub.add_parser("model", help="write generated matrix files")
    model_sub = p_model.add_subparsers(dest="family", required=True)

    p_box = model_sub.add_parser("box", help="particle in a box plus potential")
    p_box.add_argument("--levels", type=int, required=True)
    p_box.add_argument("--width", type=float, required=True)
    p_box.add_argument("--potential", required=True, help="const:v | linear:l | quadratic:k")
    p_box.add_argument("--out-h", default="H.txt")
    p_box.add_argument("--out-hp", default="Hp.txt")
    p_box.set_defaults(func=_cmd_model)

    p_rand = model_sub.add_parser("random", help="seeded random Hermitian matrix")
    p_rand.add_argument("--seed", type=int, required=True)
    p_rand.add_argument("--dim", type=int, required=True)
    p_rand.add_argument("--scale", type=float, default=1.0)
    p_rand.add_argument("--out-h", default="H.txt")
    p_rand.set_defaults(func=_cmd_model)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QPerturbError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
