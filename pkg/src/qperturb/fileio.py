"""Plain-text matrix and vector formats.

Grammar: lines starting with '%' are comments; the first token is the
dimension N; a matrix file then carries N*N tokens (row-major), a vector
file N tokens.  A token is either a plain decimal real or '(re,im)' with no
interior whitespace.  Values are rendered with 17 significant digits, so
format -> parse is the identity on every stored value.
"""

from __future__ import annotations

import numpy as np

from .errors import NotNormalized, ParseError
from .numkernel import HermitianMatrix
from .perturbation import StateVector

# Vector files may be off unit norm by this much and are then renormalized.
VECTOR_NORM_ATOL = 1e-6


def format_real(value: float) -> str:
    return "%.17g" % float(value)


def format_complex(value: complex) -> str:
    z = complex(value)
    if z.imag == 0.0:
        return format_real(z.real)
    return f"({format_real(z.real)},{format_real(z.imag)})"


def _tokens_with_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        out.extend((lineno, tok) for tok in stripped.split())
    return out


def _parse_number(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"bad numeric token {token!r}", lineno) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value {token!r}", lineno)
    return value


def _parse_token(token: str, lineno: int) -> complex:
    if token.startswith("("):
        if not token.endswith(")") or token.count(",") != 1:
            raise ParseError(f"bad complex token {token!r}", lineno)
        re_part, im_part = token[1:-1].split(",")
        return complex(_parse_number(re_part, lineno), _parse_number(im_part, lineno))
    return complex(_parse_number(token, lineno), 0.0)


def _parse_header(tokens: list[tuple[int, str]], what: str) -> int:
    if not tokens:
        raise ParseError(f"empty {what} input")
    lineno, token = tokens[0]
    try:
        dim = int(token)
    except ValueError:
        raise ParseError(f"dimension header must be an integer, got {token!r}", lineno) from None
    if dim < 1:
        raise ParseError(f"dimension must be >= 1, got {dim}", lineno)
    return dim


def parse_matrix(text: str) -> HermitianMatrix:
    """Parse, validate hermiticity and symmetrize a matrix file."""
    tokens = _tokens_with_lines(text)
    dim = _parse_header(tokens, "matrix")
    body = tokens[1:]
    if len(body) != dim * dim:
        lineno = body[-1][0] if body else tokens[0][0]
        raise ParseError(f"expected {dim * dim} entries for dim {dim}, got {len(body)}", lineno)
    entries = np.array(
        [_parse_token(tok, lineno) for lineno, tok in body], dtype=np.complex128
    ).reshape(dim, dim)
    return HermitianMatrix(entries)


def format_matrix(matrix: HermitianMatrix) -> str:
    rows = [str(matrix.dim)]
    for row in matrix.array:
        rows.append(" ".join(format_complex(z) for z in row))
    return "\n".join(rows) + "\n"


def parse_vector(text: str) -> StateVector:
    """Parse a state-coefficient file; renormalize if close to unit norm."""
    tokens = _tokens_with_lines(text)
    dim = _parse_header(tokens, "vector")
    body = tokens[1:]
    if len(body) != dim:
        lineno = body[-1][0] if body else tokens[0][0]
        raise ParseError(f"expected {dim} entries for dim {dim}, got {len(body)}", lineno)
    coeffs = np.array([_parse_token(tok, lineno) for lineno, tok in body], dtype=np.complex128)
    norm = float(np.linalg.norm(coeffs))
    if abs(norm - 1.0) > VECTOR_NORM_ATOL:
        raise NotNormalized(norm)
    return StateVector(coeffs / norm)


def format_vector(coefficients) -> str:
    coeffs = np.asarray(coefficients, dtype=np.complex128)
    tokens = " ".join(format_complex(z) for z in coeffs)
    return f"{coeffs.shape[0]}\n{tokens}\n"
