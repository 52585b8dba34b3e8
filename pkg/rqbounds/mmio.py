"""
Matrix Market input/output for operators and vectors.

Matrices go through `scipy.io.mmread`/`mmwrite` (array or coordinate
format, symmetric and hermitian qualifiers honored). Vectors are either a
Matrix Market single-column array, detected by the `%%MatrixMarket` header,
or plain text with one number per line (`#` starts a comment, complex values
as `1+2j`).
"""

import logging
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.io import mmread, mmwrite

from rqbounds.core_linalg import HermitianOperator, Vector, as_vector
from rqbounds.errors import CertificationError, InputError


log = logging.getLogger(__name__)

HEADER = '%%MatrixMarket'
PRECISION = 17


def _mtx(path: Path|str) -> Path:
    # mmwrite appends the extension when it is missing
    path = Path(path)
    return path if path.suffix == '.mtx' else path.with_name(path.name + '.mtx')


def _read_mm(path: Path) -> NDArray:
    try:
        data = mmread(path)
    except FileNotFoundError as err:
        raise InputError(f"'{path}' does not exist") from err
    except (ValueError, IndexError, OSError, RuntimeError) as err:
        raise InputError(f"'{path}' is not a valid Matrix Market file: {err}") from err
    if hasattr(data, 'toarray'):
        data = data.toarray()
    return np.asarray(data)


def read_matrix(path: Path|str) -> HermitianOperator:
    """
    Read a Hermitian operator from a Matrix Market file.

    A matrix without off-diagonal entries and with a real diagonal becomes a
    Diagonal operator, everything else a Dense one.

    Raises:
    - InputError: If the file is missing, malformed, not square or not Hermitian.
    """
    path = Path(path)
    m = _read_mm(path)
    try:
        diagonal = np.diag(m) if m.ndim == 2 and m.shape[0] == m.shape[1] else None
        if diagonal is not None and not np.any(m - np.diag(diagonal)) and not np.any(np.imag(diagonal)):
            operator = HermitianOperator.diagonal(np.real(diagonal))
        else:
            operator = HermitianOperator.dense(m)
    except CertificationError as err:
        raise InputError(f"'{path}': {err}") from err
    log.info("read %s operator of dimension %d from %s", operator.kind.value, operator.dim, path)
    return operator


def read_vector(path: Path|str) -> Vector:
    """
    Read a vector from a Matrix Market column/row or a plain one-number-per-line file.

    Complex entries with zero imaginary parts are returned as a real vector.

    Raises:
    - InputError: If the file is missing or malformed.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"'{path}' does not exist/is not a file")

    with open(path, 'r', encoding='utf-8') as f:
        first = f.readline()

    if first.startswith(HEADER):
        data = _read_mm(path)
        if data.ndim != 2 or 1 not in data.shape:
            raise InputError(f"'{path}': expected a single column, got shape {data.shape}")
        data = data.ravel()
    else:
        try:
            data = np.loadtxt(path, dtype=complex, comments='#', ndmin=1)
        except ValueError as err:
            raise InputError(f"'{path}': {err}") from err
        if data.ndim != 1:
            raise InputError(f"'{path}': expected one number per line")
        if not np.any(data.imag):
            data = data.real

    try:
        return as_vector(data)
    except CertificationError as err:
        raise InputError(f"'{path}': {err}") from err


def write_matrix(path: Path|str, matrix: HermitianOperator|ArrayLike, comment: str = '') -> Path:
    """Write a matrix in Matrix Market array format with 17 significant digits."""
    path = _mtx(path)
    data = matrix.to_dense() if isinstance(matrix, HermitianOperator) else np.asarray(matrix)
    mmwrite(path, data, comment=comment, precision=PRECISION)
    return path


def write_vector(path: Path|str, vector: ArrayLike, comment: str = '') -> Path:
    """Write a vector as a single-column Matrix Market array."""
    path = _mtx(path)
    mmwrite(path, as_vector(vector).reshape(-1, 1), comment=comment, precision=PRECISION)
    return path
