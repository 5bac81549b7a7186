"""Named polyphase building blocks and tightness-preserving combinators.

The combinators construct and never verify; run :func:`fbff.analysis.fusion_report`
on the result to confirm what was built.  That split keeps the closure
properties (union, tensor, unitary product preserve the tight fusion-frame
structure) testable as facts rather than assumptions baked into the code.
"""

from __future__ import annotations

import math

import numpy as np

from .cyclic import CyclicPoly
from .polyphase import PolyphaseMatrix, bank_of
from .signals import FilterBank

__all__ = [
    "mercedes_benz",
    "daubechies4",
    "union",
    "tensor",
    "paraunitary_product",
    "elementary_paraunitary",
    "modulated_copy",
    "daubechies_mercedes",
    "modulated_daubechies_stack",
    "paraunitary_chain",
    "named_matrix",
    "named_bank",
    "NAMED_MATRICES",
]

# 4-tap orthonormal taps: a, d = 2^(-5/2) (1 +/- sqrt 3); b, c = 2^(-5/2) (3 -/+ sqrt 3)
_S3 = math.sqrt(3.0)
DAUB_A = 2.0 ** -2.5 * (1.0 + _S3)
DAUB_B = 2.0 ** -2.5 * (3.0 - _S3)
DAUB_C = 2.0 ** -2.5 * (3.0 + _S3)
DAUB_D = 2.0 ** -2.5 * (1.0 - _S3)


def _constant_matrix(values: np.ndarray, period: int) -> PolyphaseMatrix:
    rows = tuple(
        tuple(CyclicPoly.constant(v, period) for v in row) for row in values
    )
    return PolyphaseMatrix(rows, period)


def _linear_entry(c0: complex, c1: complex, period: int) -> CyclicPoly:
    # at period 1 the z^{-1} term folds onto the constant (z = 1 in the ring)
    coeffs = np.zeros(period, dtype=complex)
    coeffs[0] += c0
    coeffs[1 % period] += c1
    return CyclicPoly(coeffs)


def mercedes_benz(period: int) -> PolyphaseMatrix:
    """The 2x3 constant tight frame (1/2) [[2, -1, -1], [0, r3, -r3]].

    Columns have unit norm and rows squared norm 3/2, so the corresponding
    3-channel, 2-downsampled bank is the smallest nontrivial tight fusion
    frame with projection channels.
    """
    values = np.array(
        [
            [1.0, -0.5, -0.5],
            [0.0, _S3 / 2.0, -_S3 / 2.0],
        ]
    )
    return _constant_matrix(values, period)


def daubechies4(period: int) -> PolyphaseMatrix:
    """Paraunitary 2x2 matrix of the 4-tap, 2-downsampled orthonormal pair.

    The low-pass filter is (a, c, b, d) in time order and the high-pass
    (d, -b, c, -a); the matrix is unitary at every root of unity.  Period 1
    folds the degree-1 entries onto constants, which is the orthonormal
    2-point basis.
    """
    if period < 1:
        raise ValueError("period must be positive")
    rows = (
        (
            _linear_entry(DAUB_A, DAUB_B, period),
            _linear_entry(DAUB_D, DAUB_C, period),
        ),
        (
            _linear_entry(DAUB_C, DAUB_D, period),
            _linear_entry(-DAUB_B, -DAUB_A, period),
        ),
    )
    return PolyphaseMatrix(rows, period)


def union(m0: PolyphaseMatrix, m1: PolyphaseMatrix) -> PolyphaseMatrix:
    """Column concatenation; stacks the channels of two equal-rate banks."""
    if m0.n_rows != m1.n_rows:
        raise ValueError(f"row count mismatch: {m0.n_rows} vs {m1.n_rows}")
    if m0.period != m1.period:
        raise ValueError(f"period mismatch: {m0.period} vs {m1.period}")
    rows = tuple(r0 + r1 for r0, r1 in zip(m0.rows, m1.rows))
    return PolyphaseMatrix(rows, m0.period)


def tensor(m0: PolyphaseMatrix, m1: PolyphaseMatrix) -> PolyphaseMatrix:
    """Kronecker product with ring multiplication of entries.

    Row (i0, i1) and column (j0, j1) are flattened row-major, so evaluating
    the result at any root equals the Kronecker product of the factors'
    evaluations.
    """
    if m0.period != m1.period:
        raise ValueError(f"period mismatch: {m0.period} vs {m1.period}")
    rows = []
    for i0 in range(m0.n_rows):
        for i1 in range(m1.n_rows):
            row = []
            for j0 in range(m0.n_cols):
                for j1 in range(m1.n_cols):
                    row.append(m0.entry(i0, j0) * m1.entry(i1, j1))
            rows.append(tuple(row))
    return PolyphaseMatrix(tuple(rows), m0.period)


def paraunitary_product(psi: PolyphaseMatrix, phi: PolyphaseMatrix) -> PolyphaseMatrix:
    """Matrix product over the cyclic ring; ``psi`` must be square."""
    if psi.n_rows != psi.n_cols:
        raise ValueError("left factor must be square")
    if psi.n_cols != phi.n_rows:
        raise ValueError(f"shape mismatch: {psi.n_cols} vs {phi.n_rows} rows")
    if psi.period != phi.period:
        raise ValueError(f"period mismatch: {psi.period} vs {phi.period}")
    rows = []
    for m in range(psi.n_rows):
        row = []
        for n in range(phi.n_cols):
            acc = CyclicPoly.zero(psi.period)
            for k in range(psi.n_cols):
                acc = acc + psi.entry(m, k) * phi.entry(k, n)
            row.append(acc)
        rows.append(tuple(row))
    return PolyphaseMatrix(tuple(rows), psi.period)


def elementary_paraunitary(u: np.ndarray, period: int) -> PolyphaseMatrix:
    """The degree-one paraunitary factor (I - u u*) + z u u*.

    ``u`` must be a unit vector; the positive power z is stored as
    z^{-(P-1)} under the ring relation z^P = 1.  Products of such factors
    generate paraunitary matrices of arbitrary degree.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 1 or u.size < 1:
        raise ValueError("u must be a nonempty vector")
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise ValueError("u must have unit norm")
    m = u.size
    proj = np.outer(u, np.conj(u))
    comp = np.eye(m) - proj
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            coeffs = np.zeros(period, dtype=complex)
            coeffs[0] = comp[i, j]
            coeffs[(period - 1) % period] += proj[i, j]
            row.append(CyclicPoly(coeffs))
        rows.append(tuple(row))
    return PolyphaseMatrix(tuple(rows), period)


def modulated_copy(psi: PolyphaseMatrix, perm) -> PolyphaseMatrix:
    """Substitute z -> -z entrywise, then permute the rows.

    The substitution is the order-2 twist and needs an even period.  ``perm``
    lists, for each output row, which twisted row to take; the classic 2x2
    usage is perm = (1, 0).
    """
    if psi.period % 2 != 0:
        raise ValueError("z -> -z needs an even period")
    perm = tuple(perm)
    if sorted(perm) != list(range(psi.n_rows)):
        raise ValueError(f"perm must permute {psi.n_rows} rows")
    twisted = [
        tuple(entry.twist(1, 2) for entry in row) for row in psi.rows
    ]
    rows = tuple(twisted[src] for src in perm)
    return PolyphaseMatrix(rows, psi.period)


def daubechies_mercedes(period: int) -> PolyphaseMatrix:
    """3-channel product bank: the paraunitary 4-tap pair times the
    Mercedes-Benz frame.  Column 0 equals the low-pass column of the pair."""
    return paraunitary_product(daubechies4(period), mercedes_benz(period))


def modulated_daubechies_stack(period: int) -> PolyphaseMatrix:
    """4-channel stack of the 4-tap pair and its quarter-band modulates.

    The extra filters are j^k psi_n[k], a frequency shift by pi/2; in the
    polyphase domain that is diag(1, j) applied to the z -> -z twist of the
    pair's matrix.  Channels 0,1 come from one orthonormal basis and
    channels 2,3 from another, so the stacked bank is 2-tight.
    """
    if period % 2 != 0:
        raise ValueError("quarter-band modulation needs an even period")
    base = daubechies4(period)
    rows = tuple(
        tuple((1j**m) * entry.twist(1, 2) for entry in base.rows[m])
        for m in range(base.n_rows)
    )
    return union(base, PolyphaseMatrix(rows, period))


def paraunitary_chain(
    dim: int, count: int, period: int, seed: int = 0
) -> PolyphaseMatrix:
    """Product of ``count`` elementary factors from seeded random unit vectors."""
    if dim < 1 or count < 0:
        raise ValueError("dim must be positive and count nonnegative")
    rng = np.random.default_rng(seed)
    out = _constant_matrix(np.eye(dim), period)
    for _ in range(count):
        u = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        u /= np.linalg.norm(u)
        out = paraunitary_product(out, elementary_paraunitary(u, period))
    return out


# CLI-facing registry of parameter-free named builders (period -> matrix).
NAMED_MATRICES = {
    "mercedes-benz": mercedes_benz,
    "daubechies4": daubechies4,
    "example5": daubechies_mercedes,
    "example7": modulated_daubechies_stack,
}


def named_matrix(name: str, period: int) -> PolyphaseMatrix:
    try:
        builder = NAMED_MATRICES[name]
    except KeyError:
        raise ValueError(f"unknown bank name: {name!r}") from None
    return builder(period)


def named_bank(name: str, period: int) -> FilterBank:
    return bank_of(named_matrix(name, period))
