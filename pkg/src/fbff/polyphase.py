"""Polyphase decomposition, polyphase and Zak matrices, and their evaluation.

A filter of period M * P splits into M cyclic polynomials of period P, one
per residue class of the sample index mod M.  Stacking the components of N
filters column by column gives the M x N polyphase matrix; evaluating it at
the P-th roots of unity reduces every frame-theoretic question about the
bank to finite-dimensional linear algebra, one root at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclic import CyclicPoly
from .signals import FilterBank, Signal

__all__ = [
    "PolyphaseVector",
    "PolyphaseMatrix",
    "ZakMatrix",
    "decompose",
    "reconstruct",
    "matrix_of",
    "bank_of",
    "adjoint",
    "eval_matrix",
    "gram",
    "zak_of",
    "zak_power_rows",
    "pp_inner",
]


@dataclass(frozen=True, eq=False)
class PolyphaseVector:
    """The M polyphase components of one filter."""

    components: tuple[CyclicPoly, ...]

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if len(components) < 1:
            raise ValueError("polyphase vector needs at least one component")
        period = components[0].period
        if any(c.period != period for c in components):
            raise ValueError("components must share one period")

    @property
    def rate(self) -> int:
        return len(self.components)

    @property
    def period(self) -> int:
        return self.components[0].period

    def eval_at_root(self, p: int) -> np.ndarray:
        return np.array([c.eval_at_root(p) for c in self.components])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyphaseVector)
            and self.components == other.components
        )


@dataclass(frozen=True, eq=False)
class PolyphaseMatrix:
    """An M x N grid of cyclic polynomials of one shared period.

    Rows are indexed by phase, columns by channel.  N = 0 is allowed (the
    empty operand of column concatenation), which is why the period is
    stored explicitly.
    """

    rows: tuple[tuple[CyclicPoly, ...], ...]
    period: int

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) < 1:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows must have equal length")
        for r in rows:
            for entry in r:
                if entry.period != self.period:
                    raise ValueError("all entries must share the matrix period")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def entry(self, m: int, n: int) -> CyclicPoly:
        return self.rows[m][n]

    def column(self, n: int) -> PolyphaseVector:
        return PolyphaseVector(tuple(r[n] for r in self.rows))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyphaseMatrix)
            and self.period == other.period
            and self.rows == other.rows
        )


@dataclass(frozen=True, eq=False)
class ZakMatrix:
    """M x R grid of twisted polyphase components of a single filter.

    Column r carries the components evaluated along the rotated circle
    exp(-2 pi j r / R) z; column 0 is the plain polyphase vector.
    """

    rows: tuple[tuple[CyclicPoly, ...], ...]
    period: int

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) < 1 or len(rows[0]) < 1:
            raise ValueError("Zak matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows must have equal length")
        for r in rows:
            for entry in r:
                if entry.period != self.period:
                    raise ValueError("all entries must share the matrix period")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def entry(self, m: int, r: int) -> CyclicPoly:
        return self.rows[m][r]


def decompose(phi: Signal, m: int) -> PolyphaseVector:
    """Split a period-(m*P) signal into its m polyphase components."""
    if m < 1 or phi.period % m != 0:
        raise ValueError(f"rate {m} must divide period {phi.period}")
    return PolyphaseVector(tuple(CyclicPoly(phi.samples[k::m]) for k in range(m)))


def reconstruct(v: PolyphaseVector) -> Signal:
    """Interleave polyphase components back into a signal; exact inverse of
    :func:`decompose`."""
    m, p = v.rate, v.period
    out = np.empty(m * p, dtype=complex)
    for k, c in enumerate(v.components):
        out[k::m] = c.coeffs
    return Signal(out)


def matrix_of(fb: FilterBank) -> PolyphaseMatrix:
    """Polyphase matrix of a bank: column n holds filter n's components."""
    vectors = [decompose(phi, fb.downsample) for phi in fb.filters]
    rows = tuple(
        tuple(v.components[m] for v in vectors) for m in range(fb.downsample)
    )
    return PolyphaseMatrix(rows, fb.inner_period)


def bank_of(mat: PolyphaseMatrix) -> FilterBank:
    """Filter bank whose polyphase matrix is ``mat`` (rate = row count)."""
    if mat.n_cols < 1:
        raise ValueError("cannot build a bank from an empty matrix")
    filters = tuple(reconstruct(mat.column(n)) for n in range(mat.n_cols))
    return FilterBank(filters, mat.n_rows)


def adjoint(mat: PolyphaseMatrix) -> PolyphaseMatrix:
    """Transpose with conjugate-reversed entries.

    Evaluating the adjoint at any root gives the conjugate transpose of the
    original evaluation.
    """
    rows = tuple(
        tuple(mat.entry(m, n).conj_reverse() for m in range(mat.n_rows))
        for n in range(mat.n_cols)
    )
    if mat.n_cols == 0:
        raise ValueError("adjoint of an empty matrix is not representable")
    return PolyphaseMatrix(rows, mat.period)


def eval_matrix(mat: PolyphaseMatrix, p: int) -> np.ndarray:
    """Entrywise evaluation at the p-th root of unity; returns M x N complex."""
    out = np.empty((mat.n_rows, mat.n_cols), dtype=complex)
    for m in range(mat.n_rows):
        for n in range(mat.n_cols):
            out[m, n] = mat.entry(m, n).eval_at_root(p)
    return out


def gram(mat: PolyphaseMatrix, p: int) -> np.ndarray:
    """The M x M matrix E E^H with E the evaluation at root p; Hermitian by
    construction, and its extreme eigenvalues are the per-root frame bounds."""
    e = eval_matrix(mat, p)
    return e @ e.conj().T


def zak_of(phi: Signal, m: int, r_count: int) -> ZakMatrix:
    """Zak matrix of a filter: entry (m, r) twists component m by r of R."""
    vec = decompose(phi, m)
    if r_count < 1 or vec.period % r_count != 0:
        raise ValueError(
            f"redundancy {r_count} must divide inner period {vec.period}"
        )
    rows = tuple(
        tuple(comp.twist(r, r_count) for r in range(r_count))
        for comp in vec.components
    )
    return ZakMatrix(rows, vec.period)


def zak_power_rows(zak: ZakMatrix) -> np.ndarray:
    """Row sums of squared moduli across the Zak columns, at every root.

    Returns a real (M, P) grid: entry (m, p) is sum_r |Zak[m, r](z_p)|^2.
    """
    out = np.zeros((zak.n_rows, zak.period))
    for m in range(zak.n_rows):
        for r in range(zak.n_cols):
            out[m] += np.abs(zak.entry(m, r).eval_all()) ** 2
    return out


def pp_inner(phi: Signal, psi: Signal, m: int) -> complex:
    """Inner product of two filters computed in the polyphase domain.

    Averages the C^M inner products of the evaluated polyphase vectors over
    all roots; the polyphase map is unitary, so this equals the time-domain
    inner product.
    """
    if phi.period != psi.period:
        raise ValueError(f"period mismatch: {phi.period} vs {psi.period}")
    if m < 1 or phi.period % m != 0:
        raise ValueError(f"rate {m} must divide period {phi.period}")
    ev_phi = np.stack([c.eval_all() for c in decompose(phi, m).components])
    ev_psi = np.stack([c.eval_all() for c in decompose(psi, m).components])
    p = phi.period // m
    return complex(np.sum(ev_phi * np.conj(ev_psi)) / p)
