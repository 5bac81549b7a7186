"""Dense brute-force ground truth for filter banks.

The synthesis operator is materialized as an explicit matrix of translated
filters, and every frame quantity is read off it directly, with no
polyphase machinery anywhere on this path.  Deliberately naive: O((MP)^3) eigensolves,
gated to small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import hermitian_eigs
from .polyphase import gram, matrix_of
from .signals import FilterBank, translate

__all__ = [
    "DenseSynthesis",
    "densify",
    "dense_frame_spectrum",
    "ChannelGram",
    "dense_channel_gram",
    "spectrum_union_check",
]

_MAX_DIM = 512


@dataclass(frozen=True, eq=False)
class DenseSynthesis:
    """The (MP) x (NP) synthesis matrix; column (n, p) is T^{Mp} filter_n."""

    matrix: np.ndarray
    n_channels: int
    translates: int  # P, the inner period

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=complex)
        if mat.shape[1] != self.n_channels * self.translates:
            raise ValueError("column count must be N * P")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


def densify(fb: FilterBank) -> DenseSynthesis:
    """Materialize a bank's synthesis operator, channel-major columns."""
    if fb.filter_period > _MAX_DIM:
        raise ValueError(
            f"dense oracle gated to dimension {_MAX_DIM}, got {fb.filter_period}"
        )
    p = fb.inner_period
    cols = []
    for phi in fb.filters:
        for shift in range(p):
            cols.append(translate(phi, fb.downsample * shift).samples)
    return DenseSynthesis(np.stack(cols, axis=1), fb.n_channels, p)


def dense_frame_spectrum(d: DenseSynthesis) -> np.ndarray:
    """Ascending eigenvalues of the dense frame operator D D^H."""
    g = d.matrix @ d.matrix.conj().T
    return hermitian_eigs(g)


@dataclass(frozen=True)
class ChannelGram:
    """Projection verdict for one channel's dense translate Gram."""

    is_projection: bool
    rank: int
    trace: float
    idempotency_defect: float
    selfadjoint_defect: float


def dense_channel_gram(d: DenseSynthesis, n: int, tol: float = 1e-9) -> ChannelGram:
    """Form the channel's translate Gram densely and test projection-ness."""
    if not 0 <= n < d.n_channels:
        raise ValueError(f"channel index {n} out of range")
    cols = d.matrix[:, n * d.translates : (n + 1) * d.translates]
    pi = cols @ cols.conj().T
    idem = float(np.sqrt(np.sum(np.abs(pi @ pi - pi) ** 2)))
    herm = float(np.sqrt(np.sum(np.abs(pi - pi.conj().T) ** 2)))
    trace = float(np.trace(pi).real)
    return ChannelGram(
        is_projection=bool(idem <= tol and herm <= tol),
        rank=int(round(trace)),
        trace=trace,
        idempotency_defect=idem,
        selfadjoint_defect=herm,
    )


def spectrum_union_check(fb: FilterBank, tol: float = 1e-8) -> bool:
    """Dense spectrum equals the union of per-root polyphase Gram spectra.

    The synthesis operator block-diagonalizes root by root, so the multiset
    of dense Gram eigenvalues must match the sorted concatenation of the
    per-root eigenvalues.
    """
    dense = dense_frame_spectrum(densify(fb))
    mat = matrix_of(fb)
    pieces = [hermitian_eigs(gram(mat, p)) for p in range(mat.period)]
    union = np.sort(np.concatenate(pieces))
    return bool(np.max(np.abs(dense - union)) <= tol)
