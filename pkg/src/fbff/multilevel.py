"""Multi-level composition of projection channels into Parseval fusion frames.

A channel of a tight bank with orthonormal translates is an isometry from
the coarse space into the fine one; composing channels level by level and
multiplying their weights yields a weighted Parseval fusion frame on the
ambient space.  Trees describe which channels are re-expanded: an identity
child leaves a channel as a leaf, a bank child splits it again.

Filters at inner levels are never reused verbatim; they are folded to the
level's period with :func:`fbff.signals.periodize`, which preserves the
tight fusion-frame structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import channel_is_projection, verify_weighted_parseval
from .signals import (
    FilterBank,
    Signal,
    circ_convolve,
    downsample,
    involution,
    periodize,
    upsample,
)

__all__ = [
    "ChannelOp",
    "channel_apply",
    "channel_adjoint",
    "equivalent_filter",
    "TreeNode",
    "identity_leaf",
    "bank_node",
    "dwt_tree",
    "packet_tree",
    "periodize_bank",
    "compose_tree",
    "verify_tree",
    "tree_from_json",
]


@dataclass(frozen=True)
class ChannelOp:
    """One synthesis channel: y -> filter * (upsample of y by rate)."""

    filter: Signal
    rate: int

    def __post_init__(self) -> None:
        if self.rate < 1 or self.filter.period % self.rate != 0:
            raise ValueError(
                f"rate {self.rate} must divide filter period {self.filter.period}"
            )

    @property
    def in_period(self) -> int:
        return self.filter.period // self.rate

    @property
    def out_period(self) -> int:
        return self.filter.period


def channel_apply(ch: ChannelOp, y: Signal) -> Signal:
    """Upsample then convolve; maps period P to period rate * P."""
    if y.period * ch.rate != ch.filter.period:
        raise ValueError(
            f"input period {y.period} * rate {ch.rate} != filter period {ch.filter.period}"
        )
    return circ_convolve(ch.filter, upsample(y, ch.rate))


def channel_adjoint(ch: ChannelOp, x: Signal) -> Signal:
    """Adjoint of :func:`channel_apply`: correlate then downsample."""
    if x.period != ch.filter.period:
        raise ValueError(
            f"input period {x.period} != filter period {ch.filter.period}"
        )
    return downsample(circ_convolve(involution(ch.filter), x), ch.rate)


def channel_projection(ch: ChannelOp, x: Signal) -> Signal:
    """The channel's synthesis-analysis composite on the ambient space."""
    return channel_apply(ch, channel_adjoint(ch, x))


def equivalent_filter(phi_outer: Signal, phi_inner: Signal, m: int) -> Signal:
    """Single filter realizing two chained channels.

    Upsampling commutes with convolution in the needed way, so applying the
    outer channel after the inner one equals convolving with this filter and
    upsampling by the combined rate.
    """
    if phi_inner.period * m != phi_outer.period:
        raise ValueError(
            f"inner period {phi_inner.period} * rate {m} != outer period {phi_outer.period}"
        )
    return circ_convolve(phi_outer, upsample(phi_inner, m))


@dataclass(frozen=True)
class TreeNode:
    """A node of a composition tree.

    ``bank is None`` marks an identity leaf.  For a bank node, ``children``
    carries one node per channel; an empty tuple is shorthand for all-identity
    children (a depth-one expansion).
    """

    bank: FilterBank | None
    children: tuple["TreeNode", ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if self.bank is None and self.children:
            raise ValueError("identity leaves cannot have children")
        if self.bank is not None and self.children:
            if len(self.children) != self.bank.n_channels:
                raise ValueError(
                    f"need one child per channel: {len(self.children)} for "
                    f"{self.bank.n_channels} channels"
                )


def identity_leaf() -> TreeNode:
    return TreeNode(None)


def bank_node(bank: FilterBank, children=()) -> TreeNode:
    return TreeNode(bank, tuple(children))


def dwt_tree(bank: FilterBank, levels: int) -> TreeNode:
    """Classic tree: only channel 0 is re-expanded, ``levels`` times."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    node = bank_node(bank)
    for _ in range(levels - 1):
        children = [node] + [identity_leaf()] * (bank.n_channels - 1)
        node = bank_node(bank, children)
    return node


def packet_tree(bank: FilterBank, levels: int) -> TreeNode:
    """Full tree: every channel is re-expanded, ``levels`` times."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    node = bank_node(bank)
    for _ in range(levels - 1):
        node = bank_node(bank, [node] * bank.n_channels)
    return node


def periodize_bank(fb: FilterBank, filter_period: int) -> FilterBank:
    """Fold every filter of a bank onto a shorter period."""
    if filter_period == fb.filter_period:
        return fb
    return FilterBank(
        tuple(periodize(f, filter_period) for f in fb.filters), fb.downsample
    )


def compose_tree(tree: TreeNode, dim: int, tol: float = 1e-9):
    """Flatten a tree over an ambient dimension into weighted leaf channels.

    Returns a list of (ChannelOp, weight, rank) triples: the equivalent
    single-channel operator of each leaf path, the product of the per-level
    channel weights M/N as an exact fraction, and the leaf input dimension.
    Banks are folded to each level's period; every channel at every level
    must have orthonormal translates, otherwise ValueError is raised.
    """
    if tree.bank is None:
        raise ValueError("tree root must carry a bank")
    leaves: list[tuple[ChannelOp, Fraction, int]] = []
    _walk(tree, dim, None, Fraction(1), leaves, tol)
    return leaves


def _walk(
    node: TreeNode,
    dim_here: int,
    prefix: ChannelOp | None,
    weight: Fraction,
    leaves: list,
    tol: float,
) -> None:
    bank = node.bank
    if bank.filter_period % dim_here != 0:
        raise ValueError(
            f"cannot fold period {bank.filter_period} onto level period {dim_here}"
        )
    bank = periodize_bank(bank, dim_here)
    m, n = bank.downsample, bank.n_channels
    if dim_here % m != 0:
        raise ValueError(f"rate {m} must divide level period {dim_here}")
    for idx, phi in enumerate(bank.filters):
        if not channel_is_projection(phi, m, tol):
            raise ValueError(f"channel {idx} translates are not orthonormal")
    channel_weight = Fraction(m, n)
    children = node.children or tuple(identity_leaf() for _ in range(n))
    for phi, child in zip(bank.filters, children):
        if prefix is None:
            eff = ChannelOp(phi, m)
        else:
            eff = ChannelOp(
                equivalent_filter(prefix.filter, phi, prefix.rate),
                prefix.rate * m,
            )
        w = weight * channel_weight
        if child.bank is None:
            leaves.append((eff, w, eff.in_period))
        else:
            _walk(child, dim_here // m, eff, w, leaves, tol)


def verify_tree(leaves, dim: int, tol: float = 1e-9):
    """Check the flattened leaves against the weighted Parseval identity."""
    projections = [
        (lambda x, ch=ch: channel_projection(ch, Signal(x)).samples, w, rank)
        for ch, w, rank in leaves
    ]
    return verify_weighted_parseval(projections, dim, tol)


def tree_from_json(obj, resolve_bank) -> TreeNode:
    """Build a tree from its JSON form.

    The format is ``{"bank": <name or inline bank>, "children": [...]}``
    where each child is either the string ``"identity"`` or another tree
    object, and ``children`` may be omitted for a depth-one node.
    ``resolve_bank`` maps a bank name to a FilterBank; inline banks use the
    shared filter-bank JSON format.
    """
    from .signals import bank_from_json

    if not isinstance(obj, dict) or "bank" not in obj:
        raise ValueError("tree node must be an object with a 'bank' key")
    spec = obj["bank"]
    bank = resolve_bank(spec) if isinstance(spec, str) else bank_from_json(spec)
    children = []
    for child in obj.get("children", []):
        if child == "identity":
            children.append(identity_leaf())
        else:
            children.append(tree_from_json(child, resolve_bank))
    return TreeNode(bank, tuple(children))
