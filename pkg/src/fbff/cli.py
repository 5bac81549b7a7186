"""Command-line front end.

Subcommands: build, analyze, freq, compose, design-maxflat, verify.
Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
All output is JSON or CSV; plotting is left to external tools.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import analysis, constructions, gabor, multilevel, oracle
from .polyphase import bank_of
from .signals import (
    FilterBank,
    bank_from_json,
    bank_to_json,
    signal_to_json,
)

__all__ = ["main", "frequency_table", "build_bank"]

_USAGE_ERROR = 2
_VERIFY_ERROR = 1


def frequency_table(fb: FilterBank, n_samples: int):
    """Squared-magnitude response of every filter at n_samples frequencies.

    Yields (channel, omega, mag2) rows in channel-major order with
    omega = 2 pi k / n_samples.
    """
    if n_samples < 2:
        raise ValueError("need at least two frequency samples")
    rows = []
    for n, phi in enumerate(fb.filters):
        k = np.arange(phi.period)
        for i in range(n_samples):
            omega = 2.0 * np.pi * i / n_samples
            response = np.sum(phi.samples * np.exp(-1j * k * omega))
            rows.append((n, omega, float(abs(response) ** 2)))
    return rows


def build_bank(name: str, period: int, args=None) -> FilterBank:
    """Build a named bank; composite names consume extra arguments."""
    if name in constructions.NAMED_MATRICES:
        return constructions.named_bank(name, period)
    if name == "union":
        parts = _split_names(args.parts, "union needs --parts name1,name2")
        mats = [constructions.named_matrix(p, period) for p in parts]
        out = mats[0]
        for m in mats[1:]:
            out = constructions.union(out, m)
        return bank_of(out)
    if name == "tensor":
        parts = _split_names(args.factors, "tensor needs --factors name1,name2")
        mats = [constructions.named_matrix(p, period) for p in parts]
        out = mats[0]
        for m in mats[1:]:
            out = constructions.tensor(out, m)
        return bank_of(out)
    if name == "paraunitary-chain":
        return bank_of(
            constructions.paraunitary_chain(
                args.dim, args.count, period, seed=args.seed
            )
        )
    raise ValueError(f"unknown bank name: {name!r}")


def _split_names(raw, message):
    if not raw:
        raise ValueError(message)
    names = [p.strip() for p in raw.split(",") if p.strip()]
    if len(names) < 2:
        raise ValueError(message)
    return names


def _write_json(obj, path=None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_bank(path: str) -> FilterBank:
    with open(path, encoding="utf-8") as fh:
        return bank_from_json(json.load(fh))


def _oracle_cross_check(fb: FilterBank, rep, tol: float) -> dict:
    dense = oracle.densify(fb)
    spectrum = oracle.dense_frame_spectrum(dense)
    a_dense = max(float(spectrum[0]), 0.0)
    b_dense = float(spectrum[-1])
    bound_gap = max(abs(rep.bounds.A - a_dense), abs(rep.bounds.B - b_dense))
    channel_match = all(
        oracle.dense_channel_gram(dense, n, tol=rep.tolerance).is_projection == flag
        for n, flag in enumerate(rep.channel_projection)
    )
    union_ok = oracle.spectrum_union_check(fb, tol=tol)
    return {
        "A_dense": a_dense,
        "B_dense": b_dense,
        "bound_gap": bound_gap,
        "channel_match": channel_match,
        "spectrum_union_ok": union_ok,
        "agrees": bool(bound_gap <= tol and channel_match and union_ok),
    }


def _cmd_build(args) -> int:
    fb = build_bank(args.name, args.period, args)
    _write_json(bank_to_json(fb), args.out)
    return 0


def _cmd_analyze(args) -> int:
    fb = _load_bank(args.bank)
    rep = analysis.fusion_report(fb, tol=args.tol)
    out = analysis.report_to_json(rep)
    status = 0
    if args.oracle:
        out["oracle"] = _oracle_cross_check(fb, rep, args.oracle_tol)
        if not out["oracle"]["agrees"]:
            status = _VERIFY_ERROR
    _write_json(out, args.out)
    return status


def _cmd_freq(args) -> int:
    fb = _load_bank(args.bank)
    rows = frequency_table(fb, args.samples)
    lines = ["n,omega,mag2"]
    lines += [f"{n},{omega:.17g},{mag2:.17g}" for n, omega, mag2 in rows]
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _resolve_tree_bank(period: int):
    def resolve(name: str) -> FilterBank:
        return constructions.named_bank(name, period)

    return resolve


def _max_tree_rate(obj) -> int:
    """Largest product of per-level rates along any root-to-leaf path."""
    probe = multilevel.tree_from_json(obj, _resolve_tree_bank(4))

    def walk(node) -> int:
        m = node.bank.downsample
        children = node.children or ()
        rates = [
            m * walk(c) if c.bank is not None else m for c in children
        ]
        return max(rates, default=m)

    return walk(probe)


def _cmd_compose(args) -> int:
    with open(args.tree, encoding="utf-8") as fh:
        spec = json.load(fh)
    ambient = args.inner_dim * _max_tree_rate(spec)
    tree = multilevel.tree_from_json(spec, _resolve_tree_bank(ambient))
    leaves = multilevel.compose_tree(tree, ambient, tol=args.tol)
    out = {
        "ambient_dim": ambient,
        "leaves": [
            {
                "weight": {"num": w.numerator, "den": w.denominator},
                "rank": rank,
                "rate": ch.rate,
                "filter": signal_to_json(ch.filter),
            }
            for ch, w, rank in leaves
        ],
    }
    status = 0
    if args.verify:
        ok, residual = multilevel.verify_tree(leaves, ambient, tol=args.tol)
        out["verified"] = ok
        out["max_residual"] = residual
        if not ok:
            status = _VERIFY_ERROR
    _write_json(out, args.out)
    return status


def _cmd_design_maxflat(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("FBFF_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    result = gabor.design_maxflat(
        args.half_taps, seed=seed, restarts=args.restarts, q=args.q, tol=args.tol
    )
    report = {
        "converged": result.converged,
        "half_taps": result.half_taps,
        "residual_inf": result.residual_inf,
        "restart": result.restart,
        "iterations": result.iterations,
        "block": result.block,
        "seed": seed,
    }
    if result.converged:
        sys_ = gabor.GaborSystem(result.signal, 2, result.block, 2)
        bounds = analysis.gabor_frame_bounds(result.signal, 2, result.block, 2)
        fb = gabor.gabor_bank(sys_)
        rep = analysis.fusion_report(fb, tol=1e-7)
        report["A"] = bounds.A
        report["B"] = bounds.B
        report["is_tight"] = rep.is_tight
        report["channel_projection"] = list(rep.channel_projection)
        if args.out is not None:
            _write_json(signal_to_json(result.signal), args.out)
        else:
            report["filter"] = signal_to_json(result.signal)
    _write_json(report)
    return 0 if result.converged else _VERIFY_ERROR


def _cmd_verify(args) -> int:
    fb = _load_bank(args.bank)
    rep = analysis.fusion_report(fb, tol=args.tol)
    out = analysis.report_to_json(rep)
    ok = rep.is_puntf
    if args.oracle:
        out["oracle"] = _oracle_cross_check(fb, rep, args.oracle_tol)
        ok = ok and out["oracle"]["agrees"]
    out["ok"] = bool(ok)
    _write_json(out, args.out)
    return 0 if ok else _VERIFY_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fbff",
        description="Construct and verify filter bank fusion frames.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("build", help="emit a named bank as JSON")
    p.add_argument(
        "name",
        help="mercedes-benz | daubechies4 | example5 | example7 | union | "
        "tensor | paraunitary-chain",
    )
    p.add_argument("--period", type=int, required=True, help="inner period P")
    p.add_argument("--parts", help="comma-separated names for union")
    p.add_argument("--factors", help="comma-separated names for tensor")
    p.add_argument("--dim", type=int, default=2, help="chain dimension")
    p.add_argument("--count", type=int, default=3, help="chain factor count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("analyze", help="fusion-frame report for a bank JSON")
    p.add_argument("bank")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check against the dense oracle; exit 1 on disagreement",
    )
    p.add_argument("--oracle-tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("freq", help="CSV table of squared frequency responses")
    p.add_argument("bank")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_freq)

    p = sub.add_parser("compose", help="flatten and verify a composition tree")
    p.add_argument("--tree", required=True, help="tree spec JSON path")
    p.add_argument(
        "--inner-dim",
        type=int,
        required=True,
        help="dimension of the deepest leaf space",
    )
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("design-maxflat", help="search for a max-flat tight prototype")
    p.add_argument("--half-taps", type=int, required=True, dest="half_taps")
    p.add_argument("--seed", type=int, default=0, help="overridden by FBFF_SEED")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--q", type=int, default=None, help="embedding block size")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", help="write the designed filter JSON here")
    p.set_defaults(func=_cmd_design_maxflat)

    p = sub.add_parser(
        "verify",
        help="assert a bank is a tight fusion frame with projection channels "
        "(the zero bank is reported as not tight)",
    )
    p.add_argument("bank")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--oracle", action="store_true", help="add dense cross-checks")
    p.add_argument("--oracle-tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
