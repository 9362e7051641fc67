"""tsallis2-check 子命令"""

import argparse

from ..config import Settings
from ..services import DerivativeEvaluator
from .common import CommandOutput, load_density, positive_float, positive_int


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("tsallis2-check", help="α=2 Tsallis 導數與 (−1)^{k−1}∫p_k² 比對", parents=list(parents))
    parser.add_argument("--density", required=True, help="混合密度 JSON 檔")
    parser.add_argument("--order", type=positive_int, required=True)
    parser.add_argument("--t", type=positive_float, required=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    d = load_density(args.density)
    lhs, rhs = DerivativeEvaluator(settings).tsallis2_identity_check(d, args.order, args.t)
    diff = abs(lhs - rhs)
    rel = diff / max(abs(rhs), 1e-300)
    payload = {"order": args.order, "t": args.t, "lhs": lhs, "rhs": rhs, "abs_diff": diff, "rel_diff": rel}
    text = f"k={args.order} t={args.t:g}: 導數 {lhs:.12g}, 積分 {rhs:.12g}, 相對差 {rel:.3e}"
    return CommandOutput(payload, text)
