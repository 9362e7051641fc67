"""reduce 子命令:原始積分化為標準動差"""

import argparse

from ..config import Settings
from ..core import reduce_raw_integral
from ..models import RawIntegral
from ..services.codec import expr_to_json
from .common import CommandOutput, factor_map


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("reduce", help="把 ∫p^(α+c) ∏pₙ^kₙ dx 化為標準動差", parents=list(parents))
    parser.add_argument("--offset", type=int, required=True, help="p 次方的偏移量 c (須等於 −Σkₙ)")
    parser.add_argument("--factors", type=factor_map, required=True, help="例如 1:2,2:1")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    raw = RawIntegral(args.offset, tuple(args.factors))
    expr = reduce_raw_integral(raw)
    return CommandOutput(
        {"input": str(raw), "expr": expr_to_json(expr)},
        f"{raw} / ∫p^α dx = {expr}",
    )
