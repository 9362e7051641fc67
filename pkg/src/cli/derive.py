"""derive 子命令:熵的 k 階 t 導數"""

import argparse

from ..config import Settings
from ..core import HeatCalculus
from ..models import EntropyKind
from ..services.codec import derivative_to_json
from .common import CommandOutput, add_entropy_argument, positive_int


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("derive", help="推導熵沿熱流的 k 階導數", parents=list(parents))
    add_entropy_argument(parser)
    parser.add_argument("--order", type=positive_int, required=True, help="導數階數 k ≥ 1")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    result = HeatCalculus(settings).derive(EntropyKind.parse(args.entropy), args.order)
    return CommandOutput(derivative_to_json(result), str(result))
