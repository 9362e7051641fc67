"""bounds 子命令"""

import argparse

from ..config import Settings
from ..core import entropy_bounds
from ..services.codec import bounds_to_json
from .common import CommandOutput, positive_float


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("bounds", help="h_α(X + √t Z) 的上下界", parents=list(parents))
    parser.add_argument("--alpha", type=positive_float, required=True)
    parser.add_argument("--t", type=positive_float, required=True)
    parser.add_argument("--sigma2", type=float, required=True, help="X 的變異數")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    bounds = entropy_bounds(args.alpha, args.t, args.sigma2)
    upper = "無" if bounds.upper is None else f"{bounds.upper:.12g}"
    lines = [
        f"α={bounds.alpha:g}, t={bounds.t:g}, σ²={bounds.sigma2:g}",
        f"下界: {bounds.lower:.12g}",
        f"上界: {upper}",
    ]
    if bounds.gaussian_reference is not None:
        lines.append(f"同變異數高斯的 Rényi 熵: {bounds.gaussian_reference:.12g}")
    return CommandOutput(bounds_to_json(bounds), "\n".join(lines))
