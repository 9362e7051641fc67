"""scan 子命令:完全單調性的符號掃描"""

import argparse

from ..config import Settings
from ..services import ExportService, SignScanner, make_t_grid
from ..services.codec import scan_report_to_json
from ..services.export_service import FORMATS
from .common import CommandOutput, add_entropy_argument, float_list, load_density, order_list, positive_float, positive_int


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("scan", help="在 (k, α, t) 格點上檢查 (−1)^{k−1}h^{(k)} ≥ 0", parents=list(parents))
    parser.add_argument("--density", required=True, help="混合密度 JSON 檔")
    add_entropy_argument(parser)
    parser.add_argument("--orders", type=order_list, default=(1, 2, 3, 4), help='例如 "1..9" 或 "1,3"')
    parser.add_argument("--alphas", type=float_list, required=True, help="α,逗號分隔")
    parser.add_argument("--t-min", type=positive_float, default=0.1)
    parser.add_argument("--t-max", type=positive_float, default=10.0)
    parser.add_argument("--t-points", type=positive_int, default=50)
    parser.add_argument("--log-grid", action="store_true", help="t 取等比格點")
    parser.add_argument("--export", choices=FORMATS, help="另外匯出到 REPORTS_DIR")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    d = load_density(args.density)
    grid = make_t_grid(args.t_min, args.t_max, args.t_points, args.log_grid)
    report = SignScanner(settings).scan_signs(d, args.entropy, args.orders, args.alphas, grid)

    exporter = ExportService(settings)
    payload = scan_report_to_json(report)
    if args.export:
        payload["exported"] = exporter.export(report, args.export)
    return CommandOutput(payload, exporter.generate_text_report(report))
