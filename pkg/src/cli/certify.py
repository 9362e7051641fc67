"""certify 子命令:SDP 取樣、擬合、精確驗證"""

import argparse
from typing import Dict, List, Tuple

from ..config import Settings
from ..core import known_certificate, known_names, parse_slack_spec
from ..services import CertificationRun, CertifierService
from ..services.codec import certificate_to_json, fitted_to_json
from .common import CommandOutput, UsageError, add_entropy_argument, float_list, known_point, positive_int, rational


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("certify", help="證明 Gram 矩陣在 α 區間上正定", parents=list(parents))
    add_entropy_argument(parser)
    parser.add_argument("--order", type=positive_int, default=3, help="導數階數 (預設: 3)")
    parser.add_argument("--alpha-grid", type=float_list, help="取樣 α,逗號分隔 (預設依階數)")
    parser.add_argument("--fit-degree", type=positive_int, default=4, help="擬合次數 (預設: 4)")
    parser.add_argument("--round-denom", type=positive_int, help="有理化分母 (預設: ROUND_DENOMINATOR)")
    parser.add_argument("--interval", type=rational, nargs=2, metavar=("L", "U"), help="α 區間")
    parser.add_argument("--slack-spec", default="default", help='鬆弛設定,"default"、"none" 或 d=1:4|1:2;...')
    parser.add_argument("--known", choices=known_names(), help="重播內建參數族,不求解 SDP")
    parser.add_argument("--closed", action="store_true", help="另外檢查閉區間端點的半正定性")
    parser.add_argument(
        "--known-point", type=known_point, action="append", default=[], metavar="NAME=ALPHA:VALUE",
        help="參數在某個 α 的已知值,可重複 (例如 g1,3=2:0)",
    )
    parser.add_argument("--exact-known", action="store_true", help="擬合曲線必須精確通過 --known-point")
    parser.set_defaults(handler=run)


def _render(run: CertificationRun) -> str:
    cert = run.certificate
    lo, hi = cert.interval
    lines = [f"區間 ({lo}, {hi}): {cert.verdict.value}"]
    if cert.certified_interval is not None and cert.certified_interval != cert.interval:
        a, b = cert.certified_interval
        lines.append(f"可證子區間: ({a}, {b})")
    for old, new in cert.perturbations:
        lines.append(f"端點 {old} 移至 {new}")
    for name, poly in run.params.params.items():
        lines.append(f"  {name} = {poly}")
    for i, evidence in enumerate(cert.minors, start=1):
        mark = "✓" if evidence.certified else "✗"
        lines.append(f"{mark} 第 {i} 主子式: 區間內 {evidence.roots_in_interval} 個根, 中點符號 {evidence.midpoint_sign:+d}")
    for i, evidence in enumerate(cert.slacks, start=1):
        mark = "✓" if evidence.certified else "✗"
        lines.append(f"{mark} 鬆弛 {i}: 區間內 {evidence.roots_in_interval} 個根")
    return "\n".join(lines)


def _known_points(entries) -> Dict[str, List[Tuple[float, float]]]:
    points: Dict[str, List[Tuple[float, float]]] = {}
    for name, alpha, value in entries:
        points.setdefault(name, []).append((alpha, value))
    return points


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    service = CertifierService(settings)

    kind, order = args.entropy, args.order
    if args.known:
        known = known_certificate(args.known)
        kind, order = known.kind.value, known.order
        if args.interval is None:
            result = service.certify_known(args.known, args.closed)
        else:
            problem = service.problem_for(known.kind, known.order)
            result = service.certify_fitted(problem, known.fitted(), tuple(args.interval), args.closed)
    else:
        if args.interval is None:
            raise UsageError("未指定 --known 時必須給 --interval L U")
        if args.interval[0] >= args.interval[1]:
            raise UsageError(f"--interval 需要 L < U: {args.interval[0]} {args.interval[1]}")
        if args.exact_known and not args.known_point:
            raise UsageError("--exact-known 需要至少一個 --known-point")
        grid = args.alpha_grid or (settings.K3_ALPHA_GRID if args.order <= 3 else settings.K4_ALPHA_GRID)
        result = service.run(
            args.entropy,
            args.order,
            grid,
            args.fit_degree,
            args.round_denom or settings.ROUND_DENOMINATOR,
            tuple(args.interval),
            slack_terms=parse_slack_spec(args.slack_spec),
            closed=args.closed,
            known_points=_known_points(args.known_point),
            exact_known=args.exact_known,
        )

    payload = {
        "entropy": kind,
        "order": order,
        "params": fitted_to_json(result.params),
        "certificate": certificate_to_json(result.certificate),
    }
    return CommandOutput(payload, _render(result), 0 if result.certificate.ok else 1)
