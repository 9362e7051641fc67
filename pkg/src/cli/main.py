"""命令列入口:解析參數、分派子命令、輸出結果"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ..config import Settings
from ..errors import EntropyFlowError
from ..services.codec import dumps
from ..utils import setup_logging
from . import bounds, certify, derive, identities, reduce, scan, tsallis2
from .common import CommandOutput, UsageError, positive_int

logger = logging.getLogger(__name__)

SUBCOMMANDS = (derive, reduce, certify, identities, scan, bounds, tsallis2)


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool):
    """全域選項;子命令上的同名選項預設 SUPPRESS,只有實際給出時才覆寫"""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=("text", "json"), default=default("text"), help="輸出格式 (預設: text)")
    parser.add_argument("--output", default=default(None), help="輸出檔案 (預設: stdout)")
    parser.add_argument("--seed", type=int, default=default(0), help="亂數種子 (預設: 0)")
    parser.add_argument(
        "--jobs", type=positive_int, default=default(None), help="平行工作數 (預設: ENTROPYFLOW_JOBS 或 CPU 數)"
    )
    parser.add_argument("--config", default=default(None), help="Python 設定檔,覆寫 Settings 欄位")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument(
        "-v", "--verbose", dest="log_level", action="store_const", const=logging.DEBUG,
        default=default(logging.INFO), help="顯示 DEBUG 等級日誌",
    )
    verbosity.add_argument(
        "-q", "--quiet", dest="log_level", action="store_const", const=logging.WARNING,
        default=default(logging.INFO), help="只顯示警告與錯誤",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropyflow",
        description="熱流下 Rényi / Tsallis 熵導數的符號推導、正定性證明與數值檢驗",
    )
    _add_global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for module in SUBCOMMANDS:
        module.add_parser(subparsers, parents=[common])
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = Settings.from_file(args.config) if args.config else Settings()
    if args.jobs:
        settings.JOBS = args.jobs
    return settings


def _emit(output: CommandOutput, fmt: str, path: Optional[str]):
    text = dumps(output.payload) if fmt == "json" else output.text
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
        logger.info(f"✓ 已寫入: {path}")
    else:
        sys.stdout.write(text + "\n")


def _error(error: BaseException) -> str:
    return json.dumps({"error": type(error).__name__, "message": str(error)}, ensure_ascii=False, sort_keys=True)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    執行一個子命令

    Returns:
        int: 0 成功;1 領域錯誤或檢查未通過;2 用法錯誤
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = _settings(args)
    setup_logging(args.log_level, log_file=settings.LOG_FILE)
    np.random.seed(args.seed)

    try:
        output = args.handler(args, settings)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return 2
    except (EntropyFlowError, ValueError, KeyError, OSError) as e:
        logger.debug(f"✗ {args.command} 失敗: {e}")
        sys.stderr.write(_error(e) + "\n")
        return 1

    try:
        _emit(output, args.format, args.output)
    except OSError as e:
        sys.stderr.write(_error(e) + "\n")
        return 1
    return output.exit_code


def main():
    sys.exit(dispatch())
