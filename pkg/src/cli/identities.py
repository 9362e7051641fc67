"""verify-identities 子命令"""

import argparse

from ..config import Settings
from ..core import verify_identities
from .common import CommandOutput


def add_parser(subparsers, parents=()):
    parser = subparsers.add_parser("verify-identities", help="以符號引擎重算所有化簡恆等式", parents=list(parents))
    parser.add_argument(
        "--raw-only", action="store_true", help="只檢查原始積分與未正規化時間導數,略過正規化動差的時間導數"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    checks = verify_identities(include_normalized=not args.raw_only)
    passed = sum(c.passed for c in checks)
    lines = [f"{'✓' if c.passed else '✗'} [{c.group}] {c.name}" for c in checks]
    lines.append(f"通過 {passed}/{len(checks)}")
    payload = {
        "passed": passed,
        "total": len(checks),
        "identities": [c.to_dict() for c in checks],
    }
    return CommandOutput(payload, "\n".join(lines), 0 if passed == len(checks) else 1)
