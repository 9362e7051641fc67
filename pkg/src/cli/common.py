"""子命令共用的參數解析與輸出結構"""

import argparse
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple

from ..models import EntropyKind, MixtureDensity


class UsageError(ValueError):
    """命令列參數彼此不相容 (結束碼 2)"""


@dataclass
class CommandOutput:
    """子命令結果:JSON 內容、文字呈現與結束碼"""

    payload: Dict[str, Any]
    text: str
    exit_code: int = 0


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是整數: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"必須 ≥ 1: {value}")
    return value


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是數字: {text!r}") from e
    if not value > 0:
        raise argparse.ArgumentTypeError(f"必須 > 0: {value}")
    return value


def rational(text: str) -> Fraction:
    """接受 "0.83"、"83/100" 或整數"""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"不是有理數: {text!r}") from e


def float_list(text: str) -> Tuple[float, ...]:
    """逗號分隔的浮點數"""
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"無法解析數列: {text!r}") from e
    if not values:
        raise argparse.ArgumentTypeError("數列不可為空")
    return values


def order_list(text: str) -> Tuple[int, ...]:
    """"1..9" 或 "1,3,5" """
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
            values = tuple(range(lo, hi + 1))
        else:
            values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"無法解析階數: {text!r}") from e
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"階數必須 ≥ 1: {text!r}")
    return values


def known_point(text: str) -> Tuple[str, float, float]:
    """"NAME=ALPHA:VALUE",例如 "g1,3=2:0";名稱可含逗號"""
    name, sep, rest = text.rpartition("=")
    alpha, colon, value = rest.partition(":")
    if not sep or not name or not colon:
        raise argparse.ArgumentTypeError(f"格式應為 NAME=ALPHA:VALUE: {text!r}")
    try:
        return name.strip(), float(alpha), float(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"無法解析已知值: {text!r}") from e


def factor_map(text: str) -> List[Tuple[int, int]]:
    """"1:2,2:1" → [(1, 2), (2, 1)]"""
    pairs = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        try:
            order, exponent = chunk.split(":")
            pairs.append((int(order), int(exponent)))
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"因子格式應為 階數:指數,收到 {chunk!r}") from e
    return pairs


def add_entropy_argument(parser: argparse.ArgumentParser, default: str = "renyi"):
    parser.add_argument(
        "--entropy",
        choices=[k.value for k in EntropyKind],
        default=default,
        help=f"熵的種類 (預設: {default})",
    )


def load_density(path: str) -> MixtureDensity:
    """
    讀取混合密度 JSON

    Raises:
        ValueError: 檔案內容不是合法的混合密度
        OSError: 檔案無法讀取
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{path} 不是合法的 JSON: {e}") from e
    return MixtureDensity.from_dict(data)
