"""由擬合參數組裝精確的 Gram 多項式矩陣"""

import logging
from typing import Dict, List, Mapping, Union

from ..errors import UnresolvedParameter
from ..models import AlphaPoly, FittedParams, GramProblem, PolyMatrix, entry_name

logger = logging.getLogger(__name__)

ParamInput = Union[FittedParams, Mapping[str, AlphaPoly]]


def _as_mapping(params: ParamInput) -> Dict[str, AlphaPoly]:
    if isinstance(params, FittedParams):
        return dict(params.params)
    return dict(params)


def resolve_parameters(params: ParamInput, template: GramProblem) -> Dict[str, AlphaPoly]:
    """
    以符號方式求出所有未知數

    反覆尋找只剩一個未解未知數的方程並解出該未知數 (需能整除其係數),
    最後把全部未知數代回每一條方程做精確檢查。

    Raises:
        UnresolvedParameter: 有未知數無法決定、參數名稱不屬於問題,或方程無法精確成立
    """
    values = _as_mapping(params)
    unknowns = template.unknowns
    foreign = [name for name in values if name not in unknowns]
    if foreign:
        raise UnresolvedParameter(f"參數不屬於此問題: {', '.join(foreign)}")

    progress = True
    while progress:
        progress = False
        for constraint in template.constraints:
            pending = [name for name in constraint.unknowns if name not in values]
            if len(pending) != 1:
                continue
            name = pending[0]
            known = AlphaPoly.zero()
            for other, coeff in constraint.coefficients:
                if other != name:
                    known = known + coeff * values[other]
            try:
                values[name] = (constraint.rhs - known).exact_div(constraint.coefficient(name))
            except ValueError:
                continue
            progress = True

    missing = [name for name in unknowns if name not in values]
    if missing:
        raise UnresolvedParameter(f"無法決定的未知數: {', '.join(missing)}")

    for constraint in template.constraints:
        residual = constraint.residual(values)
        if not residual.is_zero:
            raise UnresolvedParameter(f"係數匹配方程 [{constraint.label()}] 不成立,殘差 {residual}")
    return {name: values[name] for name in unknowns}


def assemble_matrix(params: ParamInput, template: GramProblem) -> PolyMatrix:
    """
    組裝對稱 PolyMatrix

    Raises:
        UnresolvedParameter: 參見 resolve_parameters
    """
    values = resolve_parameters(params, template)
    n = template.size
    rows = [[values[entry_name(i, j)] for j in range(n)] for i in range(n)]
    logger.debug(f"組裝 {n}×{n} 多項式矩陣")
    return PolyMatrix.from_rows(rows)


def slack_polynomials(params: ParamInput, template: GramProblem) -> List[AlphaPoly]:
    """鬆弛係數的多項式,依 template.slack_terms 順序"""
    values = resolve_parameters(params, template)
    return [values[name] for name in template.slack_names]
