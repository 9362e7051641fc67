"""以數值積分交叉檢查符號推導、平方和分解與熵的性質"""

import math
from fractions import Fraction
from typing import Dict, Sequence

import numpy as np
import pytest
from scipy.integrate import quad

from src.config import Settings
from src.core import (
    assemble_matrix,
    build_gram_problem,
    concavity_closed_form,
    concavity_gram_problem,
    default_gram_basis,
    derivative_ratios,
    entropy_bounds,
    entropy_derivative,
    known_certificate,
    log_density,
    reduce_raw_integral,
    renyi2_closed_form,
    renyi3_case1_closed_form,
)
from src.models import EntropyKind, EvalPoint, MixtureDensity, MomentExpr, RawIntegral
from src.services import CertifierService, DerivativeEvaluator, MomentIntegrator, SignScanner, make_t_grid

SETTINGS = Settings()
THREE_PEAKS = MixtureDensity((0.2, 0.5, 0.3), (-1.5, 0.0, 2.0), (0.3, 0.05, 0.6))
SMOOTH = MixtureDensity((0.6, 0.4), (-0.5, 1.0), (0.25, 0.5))


@pytest.fixture(scope="module")
def integrator():
    return MomentIntegrator(SETTINGS)


@pytest.fixture(scope="module")
def evaluator():
    return DerivativeEvaluator(SETTINGS)


def tilted(d: MixtureDensity, factors: Dict[int, int], at: EvalPoint) -> float:
    """E_α[∏ p̄ₙ^{kₙ}],因子不必是標準形式"""
    if not factors:
        return 1.0
    orders = np.array(sorted(factors))
    exps = np.array([factors[n] for n in orders])
    top = int(orders.max())
    lo, hi = d.domain(at.t, SETTINGS.TRUNCATION_RADIUS)
    shift = float(np.max(at.alpha * log_density(d, np.asarray(d.centers), at.t)))
    points = sorted({c for c in d.centers if lo < c < hi}) or None

    def weight(x: float) -> float:
        return math.exp(at.alpha * float(log_density(d, x, at.t)[0]) - shift)

    def integrand(x: float) -> float:
        ratios = derivative_ratios(d, x, at.t, top)[:, 0]
        return weight(x) * float(np.prod(ratios[orders] ** exps))

    options = dict(epsabs=1e-14, epsrel=1e-12, limit=400, points=points)
    return quad(integrand, lo, hi, **options)[0] / quad(weight, lo, hi, **options)[0]


def evaluate_expr(expr: MomentExpr, d: MixtureDensity, at: EvalPoint, integrator: MomentIntegrator) -> float:
    cache: Dict = {}
    total = 0.0
    for term in expr:
        value = term.coefficient.evaluate_float(at.alpha)
        for symbol in term.symbols:
            if symbol not in cache:
                cache[symbol] = integrator.moment_eval(d, symbol, at)
            value *= cache[symbol]
        total += value
    return total


def quadratic_form(problem, gram: np.ndarray, d: MixtureDensity, at: EvalPoint, integrator) -> float:
    """E_α[zᵀAz],逐點因子直接數值積分,純量動差另外相乘"""
    total = 0.0
    basis = problem.basis
    for i, left in enumerate(basis):
        for j, right in enumerate(basis):
            if gram[i, j] == 0:
                continue
            counts: Dict[int, int] = {}
            for order, exp in left.pointwise + right.pointwise:
                counts[order] = counts.get(order, 0) + exp
            value = tilted(d, counts, at)
            for scalar in left.scalar_moments + right.scalar_moments:
                value *= integrator.moment_eval(d, scalar, at)
            total += gram[i, j] * value
    return total


def matched_value(problem, point, d: MixtureDensity, at: EvalPoint, integrator) -> float:
    """E_α[zᵀAz] + Σ cⱼ·slackⱼ"""
    total = quadratic_form(problem, point.gram, d, at, integrator)
    for slack in problem.slack_terms:
        total += point.slacks.get(slack.name, 0.0) * slack.sign * evaluate_expr(slack.expr, d, at, integrator)
    return total


def random_mixture(rng: np.random.Generator, size: int = 3) -> MixtureDensity:
    weights = rng.dirichlet(np.ones(size))
    weights[-1] = 1.0 - weights[:-1].sum()
    return MixtureDensity(
        tuple(weights), tuple(rng.uniform(-2.0, 2.0, size)), tuple(rng.uniform(0.0, 0.5, size))
    )


class TestValuePreservation:
    """測試分部積分化簡前後的數值相同"""

    @pytest.mark.parametrize(
        "factors",
        [
            {1: 2, 2: 1},
            {1: 1, 3: 1},
            {4: 1},
            {1: 4, 2: 1},
            {1: 3, 3: 1},
            {1: 1, 2: 1, 3: 1},
            {2: 1, 4: 1},
            {1: 2, 4: 1},
        ],
    )
    @pytest.mark.parametrize(
        "d, at",
        [
            (MixtureDensity.two_point(), EvalPoint(0.7, 0.5)),
            (THREE_PEAKS, EvalPoint(2.5, 0.4)),
            (SMOOTH, EvalPoint(1.3, 1.0)),
        ],
    )
    def test_reduction_matches_quadrature(self, integrator, factors, d, at):
        """測試 ∫p^{α+offset}∏pₙ^{kₙ} / Z 等於化簡結果"""
        reduced = reduce_raw_integral(RawIntegral.of(factors))
        expected = tilted(d, factors, at)
        assert evaluate_expr(reduced, d, at, integrator) == pytest.approx(expected, rel=1e-8, abs=1e-12)


class TestMatchingSoundness:
    """測試 Gram 分解在數值上重現目標"""

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.5])
    def test_renyi2(self, integrator, alpha):
        """測試 k=2 秩一分解"""
        problem = build_gram_problem(
            entropy_derivative(EntropyKind.RENYI, 2), default_gram_basis(2, EntropyKind.RENYI)
        )
        point = renyi2_closed_form(alpha, problem)
        for d in (MixtureDensity.two_point(), THREE_PEAKS):
            at = EvalPoint(alpha, 0.6)
            target = evaluate_expr(problem.target, d, at, integrator)
            assert matched_value(problem, point, d, at, integrator) == pytest.approx(target, rel=1e-6)

    @pytest.mark.parametrize("alpha", [0.45, 0.6])
    def test_renyi3_with_slacks(self, integrator, alpha):
        """測試 k=3 逐點分解加上鬆弛項"""
        problem = build_gram_problem(
            entropy_derivative(EntropyKind.RENYI, 3), default_gram_basis(3, EntropyKind.RENYI)
        )
        point = renyi3_case1_closed_form(alpha, problem=problem)
        at = EvalPoint(alpha, 0.8)
        for d in (SMOOTH, THREE_PEAKS):
            target = evaluate_expr(problem.target, d, at, integrator)
            assert matched_value(problem, point, d, at, integrator) == pytest.approx(target, rel=1e-6)

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.9])
    def test_concavity(self, integrator, alpha):
        """測試熵冪凹性的秩一分解"""
        problem = concavity_gram_problem(Fraction(1, 2))
        point = concavity_closed_form(alpha, problem)
        at = EvalPoint(alpha, 0.7)
        target = evaluate_expr(problem.target, SMOOTH, at, integrator)
        assert matched_value(problem, point, SMOOTH, at, integrator) == pytest.approx(target, rel=1e-6)


class TestSquaresNonnegative:
    """測試任意半正定 A 的 E_α[zᵀAz] ≥ 0"""

    @pytest.mark.parametrize("seed", range(6))
    def test_random_psd(self, integrator, seed):
        """測試隨機混合與隨機半正定矩陣"""
        rng = np.random.default_rng(seed)
        order = 2 + seed % 2
        problem = build_gram_problem(
            entropy_derivative(EntropyKind.RENYI, order), default_gram_basis(order, EntropyKind.RENYI)
        )
        b = rng.normal(size=(problem.size, problem.size - 1))
        gram = b @ b.T
        d = random_mixture(rng)
        at = EvalPoint(float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.2, 2.0)))
        assert quadratic_form(problem, gram, d, at, integrator) >= -1e-10


class TestCertifiedMatrices:
    """測試已證明區間內的矩陣與數值結果一致"""

    @pytest.mark.parametrize("name", ["renyi3-hat", "renyi3-tilde", "tsallis4-hat", "tsallis4-tilde"])
    def test_cholesky_inside_interval(self, name):
        """測試區間內隨機有理數 α 的數值 Cholesky 分解成功"""
        known = known_certificate(name)
        problem = build_gram_problem(
            entropy_derivative(known.kind, known.order), default_gram_basis(known.order, known.kind)
        )
        matrix = assemble_matrix(known.fitted(), problem)
        keep = [i for i in range(matrix.size) if i not in matrix.zero_rows()]
        matrix = matrix.submatrix(keep)
        lo, hi = known.interval
        rng = np.random.default_rng(len(name))
        for k in rng.integers(5, 93, size=8):
            alpha = lo + (hi - lo) * Fraction(int(k), 97)
            np.linalg.cholesky(matrix.evaluate_float(float(alpha)))

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name, alphas",
        [("renyi3-hat", (0.55, 0.7, 0.83)), ("tsallis4-hat", (1.7, 1.9))],
    )
    def test_no_violation_where_certified(self, name, alphas):
        """測試證明成立的區間內,掃描找不到違反"""
        service = CertifierService(SETTINGS)
        assert service.certify_known(name).certificate.ok
        known = known_certificate(name)
        scanner = SignScanner(SETTINGS)
        grid = make_t_grid(0.1, 10.0, 8, log_grid=True)
        for d in (MixtureDensity.two_point(), THREE_PEAKS):
            report = scanner.scan_signs(d, known.kind, [known.order], alphas, grid)
            assert report.violating_pairs == []


class TestEntropyPower:
    """測試 N_α^{1/2} 的凹性與其推論"""

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.9])
    def test_second_differences(self, evaluator, alpha):
        """測試 N_α^{1/2}(X_t) 的二階差分 ≤ 0"""
        step = 0.1
        for d in (MixtureDensity.two_point(), THREE_PEAKS):
            ts = np.arange(0.3, 2.3, step)
            values = [evaluator.entropy_power(d, alpha, float(t), beta=0.5) for t in ts]
            second = np.diff(values, 2)
            assert second.max() <= 1e-8

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.9])
    def test_concavity_eval_sign(self, evaluator, alpha):
        """測試 h'' + (h')² ≤ 0"""
        for t in (0.3, 1.0, 3.0):
            assert evaluator.concavity_eval(SMOOTH, alpha, t, 0.5) <= 1e-8

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.9])
    def test_interpolation_inequality(self, evaluator, alpha):
        """測試 e^{h(X+√tZ)} ≥ (1−t)e^{h(X)} + t·e^{h(X+Z)}"""
        # X 取 SMOOTH 在時間 0.2 的分布,X + √t Z 即時間 0.2 + t
        def power(t: float) -> float:
            return math.exp(evaluator.entropy_eval(SMOOTH, EntropyKind.RENYI, EvalPoint(alpha, 0.2 + t)))

        base, unit = power(0.0), power(1.0)
        for t in np.arange(0.1, 1.0, 0.1):
            assert power(float(t)) >= (1 - t) * base + t * unit - 1e-8


class TestAlphaStability:
    """測試 S_t^α = ∫p^α 對 t 遞減 (α > 1)"""

    @pytest.mark.parametrize("alpha", [1.5, 2.0, 4.0])
    def test_nonincreasing(self, evaluator, alpha):
        """測試等比格點上 S_t^α 不增"""
        grid = make_t_grid(0.05, 20.0, 25, log_grid=True)
        for d in (MixtureDensity.two_point(), THREE_PEAKS):
            values = [evaluator.alpha_stability(d, alpha, t) for t in grid]
            assert all(b <= a * (1 + 1e-10) for a, b in zip(values, values[1:]))


class TestBoundSandwich:
    """測試上下界在 (α, t, σ²) 格點上成立"""

    MIXTURES: Sequence[MixtureDensity] = (
        MixtureDensity.two_point(),
        THREE_PEAKS,
        SMOOTH,
    )

    @pytest.mark.parametrize("alpha", [0.5, 0.8, 1.5, 2.0, 4.0])
    @pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 3.0, 10.0])
    def test_sandwich(self, evaluator, alpha, t):
        """測試 lower ≤ h_α ≤ upper (容許 1e-8)"""
        for d in self.MIXTURES:
            h = evaluator.entropy_eval(d, EntropyKind.RENYI, EvalPoint(alpha, t))
            bounds = entropy_bounds(alpha, t, d.variance)
            assert bounds.lower <= h + 1e-8
            if bounds.upper is not None:
                assert h <= bounds.upper + 1e-8
