# tests/test_solver.py
import numpy as np
import pytest

from honeygame.core.config import settings
from honeygame.core.errors import ConfigError, DegenerateParametersError
from honeygame.models import AttackerType, EquilibriumKind, GameParameters, StrategyProfile
from honeygame.solver import enumerate_equilibria, exact_deviation_gains, verify_equilibrium

SEEDS = range(200)


def grid_gains(params: GameParameters, n: int = 51) -> tuple[np.ndarray, np.ndarray]:
    """Largest deviation gain at every point of an n^3 profile grid."""
    axis = np.linspace(0.0, 1.0, n)
    beta, a_s, a_n = np.meshgrid(axis, axis, axis, indexing="ij")
    p = params.prior_soph

    deploy = p * a_s * params.benefit_detect_soph + (1 - p) * a_n * params.benefit_detect_naive - params.cost_honeypot
    hold = -p * a_s * params.cost_attack_soph - (1 - p) * a_n * params.cost_attack_naive
    current = beta * deploy + (1 - beta) * hold
    gains = [np.maximum(deploy, hold) - current]

    for alpha, benefit, caught in (
        (a_s, params.benefit_attacker_soph, params.cost_detected_soph),
        (a_n, params.benefit_attacker_naive, params.cost_detected_naive),
    ):
        attack = beta * -caught + (1 - beta) * benefit
        gains.append(np.maximum(attack, 0.0) - alpha * attack)

    points = np.stack([beta.ravel(), a_s.ravel(), a_n.ravel()], axis=1)
    return points, np.max(np.stack(gains), axis=0).ravel()


def result_points(equilibria) -> np.ndarray:
    """Every point equilibrium plus a dense sample of every continuum."""
    points = []
    for equilibrium in equilibria:
        if equilibrium.continuum is None:
            points.append(equilibrium.profile.as_tuple())
        else:
            points.extend(p.as_tuple() for p in equilibrium.continuum.sample(201))
    return np.array(points)


def near_result(point: np.ndarray, found: np.ndarray, spacing: float) -> bool:
    return bool(np.any(np.max(np.abs(found - point), axis=1) <= spacing + 1e-12))


def knife_edge_game(seed: int, random_game) -> GameParameters:
    """
    Attacker thresholds on grid steps beta_S <= beta_N and C_h = w_N * k / 50,
    so indifference points of the game sit on the 51-point grid.
    """
    rng = np.random.default_rng(50_000 + seed)
    params = random_game(seed)
    i, j = sorted(int(x) for x in rng.integers(1, 50, 2))
    k = int(rng.integers(0, 51))
    params = params.model_copy(update={
        "benefit_attacker_soph": float(i), "cost_detected_soph": float(50 - i),
        "benefit_attacker_naive": float(j), "cost_detected_naive": float(50 - j),
    })
    return params.model_copy(update={"cost_honeypot": params.deploy_weight(AttackerType.NAIVE) * k / 50})


class TestEnumerateExamples:
    """Equilibria of hand-solved instances"""

    def test_canonical_partially_mixed(self, params):
        """beta = 2/3 deters the sophisticated type and keeps the naive type indifferent"""
        equilibria = enumerate_equilibria(params)

        assert len(equilibria) == 1
        eq = equilibria[0]
        assert eq.kind is EquilibriumKind.PARTIALLY_MIXED
        assert eq.profile.as_tuple() == pytest.approx((2 / 3, 0.0, 2 / 22.8), abs=1e-12)
        assert eq.max_deviation_gain <= settings.SOLVER_EPSILON

    def test_expensive_honeypot_is_pure(self, make_game):
        equilibria = enumerate_equilibria(make_game(cost_honeypot=100.0))

        assert len(equilibria) == 1
        assert equilibria[0].kind is EquilibriumKind.PURE
        assert equilibria[0].profile.as_tuple() == (0.0, 1.0, 1.0)

    def test_equal_thresholds_give_continuum(self, make_game):
        """Both types indifferent at beta = 0.5: the defender's indifference line"""
        params = make_game(
            benefit_attacker_soph=10.0, benefit_attacker_naive=10.0,
            cost_detected_soph=10.0, cost_detected_naive=10.0,
        )
        equilibria = enumerate_equilibria(params)

        assert len(equilibria) == 1
        record = equilibria[0].continuum
        assert equilibria[0].kind is EquilibriumKind.CONTINUUM
        assert record.beta == pytest.approx(0.5)
        assert record.relation == "eq"
        assert (record.coef_soph, record.coef_naive, record.rhs) == pytest.approx((24.0, 22.8, 2.0))
        assert record.vertices() == pytest.approx([(0.0, 2 / 22.8), (2 / 24, 0.0)])

        for point in record.sample(3):
            assert verify_equilibrium(point, params).certified

    def test_zero_attacker_benefit_gives_weak_continuum(self, make_game):
        """beta = 0 leaves the sophisticated type indifferent; deploying must stay unprofitable"""
        params = make_game(benefit_attacker_soph=0.0, cost_honeypot=30.0)
        equilibria = enumerate_equilibria(params)

        assert len(equilibria) == 1
        record = equilibria[0].continuum
        assert record.relation == "le"
        assert record.beta == 0.0
        assert record.vertices() == pytest.approx([(0.0, 1.0), (0.3, 1.0)])

    def test_free_honeypot_gives_beta_interval(self, make_game):
        """With C_h = 0 and nobody attacking, every beta deterring both types is an equilibrium"""
        params = make_game(cost_honeypot=0.0)
        equilibria = enumerate_equilibria(params)

        assert len(equilibria) == 1
        record = equilibria[0].continuum
        assert equilibria[0].kind is EquilibriumKind.CONTINUUM
        assert record.beta_bounds == pytest.approx((2 / 3, 1.0))
        assert (record.alpha_soph_bounds, record.alpha_naive_bounds) == ((0.0, 0.0), (0.0, 0.0))
        for beta in (0.7, 0.8, 0.9):
            assert record.covers(beta, 0.0, 0.0)
            assert verify_equilibrium(StrategyProfile(beta=beta, alpha_soph=0, alpha_naive=0), params).certified
        assert not record.covers(0.5, 0.0, 0.0)

    def test_naive_only_attack_interval(self, make_game):
        """C_h = w_N: naive attacks alone leave the defender indifferent for beta in [beta_S, beta_N]"""
        params = make_game(cost_honeypot=22.8)
        intervals = [e.continuum for e in enumerate_equilibria(params) if e.continuum is not None]

        assert len(intervals) == 1
        assert intervals[0].beta_bounds == pytest.approx((0.4, 2 / 3))
        assert intervals[0].vertices() == [(0.0, 1.0)]
        for point in intervals[0].sample(5):
            assert verify_equilibrium(point, params).certified

    def test_degenerate_attacker(self, make_game):
        params = make_game(benefit_attacker_soph=0.0, cost_detected_soph=0.0)
        with pytest.raises(DegenerateParametersError):
            enumerate_equilibria(params)

    def test_rejects_nonpositive_epsilon(self, params):
        with pytest.raises(ConfigError):
            enumerate_equilibria(params, epsilon=0.0)


class TestVerifyEquilibrium:
    """Grid-based deviation oracle"""

    def test_pure_profile_certified(self, make_game):
        report = verify_equilibrium(StrategyProfile(beta=0, alpha_soph=1, alpha_naive=1), make_game(cost_honeypot=100.0))
        assert report.max_deviation_gain == 0.0
        assert report.certified

    def test_caught_attacker_wants_to_abstain(self, params):
        report = verify_equilibrium(StrategyProfile(beta=1, alpha_soph=1, alpha_naive=1), params)
        assert report.sophisticated_gain == pytest.approx(15.0)
        assert not report.certified

    def test_all_zero_game(self):
        zero = GameParameters(**{key: 0.0 for key in GameParameters.model_fields})
        report = verify_equilibrium(StrategyProfile(beta=0.3, alpha_soph=0.2, alpha_naive=0.9), zero)
        assert report.max_deviation_gain == 0.0

    def test_grid_too_coarse(self, params):
        with pytest.raises(ConfigError):
            verify_equilibrium(StrategyProfile(beta=0, alpha_soph=0, alpha_naive=0), params, grid_resolution=100)

    def test_exact_gains_match_grid(self, params):
        p = StrategyProfile(beta=0.5, alpha_soph=0.25, alpha_naive=0.75)
        report = verify_equilibrium(p, params)
        exact = exact_deviation_gains(p, params)
        assert (report.defender_gain, report.sophisticated_gain, report.naive_gain) == pytest.approx(exact)


class TestSolverProperties:
    """Soundness, completeness and scale covariance"""

    @pytest.mark.parametrize("seed", SEEDS)
    def test_soundness(self, seed, random_game):
        """Every returned equilibrium survives the grid oracle"""
        params = random_game(seed)
        for equilibrium in enumerate_equilibria(params):
            points = [equilibrium.profile] if equilibrium.continuum is None else equilibrium.continuum.sample(3)
            for point in points:
                report = verify_equilibrium(point, params, grid_resolution=1001)
                assert report.max_deviation_gain <= settings.VERIFY_EPSILON

    @staticmethod
    def certified_points(params: GameParameters) -> np.ndarray:
        points, gains = grid_gains(params)
        return points[gains <= settings.SOLVER_EPSILON / 2]

    def assert_complete(self, params: GameParameters) -> np.ndarray:
        found = result_points(enumerate_equilibria(params))
        certified = self.certified_points(params)
        for point in certified:
            assert near_result(point, found, 1.0 / 50), f"missed equilibrium near {point}"
        return certified

    @pytest.mark.parametrize(
        "overrides",
        [
            # unique partially mixed equilibrium on grid point (0.5, 0, 0.1)
            {"cost_honeypot": 2.28, "benefit_attacker_naive": 1.0, "cost_detected_naive": 1.0},
            # continuum at beta = 0.5 crossing grid point (0.5, 0.1, 0)
            {
                "cost_honeypot": 2.4,
                "benefit_attacker_soph": 10.0, "cost_detected_soph": 10.0,
                "benefit_attacker_naive": 10.0, "cost_detected_naive": 10.0,
            },
            # free honeypot: nobody attacks for every beta >= 2/3
            {"cost_honeypot": 0.0},
            # C_h = w_N: only the naive type attacks for every beta in [0.4, 2/3]
            {"cost_honeypot": 22.8},
            {"cost_honeypot": 100.0},
            {},
        ],
    )
    def test_completeness_on_grid(self, overrides, make_game):
        """Every grid profile with no profitable deviation is near a returned equilibrium"""
        self.assert_complete(make_game(**overrides))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_completeness_random_games(self, seed, random_game):
        self.assert_complete(random_game(seed))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_completeness_knife_edge_games(self, seed, random_game):
        """Grid-aligned thresholds and honeypot cost always leave certified grid points to find"""
        certified = self.assert_complete(knife_edge_game(seed, random_game))
        assert len(certified) >= 1

    def test_completeness_finds_engineered_point(self, make_game):
        params = make_game(cost_honeypot=2.28, benefit_attacker_naive=1.0, cost_detected_naive=1.0)
        certified = self.certified_points(params)
        assert len(certified) == 1
        assert certified[0] == pytest.approx((0.5, 0.0, 0.1))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_scale_covariance(self, seed, random_game):
        params = random_game(seed)
        factor = float(np.random.default_rng(seed).uniform(0.1, 10.0))
        original = [e.profile.as_tuple() for e in enumerate_equilibria(params)]
        scaled = [e.profile.as_tuple() for e in enumerate_equilibria(params.scaled(factor))]
        assert len(original) == len(scaled)
        assert np.allclose(original, scaled, atol=1e-9)
