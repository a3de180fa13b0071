# tests/test_game.py
import itertools

import numpy as np
import pytest

from honeygame.core.errors import DegenerateParametersError, UndefinedPosteriorError
from honeygame.game import (
    attacker_indifference_beta,
    best_response_attacker,
    best_response_defender,
    deployment_rhs,
    expected_attacker_utility,
    expected_defender_utility,
    payoff,
    posterior_type_given_signal,
    pure_deploy_condition,
    signal_deploy_gain,
)
from honeygame.models import (
    AttackerAction,
    AttackerType,
    DefenderAction,
    ResponseSet,
    Signal,
    SignalModel,
    StrategyProfile,
)

SEEDS = range(200)


def profile(beta, alpha_soph, alpha_naive) -> StrategyProfile:
    return StrategyProfile(beta=beta, alpha_soph=alpha_soph, alpha_naive=alpha_naive)


def branch_sum(p: StrategyProfile, params) -> float:
    """Defender utility summed over the eight (type, defender, attacker) branches."""
    total = 0.0
    for attacker_type, d, a in itertools.product(AttackerType, DefenderAction, AttackerAction):
        p_d = p.beta if d is DefenderAction.DEPLOY else 1.0 - p.beta
        alpha = p.alpha(attacker_type)
        p_a = alpha if a is AttackerAction.ATTACK else 1.0 - alpha
        total += params.prior(attacker_type) * p_d * p_a * payoff(attacker_type, d, a, params).defender
    return total


class TestPayoff:
    """Cells of the payoff table"""

    def test_deploy_attack_soph(self, params):
        """Detected sophisticated attack: B_d - C_h for the defender, -C_d for the attacker"""
        cell = payoff(AttackerType.SOPHISTICATED, DefenderAction.DEPLOY, AttackerAction.ATTACK, params)
        assert (cell.defender, cell.attacker) == (8.0, -15.0)

    def test_no_deploy_abstain_is_zero(self, params):
        cell = payoff(AttackerType.NAIVE, DefenderAction.NOT_DEPLOY, AttackerAction.ABSTAIN, params)
        assert (cell.defender, cell.attacker) == (0.0, 0.0)

    def test_unguarded_attack(self, params):
        cell = payoff(AttackerType.SOPHISTICATED, DefenderAction.NOT_DEPLOY, AttackerAction.ATTACK, params)
        assert (cell.defender, cell.attacker) == (-50.0, 10.0)

    def test_deploy_abstain_costs_honeypot(self, params):
        cell = payoff(AttackerType.NAIVE, DefenderAction.DEPLOY, AttackerAction.ABSTAIN, params)
        assert (cell.defender, cell.attacker) == (-2.0, 0.0)


class TestExpectedUtility:
    """Expected utilities of both players"""

    # ─────────────────────────────────────────────────────────
    # Defender
    # ─────────────────────────────────────────────────────────
    def test_deploy_against_abstention(self, params):
        assert expected_defender_utility(profile(1, 0, 0), params) == pytest.approx(-2.0)

    def test_no_deploy_all_attack(self, params):
        assert expected_defender_utility(profile(0, 1, 1), params) == pytest.approx(-38.0)

    def test_deploy_all_attack(self, params):
        assert expected_defender_utility(profile(1, 1, 1), params) == pytest.approx(6.8)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_matches_branch_expansion(self, seed, random_game):
        """Closed form equals the sum over all eight outcome branches"""
        params = random_game(seed)
        rng = np.random.default_rng(10_000 + seed)
        p = profile(*rng.uniform(0, 1, 3))
        assert expected_defender_utility(p, params) == pytest.approx(branch_sum(p, params), abs=1e-9)

    # ─────────────────────────────────────────────────────────
    # Attacker
    # ─────────────────────────────────────────────────────────
    @pytest.mark.parametrize("attacker_type", list(AttackerType))
    def test_abstain_is_zero(self, attacker_type, params):
        assert expected_attacker_utility(attacker_type, AttackerAction.ABSTAIN, 0.3, params) == 0.0

    def test_attack_without_honeypot(self, params):
        assert expected_attacker_utility(AttackerType.SOPHISTICATED, AttackerAction.ATTACK, 0.0, params) == 10.0

    def test_naive_attack_half_deploy(self, params):
        value = expected_attacker_utility(AttackerType.NAIVE, AttackerAction.ATTACK, 0.5, params)
        assert value == pytest.approx(2.5)


class TestDeployCondition:
    """The pure deployment condition and its value"""

    def test_configured_attack_rates(self, params):
        assert deployment_rhs(0.5, 0.9, params) == pytest.approx(32.52)
        assert pure_deploy_condition(0.5, 0.9, params) is True

    def test_no_attacks(self, params):
        assert pure_deploy_condition(0.0, 0.0, params) is False

    def test_expensive_honeypot(self, make_game):
        params = make_game(cost_honeypot=100.0)
        assert deployment_rhs(1.0, 1.0, params) == pytest.approx(46.8)
        assert pure_deploy_condition(1.0, 1.0, params) is False

    @pytest.mark.parametrize("seed", SEEDS)
    def test_equivalent_to_utility_comparison(self, seed, random_game):
        params = random_game(seed)
        a_s, a_n = np.random.default_rng(seed).uniform(0, 1, 2)
        deploy = expected_defender_utility(profile(1, a_s, a_n), params)
        hold = expected_defender_utility(profile(0, a_s, a_n), params)
        if abs(deploy - hold) > 1e-9:
            assert pure_deploy_condition(a_s, a_n, params) == (deploy > hold)


class TestIndifference:
    """Attacker indifference points"""

    def test_sophisticated(self, params):
        assert attacker_indifference_beta(AttackerType.SOPHISTICATED, params) == pytest.approx(0.4)

    def test_naive(self, params):
        assert attacker_indifference_beta(AttackerType.NAIVE, params) == pytest.approx(2 / 3)

    def test_zero_benefit(self, make_game):
        params = make_game(benefit_attacker_soph=0.0)
        assert attacker_indifference_beta(AttackerType.SOPHISTICATED, params) == 0.0

    def test_degenerate(self, make_game):
        params = make_game(benefit_attacker_naive=0.0, cost_detected_naive=0.0)
        with pytest.raises(DegenerateParametersError):
            attacker_indifference_beta(AttackerType.NAIVE, params)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_attack_utility_zero_at_threshold(self, seed, random_game):
        params = random_game(seed)
        for attacker_type in AttackerType:
            beta = attacker_indifference_beta(attacker_type, params)
            value = expected_attacker_utility(attacker_type, AttackerAction.ATTACK, beta, params)
            assert abs(value) <= 1e-12 * max(1.0, params.attacker_benefit(attacker_type))


class TestBestResponses:
    """Best-response sets"""

    def test_defender_deploys(self, params):
        assert best_response_defender(0.5, 0.9, params) == ResponseSet.point(1.0)

    def test_defender_holds(self, params):
        assert best_response_defender(0.0, 0.0, params) == ResponseSet.point(0.0)

    def test_defender_indifferent(self, params):
        response = best_response_defender(0.0, 2 / 22.8, params)
        assert response == ResponseSet.indifferent()
        assert response.value is None

    def test_attacker_unguarded(self, params):
        assert best_response_attacker(AttackerType.SOPHISTICATED, 0.0, params).value == 1.0

    def test_attacker_deterred(self, params):
        assert best_response_attacker(AttackerType.SOPHISTICATED, 2 / 3, params).value == 0.0

    def test_attacker_indifferent(self, params):
        response = best_response_attacker(AttackerType.NAIVE, 2 / 3, params)
        assert not response.is_pure
        assert response.contains(0.3)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_scale_covariance(self, seed, random_game):
        """Multiplying every utility by a positive factor keeps every best response"""
        params = random_game(seed)
        rng = np.random.default_rng(seed)
        factor = float(rng.uniform(0.1, 10.0))
        scaled = params.scaled(factor)
        a_s, a_n, beta = rng.uniform(0, 1, 3)
        assert best_response_defender(a_s, a_n, params) == best_response_defender(a_s, a_n, scaled)
        for attacker_type in AttackerType:
            assert best_response_attacker(attacker_type, beta, params) == best_response_attacker(
                attacker_type, beta, scaled
            )


class TestPosterior:
    """Type beliefs after an IDS signal"""

    @pytest.fixture
    def signal_model(self, ids_params) -> SignalModel:
        return ids_params.signal_model()

    def test_suspicious(self, signal_model):
        belief = posterior_type_given_signal(0.4, Signal.APPEARS_SUSPICIOUS, signal_model)
        assert belief == pytest.approx(0.24 / 0.78)

    def test_zero_prior(self, signal_model):
        assert posterior_type_given_signal(0.0, Signal.APPEARS_NORMAL, signal_model) == 0.0

    def test_uninformative_signal(self):
        model = SignalModel(p_suspicious_given_soph=0.3, p_suspicious_given_naive=0.3, p_suspicious_given_legit=0.1)
        assert posterior_type_given_signal(0.4, Signal.APPEARS_SUSPICIOUS, model) == pytest.approx(0.4)

    def test_impossible_signal(self):
        model = SignalModel(p_suspicious_given_soph=0.0, p_suspicious_given_naive=0.0, p_suspicious_given_legit=0.1)
        with pytest.raises(UndefinedPosteriorError):
            posterior_type_given_signal(0.4, Signal.APPEARS_SUSPICIOUS, model)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_bounded_and_monotone_in_prior(self, seed):
        rng = np.random.default_rng(seed)
        s, n = rng.uniform(0.01, 0.99, 2)
        model = SignalModel(p_suspicious_given_soph=s, p_suspicious_given_naive=n, p_suspicious_given_legit=0.05)
        low, high = sorted(rng.uniform(0, 1, 2))
        for signal in Signal:
            a = posterior_type_given_signal(low, signal, model)
            b = posterior_type_given_signal(high, signal, model)
            assert 0.0 <= a <= b <= 1.0

    def test_signal_deploy_gain_uses_posterior(self, params, signal_model):
        """Normal-looking traffic shifts belief toward the sophisticated type"""
        p = profile(2 / 3, 1.0, 1.0)
        suspicious = signal_deploy_gain(Signal.APPEARS_SUSPICIOUS, p, params, signal_model)
        normal = signal_deploy_gain(Signal.APPEARS_NORMAL, p, params, signal_model)
        # belief in S: 0.3077 after suspicious, 0.16/0.22 = 0.727 after normal
        assert normal > suspicious
        belief = 0.24 / 0.78
        expected = belief * 60 + (1 - belief) * 38 - 2
        assert suspicious == pytest.approx(expected)
