import numpy as np
import pytest
from hypothesis import given, strategies as st

from lobbysim.ballots import Decision, Tally, Vote, altruist_ballot, collect_ballots, decide, egoist_ballot
from lobbysim.model import AgentState, GameConfig, Proposal, Strategy


def pop(capitals, strategies, alive=None):
    alive = alive or [True] * len(capitals)
    return [AgentState(i, s, float(c), a) for i, (c, s, a) in enumerate(zip(capitals, strategies, alive))]


E, A = Strategy.EGOIST, Strategy.ALTRUIST


@pytest.mark.parametrize("inc, vote", [(3.2, Vote.YES), (-0.1, Vote.NO), (0.0, Vote.NO)])
def test_egoist_ballot(inc, vote):
    assert egoist_ballot(inc) is vote


def test_altruist_screen_of_two_poorest():
    population = pop([5, 1, 3], [A, A, A])
    assert altruist_ballot(population, Proposal([-10, 2, -1]), 2) is Vote.YES


def test_altruist_whole_society_loss_is_no():
    population = pop([40] * 4, [A] * 4)
    assert altruist_ballot(population, Proposal([1.0, -0.5, -1.0, 0.0]), 4) is Vote.NO


def test_altruist_zero_total_is_no():
    population = pop([1, 2], [A, E])
    assert altruist_ballot(population, Proposal([1.0, -1.0]), 2) is Vote.NO


def test_altruist_ignores_ruined_agents():
    # agent 0 is the poorest but ruined, so the screen is {1}
    population = pop([-5, 1, 3], [A, A, A], [False, True, True])
    assert altruist_ballot(population, Proposal([-100, 1, -1]), 1) is Vote.YES


def test_collect_mixed():
    # altruist 0 is richest; screen of 2 = {1, 2} with total +0.5
    population = pop([50, 1, 3], [A, E, E])
    tally = collect_ballots(population, Proposal([-7.0, 1.0, -0.5]), GameConfig(n=3, altruist_count=1, support_size=2))
    assert tally == Tally(yes_count=2, voters=3)


def test_collect_all_ruined():
    population = pop([-1, -2], [E, A], [False, False])
    assert collect_ballots(population, Proposal([1, 1]), GameConfig(n=2, altruist_count=1)) == Tally(0, 0)


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=10), st.data())
def test_all_altruist_votes_are_unanimous(incs, data):
    n = len(incs)
    caps = data.draw(st.lists(st.floats(0, 100), min_size=n, max_size=n))
    k = data.draw(st.integers(1, n))
    tally = collect_ballots(pop(caps, [A] * n), Proposal(incs), GameConfig(n=n, altruist_count=n, support_size=k))
    assert tally.yes_count in (0, tally.voters)


@pytest.mark.parametrize(
    "yes, voters, decision",
    [(51, 100, Decision.ACCEPTED), (50, 100, Decision.REJECTED), (1, 1, Decision.ACCEPTED), (0, 0, Decision.REJECTED)],
)
def test_decide(yes, voters, decision):
    assert decide(Tally(yes, voters), 0.5) is decision


def test_decide_rejects_with_no_voters_even_at_zero_threshold():
    assert decide(Tally(0, 0), 0.0) is Decision.REJECTED


def test_tally_validates():
    with pytest.raises(ValueError):
        Tally(3, 2)


@given(st.integers(0, 200), st.integers(0, 200), st.floats(0, 0.99))
def test_decide_monotone_in_yes(y, extra, alpha):
    voters = y + extra
    if decide(Tally(y, voters), alpha) is Decision.ACCEPTED:
        for y2 in range(y, voters + 1):
            assert decide(Tally(y2, voters), alpha) is Decision.ACCEPTED


@given(
    st.lists(st.tuples(st.floats(-30, 30), st.floats(0, 80), st.booleans()), min_size=1, max_size=10),
    st.floats(0.01, 1e3),
    st.data(),
)
def test_positive_scaling_changes_nothing(rows, scale, data):
    n = len(rows)
    a = data.draw(st.integers(0, n))
    k = data.draw(st.integers(1, n))
    strategies = [A] * a + [E] * (n - a)
    population = pop([c for _, c, _ in rows], strategies, [al for *_, al in rows])
    incs = np.array([i for i, _, _ in rows])
    cfg = GameConfig(n=n, altruist_count=a, support_size=k)
    t1 = collect_ballots(population, Proposal(incs), cfg)
    t2 = collect_ballots(population, Proposal(incs * scale), cfg)
    assert t1 == t2


def test_full_screen_all_altruist_equals_positive_sum_rule():
    rng = np.random.default_rng(2)
    n = 30
    cfg = GameConfig(n=n, altruist_count=n, support_size=n)
    caps = rng.uniform(-5, 60, size=n)
    population = pop(caps, [A] * n, list(caps >= 0))
    for _ in range(1000):
        inc = rng.normal(0, 12, size=n)
        decision = decide(collect_ballots(population, Proposal(inc), cfg), 0.5)
        total = inc[caps >= 0].sum()
        assert (decision is Decision.ACCEPTED) == (total > 0)
