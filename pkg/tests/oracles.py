"""Independent check values.

Nothing here imports lobbysim: the game rules are restated on plain lists
so the simulator can be compared against a second, straight-line reading.
"""

import math


def play_by_hand(n, capital, altruists, n0, alpha, proposals):
    """Return (capitals, alive, per-step (accepted, yes, voters, ruined))."""
    caps = [float(capital)] * n
    alive = [True] * n
    log = []
    for inc in proposals:
        voters = [i for i in range(n) if alive[i]]
        screen = sorted(voters, key=lambda i: (caps[i], i))[:n0]
        screen_total = 0.0
        for i in screen:
            screen_total += inc[i]
        yes = 0
        for i in voters:
            if i < altruists:
                yes += screen_total > 0
            else:
                yes += inc[i] > 0
        accepted = yes > alpha * len(voters)
        ruined = []
        if accepted:
            for i in voters:
                caps[i] += inc[i]
            for i in voters:
                if caps[i] < 0:
                    alive[i] = False
                    ruined.append(i)
        log.append((accepted, yes, len(voters), tuple(ruined)))
    return caps, alive, log


def binomial_upper_tail(n, k, p=0.5):
    """P[Binomial(n, p) >= k], summed exactly over integers."""
    return sum(math.comb(n, j) * p**j * (1 - p) ** (n - j) for j in range(k, n + 1))
