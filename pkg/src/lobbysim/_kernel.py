"""Compiled game loop.

Mirrors ``dynamics.step`` rule for rule on flat arrays; the test suite
checks the two agree bit for bit.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def play(inc, initial_capital, altruist_count, support_size, accept_threshold, stop_when_extinct):
    steps, n = inc.shape
    capital = np.full(n, initial_capital)
    alive = np.ones(n, dtype=np.bool_)
    ruin_step = np.full(n, -1, dtype=np.int64)
    accepted = np.zeros(steps, dtype=np.bool_)
    yes_rec = np.zeros(steps, dtype=np.int64)
    voters_rec = np.zeros(steps, dtype=np.int64)
    alive_rec = np.zeros(steps, dtype=np.int64)

    voters = n
    altruists_alive = altruist_count
    keys = np.empty(n)
    ids = np.empty(n, dtype=np.int64)

    for t in range(steps):
        if voters == 0:
            if stop_when_extinct:
                break
            continue
        row = inc[t]
        yes = 0
        for i in range(altruist_count, n):
            if alive[i] and row[i] > 0:
                yes += 1
        if altruists_alive > 0:
            m = 0
            for i in range(n):
                if alive[i]:
                    keys[m] = capital[i]
                    ids[m] = i
                    m += 1
            # stable sort: equal capitals stay in id order
            order = np.argsort(keys[:m], kind="mergesort")
            k = min(support_size, m)
            total = 0.0
            for j in range(k):
                total += row[ids[order[j]]]
            if total > 0:
                yes += altruists_alive
        yes_rec[t] = yes
        voters_rec[t] = voters
        if yes > accept_threshold * voters:
            accepted[t] = True
            for i in range(n):
                if alive[i]:
                    capital[i] += row[i]
            for i in range(n):
                if alive[i] and capital[i] < 0:
                    alive[i] = False
                    ruin_step[i] = t
                    voters -= 1
                    if i < altruist_count:
                        altruists_alive -= 1
        alive_rec[t] = voters

    return capital, alive, ruin_step, accepted, yes_rec, voters_rec, alive_rec
