import pytest

from schedlab import completion_penalty


def enumerate_optimal(instance):
    """Plain recursive exhaustive search, no memoization.

    Deliberately independent of the package's oracle so the two can be
    checked against each other. Only for very small instances.
    """

    def go(clock, remaining):
        if not any(remaining):
            return 0
        active = [
            i
            for i in range(instance.n)
            if remaining[i] and instance.job(i).release <= clock
        ]
        if not active:
            nxt = min(instance.job(i).release for i in range(instance.n) if remaining[i])
            return go(nxt, remaining)
        best = None
        for i in active:
            child = remaining[:i] + (remaining[i] - 1,) + remaining[i + 1 :]
            cost = go(clock + 1, child)
            if child[i] == 0:
                cost += completion_penalty(instance.job(i), clock + 1, instance.x)
            if best is None or cost < best:
                best = cost
        return best

    return go(0, tuple(instance.job(i).work for i in range(instance.n)))


@pytest.fixture
def brute_optimal():
    return enumerate_optimal
