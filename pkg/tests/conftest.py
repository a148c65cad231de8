"""Shared one-line oracles, independent of the library internals."""

import pytest


def count_ones(sigma: str) -> int:
    return sigma.count("1")


def oracle_exact(k):
    return lambda s: 1 if s.count("1") == k else 0


def oracle_not_exact(k):
    return lambda s: 0 if s.count("1") == k else 1


def oracle_mod(p):
    return lambda s: 1 if s.count("1") % p == 0 else 0


def oracle_and(n):
    return lambda s: 1 if s == "1" * n else 0


def oracle_not_perm(m):
    def check(s):
        rows = [s[i * m:(i + 1) * m] for i in range(m)]
        ok = all(r.count("1") == 1 for r in rows) and all(
            "".join(r[j] for r in rows).count("1") == 1 for j in range(m)
        )
        return 0 if ok else 1

    return check


@pytest.fixture
def oracles():
    return {
        "exact": oracle_exact,
        "notexact": oracle_not_exact,
        "mod": oracle_mod,
        "and": oracle_and,
        "notperm": oracle_not_perm,
    }
