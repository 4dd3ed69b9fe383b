"""Random small spectral pages and the brute-force agreement check, shared by the test modules."""
from __future__ import annotations

import random

from prohecke.spectral import E2Page, enumerate_fillings, ss_propagate


def random_page(rng: random.Random) -> E2Page:
    nrows = rng.randint(1, 3)
    ncols = rng.randint(2, 4)
    base = rng.randint(0, 2)
    rows = tuple(range(base, base + nrows))
    # the vanishing above cd is left out so most pages stay consistent
    page = E2Page(cd=None, rows=rows)
    budget = 12
    for j in rows:
        for i in range(ncols):
            v = min(budget, rng.choice([0, 1, 1, 2, 2, 3]))
            budget -= v
            page.add("entry", (i, j), "=", v)
    fills = enumerate_fillings(page)
    _, witness = rng.choice(fills)
    for n in page.degrees():
        r = rng.random()
        if r < 0.4:
            # a constraint satisfied by one actual filling
            op = rng.choice(["=", ">=", "<="])
            page.add("abutment", (n,), op, witness[n])
        elif r < 0.5:
            page.add("abutment", (n,), rng.choice(["=", ">=", "<="]), rng.randint(0, 3))
    return page


def _hulls(fills, key):
    vals = {}
    for e, a in fills:
        for k, v in (e if key == "e" else a).items():
            vals.setdefault(k, set()).add(v)
    return {k: (min(v), max(v)) for k, v in vals.items()}


def check_against_brute_force(page: E2Page) -> None:
    fills = enumerate_fillings(page)
    res = ss_propagate(page, node_budget=100000)
    assert res.consistent == bool(fills)
    if not fills:
        return
    assert res.exhaustive
    R = max(2, max(page.rows) - min(page.rows) + 1)
    for n, (lo, hi) in _hulls(fills, "a").items():
        assert res.bounds[f"a[{n}]"] == (lo, hi), n
    for (i, j), (lo, hi) in _hulls(fills, "e").items():
        assert res.bounds[f"e{R + 1}[{i},{j}]"] == (lo, hi), (i, j)
