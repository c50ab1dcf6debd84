"""Independent-route agreement checks shared by the CLI and the test suite.

Each check returns a list of violation records; an empty list means agreement.
"""

from __future__ import annotations

from .laurent import NotDivisible, denominator_vector
from .repcat import ClusterCategory, Regular
from .seeds import explore, format_word, root_seed
from .tilting import exchange_compatibility_check, exchange_steps
from .tubes import Coray, Ray, TubeCoord, Wing, region_membership, rigid_coords, tube_hom_dim_C, tube_hom_dim_mod


def tube_oracle(cat: ClusterCategory, max_length: int) -> tuple[int, list[dict]]:
    """Tube combinatorics against representation linear algebra, at mod and cluster level."""
    bad, count = [], 0
    for tube in cat.tubes:
        d = tube.rank
        coords = [TubeCoord(tube.tube_id, a, b) for a in range(1, d + 1) for b in range(1, max_length + 1)]
        for x in coords:
            X = cat.obj(Regular(x))
            for y in coords:
                Y = cat.obj(Regular(y))
                count += 1
                combi = (tube_hom_dim_mod(x, y, d), tube_hom_dim_C(x, y, d))
                linear = (cat.hom_mod(X, Y), cat.hom_dim_C(X, Y))
                if combi != linear:
                    bad.append({"x": X.label, "y": Y.label, "tube": list(combi), "linear": list(linear)})
    return count, bad


def hom_bound_near_mouth(cat: ClusterCategory) -> tuple[int, list[dict]]:
    """Hom_C((1,1), N) for rigid N on Ray(1,1) and Coray(tau^2 (1,1)): at most 2, equal to 2
    exactly at N = (1, d-1)."""
    bad, count = [], 0
    for tube in cat.tubes:
        d = tube.rank
        base = TubeCoord(tube.tube_id, 1, 1)
        regions = (Ray(base), Coray(base.shifted(2, d)))
        X = cat.R(tube.tube_id, 1, 1)
        for n in rigid_coords(tube.tube_id, d):
            if not any(region_membership(n, r, d) for r in regions):
                continue
            count += 1
            h = cat.hom_dim_C(X, cat.R(n.tube, n.a, n.b))
            top = (n.a, n.b) == (1, d - 1)
            if h > 2 or (h == 2) != top:
                bad.append({"tube": tube.tube_id, "n": n.to_dict(), "hom": h})
    return count, bad


def hom_from_top_rigid(cat: ClusterCategory) -> tuple[int, list[dict]]:
    """For N of quasi-length d-1: Hom_C(N, M) is 0 on Wing(tau N) and 2 elsewhere."""
    bad, count = [], 0
    for tube in cat.tubes:
        d = tube.rank
        for a in range(1, d + 1):
            n = TubeCoord(tube.tube_id, a, d - 1)
            N = cat.R(tube.tube_id, a, d - 1)
            wing = Wing(n.shifted(1, d))
            for m in rigid_coords(tube.tube_id, d):
                count += 1
                h = cat.hom_dim_C(N, cat.R(m.tube, m.a, m.b))
                want = 0 if region_membership(m, wing, d) else 2
                if h != want:
                    bad.append({"n": n.to_dict(), "m": m.to_dict(), "hom": h, "expected": want})
    return count, bad


def two_cy_symmetry(cat: ClusterCategory, window: int) -> tuple[int, list[dict]]:
    inv = cat.enumerate_rigid(window)
    bad, count = [], 0
    for i, X in enumerate(inv):
        for Y in inv[i:]:
            count += 1
            a, b = cat.ext1_dim_C(X, Y), cat.ext1_dim_C(Y, X)
            if a != b:
                bad.append({"x": X.label, "y": Y.label, "ext": [a, b]})
    return count, bad


def compatibility(cat: ClusterCategory, words, window: int, transjective_only: bool = True):
    """Exchange compatibility of every windowed rigid object against the certified exchange
    pairs met along ``words``; returns (pairs used, checks, violations)."""
    inv = cat.enumerate_rigid(window)
    seen, bad, count = set(), [], 0
    for word in words:
        for step in exchange_steps(cat, word, window):
            key = frozenset(X.position for X in step.pair)
            if key in seen or (transjective_only and not step.transjective):
                continue
            seen.add(key)
            for M in inv:
                count += 1
                if not exchange_compatibility_check(cat, step.pair, step.middle, M):
                    bad.append({"pair": [X.label for X in step.pair], "m": M.label,
                                "word": format_word(word)})
    return len(seen), count, bad


def laurent_nonnegativity(cat: ClusterCategory, depth: int) -> tuple[int, list[dict]]:
    """Every variable within ``depth`` of the initial seed is Laurent with a nonnegative
    denominator vector, initial variables excepted."""
    try:
        ex = explore(root_seed(cat.B), depth)
    except NotDivisible as e:
        return 0, [{"kind": "notLaurent", "detail": str(e)}]
    initial = set(root_seed(cat.B).cluster)
    bad = []
    for v in ex.variables:
        if v in initial:
            continue
        den = denominator_vector(v)
        if min(den) < 0:
            word, slot = ex.first_seen[v]
            bad.append({"word": format_word(word), "slot": slot + 1, "den": list(den)})
    return len(ex.variables), bad
