import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import positive_roots
from tamecluster.quiver import builtin_quiver
from tamecluster.repcat import ClusterCategory
from tamecluster.subfactor import UncoveredCase, classify_subfactor, infer_rank, perp_inventory, tube_split_prediction
from tamecluster.tubes import Coray, Ray, TubeCoord, region_membership, rigid_coords

CATS = {name: ClusterCategory(builtin_quiver(name), rng=0) for name in ["A(2,1)", "A(3,2)", "A(4,1)", "D(4)", "D(5)"]}


def c(a, b, tube=1):
    return TubeCoord(tube, a, b)


def test_shifted_projective_deletion():
    cat = CATS["A(2,1)"]
    for i in range(1, 4):
        Z = cat.SP(i)
        inv = perp_inventory(cat, Z, 4)
        expected = [X for X in cat.enumerate_rigid(4) if X != Z and cat.ext1_dim_C(X, Z) == 0]
        assert inv == expected
        # P_i and its shift form an exchange pair, so P_i does not survive
        assert cat.P(i) not in inv


def test_rank_three_quasi_simple_excludes_neighbour():
    cat = CATS["A(4,1)"]
    ids = [X.coord for X in perp_inventory(cat, cat.R(1, 1, 1), 3) if X.is_regular]
    assert c(2, 1) not in ids


def test_prediction_rank_three():
    s = tube_split_prediction(c(1, 1), 3)
    assert s.wing == frozenset()
    excluded = [Coray(c(3, 1)), Ray(c(2, 1))]
    assert s.reduced == {x for x in rigid_coords(1, 3)
                         if x != c(1, 1) and not any(region_membership(x, r, 3) for r in excluded)}
    assert tube_split_prediction(c(1, 2), 3).wing == {c(1, 1), c(2, 1)}


@given(st.integers(3, 7), st.data())
def test_prediction_sizes(d, data):
    z = data.draw(st.sampled_from([x for x in rigid_coords(1, d) if x.b <= d - 2]))
    s = tube_split_prediction(z, d)
    t = z.b
    assert len(s.wing) == t * (t + 1) // 2 - 1
    assert len(s.reduced) == (d - t) * (d - t - 1)
    assert infer_rank(len(s.reduced)) == d - t
    assert not s.wing & s.reduced


def test_infer_rank():
    assert [infer_rank(k) for k in (0, 2, 6, 12, 5)] == [1, 2, 3, 4, None]


def test_a32_quasi_simple_deletion():
    cat = CATS["A(3,2)"]
    big = next(t for t in cat.tubes if t.rank == 3)
    rep = classify_subfactor(cat, cat.R(big.tube_id, 1, 1), 6)
    assert rep.status == "PASS"
    assert rep.observed_ranks == [2, 2] and rep.wing == []
    other = next(t for t in cat.tubes if t.rank == 2)
    assert {X.coord for X in rep.inventory if X.is_regular and X.coord.tube == other.tube_id} == \
        set(rigid_coords(other.tube_id, 2))


def test_wing_and_suspension_on_rank_four():
    cat = CATS["A(4,1)"]
    rep = classify_subfactor(cat, cat.R(1, 2, 2), 4)
    assert rep.status == "PASS"
    assert {(x.a, x.b) for x in rep.wing} == {(2, 1), (3, 1)}
    assert [((x.a, x.b), (y.a, y.b)) for x, y in rep.suspension] == [((2, 1), (3, 1))]


def test_uncovered_case():
    cat = CATS["D(4)"]
    with pytest.raises(UncoveredCase):
        classify_subfactor(cat, cat.R(1, 1, 1), 4)


def _almost_positive_count(B, removed):
    keep = [v for v in range(B.n) if v != removed]
    g = nx.Graph()
    g.add_nodes_from(keep)
    g.add_edges_from((i, j) for i in keep for j in keep if B.b[i][j])
    total = 0
    for comp in nx.connected_components(g):
        comp = sorted(comp)
        sym = [[2 if i == j else -abs(B.b[i][j]) for j in comp] for i in comp]
        total += len(positive_roots(sym)) + len(comp)
    return total


@pytest.mark.parametrize("name", sorted(CATS))
def test_transjective_deletion_gives_finite_type(name):
    cat = CATS[name]
    for i in range(1, cat.n + 1):
        rep = classify_subfactor(cat, cat.P(i), 5)
        assert rep.status == "PASS"
        assert len(rep.inventory) == _almost_positive_count(cat.B, i - 1)


def test_all_covered_deletions_pass():
    for cat in CATS.values():
        for Z in cat.regular_rigid():
            try:
                rep = classify_subfactor(cat, Z, 4)
            except UncoveredCase:
                assert Z.coord.b == cat.tube_rank(Z.coord.tube) - 1
                continue
            assert rep.status == "PASS", rep.violations
