"""Rigid objects surviving in the subfactor ⊥(ΣZ)/add Z, and their predicted shape."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .repcat import ClusterCategory, IndRigidObject
from .tubes import Coray, Ray, TubeCoord, Wing, norm, region_membership, rigid_coords


class UncoveredCase(Exception):
    """Z has quasi-length one less than the rank of its tube; no prediction is made."""


def perp_inventory(cat: ClusterCategory, Z: IndRigidObject, window: int) -> list[IndRigidObject]:
    """Windowed rigid objects X != Z with Hom_C(X, ΣZ) = 0."""
    SZ = cat.shift(Z)
    return [X for X in cat.enumerate_rigid(window) if X != Z and cat.hom_dim_C(X, SZ) == 0]


@dataclass(frozen=True)
class TubeSplit:
    z: TubeCoord
    rank: int
    wing: frozenset[TubeCoord]
    reduced: frozenset[TubeCoord]

    @property
    def reduced_rank(self) -> int:
        return self.rank - self.z.b

    def reduced_length(self, x: TubeCoord) -> int:
        """Quasi-length of x inside the reduced tube."""
        return x.b - self.z.b if region_membership(self.z, Wing(x), self.rank) else x.b

    def suspension_pairs(self) -> list[tuple[TubeCoord, TubeCoord]]:
        """Predicted suspension of the subfactor on the wing, on the wing's left edge."""
        t, a0 = self.z.b, self.z.a
        return [(TubeCoord(self.z.tube, a0, i), TubeCoord(self.z.tube, norm(a0 + i, self.rank), t - i))
                for i in range(1, t)]


def tube_split_prediction(z: TubeCoord, d: int) -> TubeSplit:
    """Rigid coordinates of z's tube predicted to survive, split into the wing part and the
    part forming a tube of rank d - q.l.(z).  Neither set contains z."""
    t = z.b
    if not 1 <= t <= d - 1:
        raise ValueError(f"{z} is not rigid in a tube of rank {d}")
    rot = z.a - 1
    excluded = [Coray(TubeCoord(z.tube, norm(c + rot, d), 1)) for c in [d, *range(1, t)]]
    excluded += [Ray(TubeCoord(z.tube, norm(c + rot, d), 1)) for c in range(2, t + 2)]
    z = z.normalized(d)
    wing, reduced = set(), set()
    for x in rigid_coords(z.tube, d):
        if x == z:
            continue
        if region_membership(x, Wing(z), d):
            wing.add(x)
        elif not any(region_membership(x, r, d) for r in excluded):
            reduced.add(x)
    return TubeSplit(z, d, frozenset(wing), frozenset(reduced))


def infer_rank(count: int) -> int | None:
    """r with r(r-1) = count, r >= 1."""
    r = 1
    while r * (r - 1) < count:
        r += 1
    return r if r * (r - 1) == count else None


@dataclass
class SubfactorReport:
    deleted: IndRigidObject
    window: int
    inventory: list[IndRigidObject]
    checks: list[dict] = field(default_factory=list)
    predicted_ranks: list[int] | None = None
    observed_ranks: list[int] | None = None
    wing: list[TubeCoord] = field(default_factory=list)
    suspension: list[tuple[TubeCoord, TubeCoord]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if all(c["ok"] for c in self.checks) else "FAIL"

    @property
    def violations(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    def check(self, name: str, ok: bool, **detail):
        self.checks.append({"check": name, "ok": bool(ok), **detail})

    def to_dict(self) -> dict:
        return {
            "deleted": self.deleted.label,
            "window": self.window,
            "status": self.status,
            "inventorySize": len(self.inventory),
            "predictedRanks": self.predicted_ranks,
            "observedRanks": self.observed_ranks,
            "wing": [c.to_dict() for c in self.wing],
            "suspension": [[x.to_dict(), y.to_dict()] for x, y in self.suspension],
            "checks": self.checks,
        }


def _labels(coords, cat: ClusterCategory) -> list[str]:
    return sorted(cat.R(c.tube, c.a, c.b).label for c in coords)


def classify_subfactor(cat: ClusterCategory, Z: IndRigidObject, window: int) -> SubfactorReport:
    if Z.is_transjective or cat.is_finite:
        return _classify_transjective(cat, Z, window)
    d = cat.tube_rank(Z.coord.tube)
    if Z.coord.b == d - 1:
        raise UncoveredCase(f"{Z.label} has quasi-length {d - 1} in a tube of rank {d}")
    split = tube_split_prediction(Z.coord, d)
    inv = perp_inventory(cat, Z, window)
    rep = SubfactorReport(Z, window, inv, wing=sorted(split.wing), suspension=split.suspension_pairs())

    by_tube: dict[int, set[TubeCoord]] = {}
    for X in inv:
        if X.is_regular:
            by_tube.setdefault(X.coord.tube, set()).add(X.coord)
    home = by_tube.get(Z.coord.tube, set())
    rep.check("tubeSurvivors", home == split.wing | split.reduced,
              missing=_labels((split.wing | split.reduced) - home, cat),
              unexpected=_labels(home - split.wing - split.reduced, cat))
    for tube in cat.tubes:
        if tube.tube_id == Z.coord.tube:
            continue
        full = set(rigid_coords(tube.tube_id, tube.rank))
        got = by_tube.get(tube.tube_id, set())
        rep.check("otherTubeIntact", got == full, tube=tube.tube_id, missing=_labels(full - got, cat))

    t, r = Z.coord.b, split.reduced_rank
    levels = Counter(split.reduced_length(x) for x in home & split.reduced)
    rep.check("reducedTubeShape", levels == Counter({q: r for q in range(1, r)}),
              rank=r, levels={str(k): v for k, v in sorted(levels.items())})
    wing_count = len(home & split.wing)
    rep.check("wingCount", wing_count == t * (t + 1) // 2 - 1, observed=wing_count)
    rep.check("suspensionInWing", all(x in split.wing and y in split.wing for x, y in rep.suspension))

    predicted = sorted(x for x in [*(tb.rank for tb in cat.tubes if tb.tube_id != Z.coord.tube), r] if x > 1)
    observed = []
    for tube in cat.tubes:
        got = by_tube.get(tube.tube_id, set())
        if tube.tube_id == Z.coord.tube:
            got = got - split.wing
        inferred = infer_rank(len(got))
        if inferred is None:
            observed.append(-len(got))
        elif inferred > 1:
            observed.append(inferred)
    rep.predicted_ranks, rep.observed_ranks = predicted, sorted(observed)
    rep.check("rankPattern", predicted == sorted(observed), predicted=predicted, observed=sorted(observed))
    return rep


def _classify_transjective(cat: ClusterCategory, Z: IndRigidObject, window: int) -> SubfactorReport:
    inv = perp_inventory(cat, Z, window)
    wide = inv if cat.is_finite else perp_inventory(cat, Z, 2 * window)
    rep = SubfactorReport(Z, window, inv)
    rep.check("finiteInventoryStable", len(inv) == len(wide), atWindow=len(inv), atDoubleWindow=len(wide))
    rep.predicted_ranks = rep.observed_ranks = []
    return rep
