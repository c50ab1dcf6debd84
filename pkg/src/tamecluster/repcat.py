"""Indecomposable rigid objects of the cluster category of an acyclic quiver.

Objects are identified by their position in the Auslander-Reiten quiver:
``tau^{-m} P_i``, ``tau^m I_i``, a tube coordinate, or a shifted projective.
Representations are built lazily by iterating the translates, so the
suspension acts combinatorially on positions while Hom dimensions are always
computed from explicit representations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Union

from flint import fmpq_mat

from .quiver import AffineProfile, ExchangeMatrix, NotExtendedDynkin, affine_profile, is_dynkin
from .representations import (
    InternalInvariantError,
    PathQuiver,
    Representation,
    hom_dim_mod,
    injective,
    is_brick_rigid,
    nonsplit_extension,
    projective,
    random_representation,
    tau,
    tau_inv,
)
from .tubes import TubeCoord, norm


class TubeConstructionError(InternalInvariantError):
    pass


# ------------------------------------------------------------------ positions

@dataclass(frozen=True)
class Preprojective:
    """tau^{-power} P_vertex (vertex 1-based)."""

    vertex: int
    power: int = 0


@dataclass(frozen=True)
class Preinjective:
    """tau^{power} I_vertex (vertex 1-based)."""

    vertex: int
    power: int = 0


@dataclass(frozen=True)
class ShiftedProjective:
    vertex: int


@dataclass(frozen=True)
class Regular:
    coord: TubeCoord


Position = Union[Preprojective, Preinjective, ShiftedProjective, Regular]


def describe(pos: Position) -> str:
    if isinstance(pos, ShiftedProjective):
        return f"shift(P{pos.vertex})"
    if isinstance(pos, Preprojective):
        return f"P{pos.vertex}" if pos.power == 0 else f"tau^-{pos.power}(P{pos.vertex})"
    if isinstance(pos, Preinjective):
        return f"I{pos.vertex}" if pos.power == 0 else f"tau^{pos.power}(I{pos.vertex})"
    c = pos.coord
    return f"T{c.tube}({c.a},{c.b})"


def position_dict(pos: Position) -> dict:
    if isinstance(pos, ShiftedProjective):
        return {"kind": "shiftedProjective", "vertex": pos.vertex}
    if isinstance(pos, Preprojective):
        return {"kind": "preprojective", "vertex": pos.vertex, "power": pos.power}
    if isinstance(pos, Preinjective):
        return {"kind": "preinjective", "vertex": pos.vertex, "power": pos.power}
    return {"kind": "regular", **pos.coord.to_dict()}


@dataclass(frozen=True)
class IndRigidObject:
    """An indecomposable object; equality and hashing use the position only."""

    position: Position
    rep: Representation | None = field(default=None, compare=False, repr=False)

    @property
    def is_module(self) -> bool:
        return not isinstance(self.position, ShiftedProjective)

    @property
    def variant(self) -> str:
        return "Module" if self.is_module else "ShiftedProjective"

    @property
    def is_regular(self) -> bool:
        return isinstance(self.position, Regular)

    @property
    def is_transjective(self) -> bool:
        return not self.is_regular

    @property
    def coord(self) -> TubeCoord | None:
        return self.position.coord if self.is_regular else None

    @property
    def dims(self) -> tuple[int, ...] | None:
        return self.rep.dims if self.rep is not None else None

    @property
    def label(self) -> str:
        return describe(self.position)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "position": position_dict(self.position),
            "dims": list(self.dims) if self.dims is not None else None,
        }

    def __str__(self) -> str:
        return self.label


# ---------------------------------------------------------------------- tubes

@dataclass
class TubeModel:
    tube_id: int
    rank: int
    quasi_simples: list[Representation]
    _cache: dict = field(default_factory=dict, repr=False)

    def rep(self, a: int, b: int) -> Representation:
        """Object (a, b): socle R_a, quasi-length b, built along the ray from R_a."""
        a = norm(a, self.rank)
        key = (a, b)
        if key not in self._cache:
            if b == 1:
                self._cache[key] = self.quasi_simples[a - 1]
            else:
                top = self.quasi_simples[norm(a + b - 1, self.rank) - 1]
                below = self.rep(a, b - 1)
                E = nonsplit_extension(top, below)
                if b <= self.rank - 1 and not is_brick_rigid(E):
                    raise TubeConstructionError(f"extension at ({a},{b}) is not exceptional")
                self._cache[key] = E
        return self._cache[key]


def regular_real_roots(q: PathQuiver, profile: AffineProfile) -> list[tuple[int, ...]]:
    """Positive real roots x < delta with defect zero."""
    delta = profile.delta
    out = []
    for x in itertools.product(*(range(d + 1) for d in delta)):
        if x == delta or not any(x):
            continue
        if profile.defect(x) == 0 and q.euler(x, x) == 1:
            out.append(x)
    return out


def _apply(m: fmpq_mat, x) -> tuple[int, ...]:
    n = len(x)
    out = []
    for i in range(n):
        v = sum(m[i, j] * x[j] for j in range(n))
        if v.q != 1:
            raise InternalInvariantError("Coxeter image is not integral")
        out.append(int(v.p))
    return tuple(out)


def build_tubes(q: PathQuiver, profile: AffineProfile | None, rng: random.Random,
                retries: int = 25) -> list[TubeModel]:
    if profile is None:
        raise TubeConstructionError("Dynkin quivers have no tubes")
    roots = regular_real_roots(q, profile)
    rootset = set(roots)
    inv = q.coxeter.inv()
    # tau-orbits of regular roots below delta; quasi-length b orbits sum to b*delta
    orbits, seen = [], set()
    for x in roots:
        if x in seen:
            continue
        orbit = [x]
        while True:
            nxt = _apply(inv, orbit[-1])
            if nxt == x:
                break
            if nxt not in rootset or len(orbit) > len(roots):
                raise TubeConstructionError(f"orbit of {x} leaves the regular roots below delta")
            orbit.append(nxt)
        seen.update(orbit)
        if tuple(map(sum, zip(*orbit))) == profile.delta:
            orbits.append(orbit)
    if sum(len(o) * (len(o) - 1) for o in orbits) != len(roots):
        raise TubeConstructionError("regular roots are not accounted for by the quasi-simple orbits")
    for orbit in orbits:
        start = min(orbit)
        k = orbit.index(start)
        orbit[:] = orbit[k:] + orbit[:k]
    if sorted(len(o) for o in orbits) != sorted(profile.ranks):
        raise TubeConstructionError(
            f"tube ranks {sorted(len(o) for o in orbits)} differ from expected {sorted(profile.ranks)}")
    orbits.sort(key=lambda o: (-len(o), o[0]))
    tubes = []
    for tid, orbit in enumerate(orbits, start=1):
        first = None
        for _ in range(retries):
            cand = random_representation(q, orbit[0], rng)
            if is_brick_rigid(cand):
                first = cand
                break
        if first is None:
            raise TubeConstructionError(f"no exceptional representation found for {orbit[0]}")
        qs = [first]
        for expected in orbit[1:]:
            nxt = tau_inv(qs[-1])
            if nxt is None or nxt.dims != expected or not is_brick_rigid(nxt):
                raise TubeConstructionError(f"translate of quasi-simple does not match {expected}")
            qs.append(nxt)
        back = tau_inv(qs[-1])
        if back is None or back.dims != qs[0].dims:
            raise TubeConstructionError("quasi-simples do not close up under tau")
        tubes.append(TubeModel(tid, len(orbit), qs))
    return tubes


# ------------------------------------------------------------ cluster category

class WindowError(ValueError):
    pass


class ClusterCategory:
    """Cluster category of an acyclic Dynkin or extended Dynkin quiver."""

    def __init__(self, B: ExchangeMatrix, rng: random.Random | int | None = 0):
        self.B = B
        self.n = B.n
        self.quiver = PathQuiver.from_matrix(B)
        self.rng = rng if isinstance(rng, random.Random) else random.Random(rng)
        try:
            self.profile: AffineProfile | None = affine_profile(B)
        except NotExtendedDynkin:
            if not is_dynkin(B):
                raise
            self.profile = None
        self._reps: dict[Position, Representation] = {}
        self._homs: dict[tuple, int] = {}
        self._homs_C: dict[tuple, int] = {}
        self._injective_at: dict[Position, int] = {}
        self._injective_pos: dict[int, Position] = {}
        self.memo: dict = {}
        if self.profile is None:
            self.tubes: list[TubeModel] = []
            self._build_finite()
        else:
            self.tubes = build_tubes(self.quiver, self.profile, self.rng)

    @property
    def is_finite(self) -> bool:
        return self.profile is None

    def tube_rank(self, tube_id: int) -> int:
        return self.tubes[tube_id - 1].rank

    # -- finite type: every module is preprojective; record where injectives sit
    def _build_finite(self):
        inj_dims = {injective(self.quiver, j).dims: j + 1 for j in range(self.n)}
        self._last_power = {}
        for i in range(1, self.n + 1):
            m = 0
            rep = projective(self.quiver, i - 1)
            while True:
                pos = Preprojective(i, m)
                self._reps[pos] = rep
                nxt = tau_inv(rep)
                if nxt is None:
                    j = inj_dims[rep.dims]
                    self._injective_at[pos] = j
                    self._injective_pos[j] = pos
                    self._last_power[i] = m
                    break
                rep, m = nxt, m + 1

    def canonical(self, pos: Position) -> Position:
        if self.is_finite and isinstance(pos, Preinjective):
            p = self._injective_pos[pos.vertex]
            for _ in range(pos.power):
                p = self._tau_position(p)
            return p
        if isinstance(pos, Regular):
            d = self.tube_rank(pos.coord.tube)
            return Regular(pos.coord.normalized(d))
        return pos

    def _tau_position(self, p: Preprojective) -> Preprojective:
        if p.power == 0:
            raise WindowError("tau of a projective")
        return Preprojective(p.vertex, p.power - 1)

    # -- representations
    def rep(self, pos: Position) -> Representation:
        pos = self.canonical(pos)
        if isinstance(pos, ShiftedProjective):
            raise ValueError("shifted projectives are not modules")
        cached = self._reps.get(pos)
        if cached is not None:
            return cached
        if isinstance(pos, Regular):
            c = pos.coord
            rep = self.tubes[c.tube - 1].rep(c.a, c.b)
        elif isinstance(pos, Preprojective):
            if self.is_finite:
                raise WindowError(f"{describe(pos)} does not exist")
            if pos.power == 0:
                rep = projective(self.quiver, pos.vertex - 1)
            else:
                rep = tau_inv(self.rep(Preprojective(pos.vertex, pos.power - 1)))
        else:
            if pos.power == 0:
                rep = injective(self.quiver, pos.vertex - 1)
            else:
                rep = tau(self.rep(Preinjective(pos.vertex, pos.power - 1)))
        if rep is None:
            raise InternalInvariantError(f"translate vanished while building {describe(pos)}")
        self._reps[pos] = rep
        return rep

    def obj(self, pos: Position) -> IndRigidObject:
        pos = self.canonical(pos)
        if isinstance(pos, ShiftedProjective):
            if not 1 <= pos.vertex <= self.n:
                raise ValueError(f"vertex {pos.vertex} out of range")
            return IndRigidObject(pos)
        return IndRigidObject(pos, self.rep(pos))

    def P(self, i: int, m: int = 0) -> IndRigidObject:
        return self.obj(Preprojective(i, m))

    def I(self, i: int, m: int = 0) -> IndRigidObject:
        return self.obj(Preinjective(i, m))

    def SP(self, i: int) -> IndRigidObject:
        return self.obj(ShiftedProjective(i))

    def R(self, tube: int, a: int, b: int) -> IndRigidObject:
        return self.obj(Regular(TubeCoord(tube, a, b)))

    # -- suspension
    def shift_position(self, pos: Position) -> Position:
        pos = self.canonical(pos)
        if isinstance(pos, Preprojective):
            if pos.power == 0:
                return ShiftedProjective(pos.vertex)
            return Preprojective(pos.vertex, pos.power - 1)
        if isinstance(pos, ShiftedProjective):
            return self.canonical(Preinjective(pos.vertex, 0))
        if isinstance(pos, Preinjective):
            return Preinjective(pos.vertex, pos.power + 1)
        c = pos.coord
        return Regular(c.shifted(1, self.tube_rank(c.tube)))

    def unshift_position(self, pos: Position) -> Position:
        pos = self.canonical(pos)
        if isinstance(pos, ShiftedProjective):
            return Preprojective(pos.vertex, 0)
        if isinstance(pos, Preprojective):
            if pos in self._injective_at:
                return ShiftedProjective(self._injective_at[pos])
            return Preprojective(pos.vertex, pos.power + 1)
        if isinstance(pos, Preinjective):
            if pos.power == 0:
                return ShiftedProjective(pos.vertex)
            return Preinjective(pos.vertex, pos.power - 1)
        c = pos.coord
        return Regular(c.shifted(-1, self.tube_rank(c.tube)))

    def shift(self, X: IndRigidObject, times: int = 1) -> IndRigidObject:
        pos = X.position
        for _ in range(abs(times)):
            pos = self.shift_position(pos) if times > 0 else self.unshift_position(pos)
        return self.obj(pos)

    def unshift(self, X: IndRigidObject) -> IndRigidObject:
        return self.shift(X, -1)

    # -- morphisms
    def hom_mod(self, X: IndRigidObject, Y: IndRigidObject) -> int:
        key = (X.position, Y.position)
        v = self._homs.get(key)
        if v is None:
            v = hom_dim_mod(self.rep(X.position), self.rep(Y.position))
            self._homs[key] = v
        return v

    def ext1_mod(self, X: IndRigidObject, Y: IndRigidObject) -> int:
        v = self.hom_mod(X, Y) - self.quiver.euler(X.dims, Y.dims)
        if v < 0:
            raise InternalInvariantError(f"negative Ext between {X} and {Y}")
        return v

    def _hom_C_modules(self, X: IndRigidObject, Y: IndRigidObject) -> int:
        below = self.unshift(Y)
        d_part = self.ext1_mod(X, below) if below.is_module else 0
        return self.hom_mod(X, Y) + d_part

    def hom_dim_C(self, X: IndRigidObject, Y: IndRigidObject) -> int:
        key = (X.position, Y.position)
        v = self._homs_C.get(key)
        if v is not None:
            return v
        for k in (0, 1, -1, 2, -2, 3, -3):
            Xk, Yk = (X, Y) if k == 0 else (self.shift(X, k), self.shift(Y, k))
            if Xk.is_module and Yk.is_module:
                v = self._hom_C_modules(Xk, Yk)
                break
        else:
            raise InternalInvariantError(f"could not move {X}, {Y} into the module category")
        self._homs_C[key] = v
        return v

    def ext1_dim_C(self, X: IndRigidObject, Y: IndRigidObject) -> int:
        return self.hom_dim_C(X, self.shift(Y))

    # -- inventories
    def regular_rigid(self) -> list[IndRigidObject]:
        out = []
        for t in self.tubes:
            for a in range(1, t.rank + 1):
                for b in range(1, t.rank):
                    out.append(self.R(t.tube_id, a, b))
        return out

    def enumerate_rigid(self, window: int) -> list[IndRigidObject]:
        """Shifted projectives, preprojectives by (m, i), regular rigids, preinjectives by (m, i)."""
        if window < 0:
            raise ValueError("window must be nonnegative")
        out = [self.SP(i) for i in range(1, self.n + 1)]
        if self.is_finite:
            for m in range(window + 1):
                for i in range(1, self.n + 1):
                    if m <= self._last_power[i]:
                        out.append(self.P(i, m))
            return out
        out += [self.P(i, m) for m in range(window + 1) for i in range(1, self.n + 1)]
        out += self.regular_rigid()
        out += [self.I(i, m) for m in range(window + 1) for i in range(1, self.n + 1)]
        return out

    def in_window(self, X: IndRigidObject, window: int) -> bool:
        p = X.position
        if isinstance(p, (Preprojective, Preinjective)):
            return p.power <= window
        if isinstance(p, Regular):
            return p.coord.b <= self.tube_rank(p.coord.tube) - 1
        return True

    def defect(self, X: IndRigidObject) -> int:
        if self.profile is None:
            raise ValueError("defect is defined for extended Dynkin quivers only")
        return self.profile.defect(X.dims)
