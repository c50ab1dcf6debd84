"""Combinatorics of stable tubes: coordinates, regions and Hom dimensions.

A coordinate ``(a, b)`` names the object with quasi-socle ``R_a`` and
quasi-length ``b``; ``a`` is read modulo the rank ``d`` and stored in ``1..d``.
Hom dimensions are computed by hammock propagation over the universal cover
``Z A_inf`` of the tube, where meshes are additive.
"""

from __future__ import annotations

from dataclasses import dataclass


def norm(a: int, d: int) -> int:
    return (a - 1) % d + 1


@dataclass(frozen=True, order=True)
class TubeCoord:
    tube: int
    a: int
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("quasi-length must be positive")

    def normalized(self, d: int) -> TubeCoord:
        return TubeCoord(self.tube, norm(self.a, d), self.b)

    def shifted(self, steps: int, d: int) -> TubeCoord:
        """Apply tau ``steps`` times (negative for tau inverse)."""
        return TubeCoord(self.tube, norm(self.a - steps, d), self.b)

    def to_dict(self) -> dict:
        return {"tubeId": self.tube, "a": self.a, "b": self.b}


def tau(x: TubeCoord, d: int) -> TubeCoord:
    return x.shifted(1, d)


def _same_tube(x: TubeCoord, y: TubeCoord):
    if x.tube != y.tube:
        raise ValueError(f"coordinates lie in different tubes: {x} and {y}")


def hammock(x: TubeCoord, y_b: int, d: int, bmax: int, horizon: int) -> dict[tuple[int, int], int]:
    """Values of Hom(x~, -) on the cover for times 2a+b in [2x.a+x.b, horizon], rows <= bmax."""
    t0 = 2 * x.a + x.b
    f: dict[tuple[int, int], int] = {}
    for t in range(t0, horizon + 1):
        for b in range(1, bmax + 1):
            if (t - b) % 2:
                continue
            a = (t - b) // 2
            v = 1 if (a, b) == (x.a, x.b) else 0
            v += f.get((a, b - 1), 0)
            if b + 1 <= bmax:
                v += f.get((a - 1, b + 1), 0)
            v -= f.get((a - 1, b), 0)
            if v:
                f[(a, b)] = v
    return f


def tube_hom_dim_mod(x: TubeCoord, y: TubeCoord, d: int) -> int:
    """dim Hom(x, y) inside a tube of rank ``d``."""
    _same_tube(x, y)
    x, y = x.normalized(d), y.normalized(d)
    bmax = x.b + y.b + d
    # truncation errors start at row bmax+1 and move down one row per time step
    horizon = 2 * x.a + 2 * bmax + 1 - y.b
    f = hammock(x, y.b, d, bmax, horizon)
    t0 = 2 * x.a + x.b
    total = 0
    a = y.a
    while 2 * a + y.b >= t0:
        a -= d
    a += d
    while 2 * a + y.b <= horizon:
        total += f.get((a, y.b), 0)
        a += d
    if total < 0:
        raise ArithmeticError("negative hammock value")
    return total


def tube_hom_dim_C(x: TubeCoord, y: TubeCoord, d: int) -> int:
    """Hom in the cluster category between two objects of one tube."""
    return tube_hom_dim_mod(x, y, d) + tube_hom_dim_mod(y, x.shifted(2, d), d)


# -------------------------------------------------------------------- regions

@dataclass(frozen=True)
class Ray:
    base: TubeCoord


@dataclass(frozen=True)
class Coray:
    base: TubeCoord


@dataclass(frozen=True)
class Wing:
    base: TubeCoord


def region_membership(x: TubeCoord, region, d: int) -> bool:
    base = region.base
    if x.tube != base.tube:
        return False
    xa, ba = norm(x.a, d), norm(base.a, d)
    if isinstance(region, Ray):
        return xa == ba and x.b >= base.b
    if isinstance(region, Coray):
        j = x.b - base.b
        return j >= 0 and xa == norm(ba - j, d)
    if isinstance(region, Wing):
        lifted = ba + (xa - ba) % d
        return lifted + x.b <= ba + base.b
    raise TypeError(f"unknown region {region!r}")


def rigid_coords(tube: int, d: int) -> list[TubeCoord]:
    return [TubeCoord(tube, a, b) for a in range(1, d + 1) for b in range(1, d)]


def wing_coords(z: TubeCoord, d: int) -> list[TubeCoord]:
    """Objects of the wing of ``z``, listed by (a, b) in the cover before reduction."""
    out = []
    for i in range(z.b):
        for b in range(1, z.b - i + 1):
            out.append(TubeCoord(z.tube, norm(z.a + i, d), b))
    return out
