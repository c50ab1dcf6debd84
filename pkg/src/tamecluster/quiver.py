"""Exchange matrices, matrix mutation and recognition of extended Dynkin quivers."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
from flint import fmpz_mat


class QuiverError(ValueError):
    """Invalid quiver or exchange matrix."""


class QuiverParseError(QuiverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NotExtendedDynkin(QuiverError):
    """The underlying graph is not one of the affine diagrams."""


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix; ``b[i][j] > 0`` counts arrows i -> j."""

    b: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b = tuple(tuple(int(v) for v in row) for row in self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        for i, row in enumerate(b):
            if len(row) != n:
                raise QuiverError("exchange matrix must be square")
            if row[i] != 0:
                raise QuiverError(f"loop at vertex {i + 1}")
            for j in range(n):
                if row[j] != -b[j][i]:
                    raise QuiverError(f"not skew-symmetric at ({i + 1},{j + 1})")

    @property
    def n(self) -> int:
        return len(self.b)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry b_ij with 1-based indices."""
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"entry ({i},{j}) outside 1..{self.n}")
        return self.b[i - 1][j - 1]

    @classmethod
    def zero(cls, n: int) -> ExchangeMatrix:
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_arrows(cls, n: int, arrows) -> ExchangeMatrix:
        """Build from 1-based arrows ``(i, j)``; parallel arrows accumulate."""
        arrows = list(arrows)
        seen = set(arrows)
        b = [[0] * n for _ in range(n)]
        for i, j in arrows:
            if not (1 <= i <= n and 1 <= j <= n):
                raise QuiverError(f"arrow {i}->{j} outside 1..{n}")
            if i == j:
                raise QuiverError(f"loop at vertex {i}")
            if (j, i) in seen:
                raise QuiverError(f"2-cycle between {i} and {j}")
            b[i - 1][j - 1] += 1
            b[j - 1][i - 1] -= 1
        return cls(tuple(map(tuple, b)))

    def arrows(self) -> list[tuple[int, int]]:
        """0-based arrow list, one entry per parallel arrow, in (source, target) order."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                out.extend([(i, j)] * max(self.b[i][j], 0))
        return out

    def is_acyclic(self) -> bool:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arrows())
        return nx.is_directed_acyclic_graph(g)

    def is_connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.arrows())
        return self.n > 0 and nx.is_connected(g)

    def negated(self) -> ExchangeMatrix:
        return ExchangeMatrix(tuple(tuple(-v for v in row) for row in self.b))


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at the 1-based vertex ``k``."""
    n = B.n
    if not 1 <= k <= n:
        raise IndexError(f"mutation index {k} outside 1..{n}")
    k -= 1
    b = B.b
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k], b[k][j]
                out[i][j] = b[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2
    return ExchangeMatrix(tuple(map(tuple, out)))


# ---------------------------------------------------------------- text format

def parse_quiver_text(text: str) -> ExchangeMatrix:
    """Parse "i j" arrow lines (1-based); the vertex count is the largest index seen."""
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise QuiverParseError(f"expected 'i j', got {raw.strip()!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise QuiverParseError(f"non-integer vertex in {raw.strip()!r}", lineno) from None
        if i < 1 or j < 1:
            raise QuiverParseError("vertices are 1-based", lineno)
        if i == j:
            raise QuiverParseError(f"loop at vertex {i}", lineno)
        if (j, i) in arrows:
            raise QuiverParseError(f"2-cycle between {i} and {j}", lineno)
        arrows.append((i, j))
    if not arrows:
        raise QuiverParseError("no arrows")
    n = max(max(a) for a in arrows)
    return ExchangeMatrix.from_arrows(n, arrows)


def load_quiver_file(path: str | Path) -> ExchangeMatrix:
    return parse_quiver_text(Path(path).read_text())


def format_quiver_text(B: ExchangeMatrix) -> str:
    return "".join(f"{i + 1} {j + 1}\n" for i, j in B.arrows())


# ------------------------------------------------------------------- builtins

def affine_a(p: int, q: int) -> ExchangeMatrix:
    """Cycle with ``p`` arrows on one path from 1 to p+1 and ``q`` on the other."""
    if p < 1 or q < 1:
        raise QuiverError("A(p,q) needs p, q >= 1")
    n = p + q
    if n == 2:
        return ExchangeMatrix(((0, 2), (-2, 0)))
    upper = list(range(1, p + 2))
    lower = [1] + list(range(p + 2, p + q + 1)) + [p + 1]
    arrows = list(zip(upper, upper[1:])) + list(zip(lower, lower[1:]))
    return ExchangeMatrix.from_arrows(n, arrows)


def affine_d(m: int) -> ExchangeMatrix:
    """D~m on m+1 vertices: a chain 1..m-3 with two leaves at each end, arrows toward the chain."""
    if m < 4:
        raise QuiverError("D(n) needs n >= 4")
    c = m - 3
    arrows = [(c + 1, 1), (c + 2, 1)]
    arrows += [(i, i + 1) for i in range(1, c)]
    arrows += [(c + 3, c), (c + 4, c)]
    return ExchangeMatrix.from_arrows(m + 1, arrows)


def _star(arms: list[int]) -> ExchangeMatrix:
    # centre is vertex 1, every arm points inward
    arrows = []
    nxt = 2
    for length in arms:
        prev = 1
        for _ in range(length):
            arrows.append((nxt, prev))
            prev = nxt
            nxt += 1
    return ExchangeMatrix.from_arrows(nxt - 1, arrows)


def affine_e(m: int) -> ExchangeMatrix:
    arms = {6: [2, 2, 2], 7: [3, 3, 1], 8: [5, 2, 1]}
    if m not in arms:
        raise QuiverError("E(n) needs n in {6, 7, 8}")
    return _star(arms[m])


_BUILTIN = re.compile(r"^\s*(?:([AD])\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)|E\s*([678]))\s*$")


def builtin_quiver(name: str) -> ExchangeMatrix:
    """Resolve ``A(p,q)``, ``D(n)``, ``E6``, ``E7`` or ``E8``."""
    m = _BUILTIN.match(name)
    if not m:
        raise QuiverError(f"unknown builtin quiver {name!r}")
    fam, x, y, e = m.groups()
    if e:
        return affine_e(int(e))
    if fam == "A":
        if y is None:
            raise QuiverError("A needs two parameters, e.g. A(2,1)")
        return affine_a(int(x), int(y))
    if y is not None:
        raise QuiverError("D takes one parameter, e.g. D(4)")
    return affine_d(int(x))


# ------------------------------------------------------------------ profiles

@dataclass(frozen=True)
class AffineProfile:
    type_tag: str
    delta: tuple[int, ...]
    ranks: tuple[int, ...]
    defect_form: tuple[int, ...]

    def defect(self, x) -> int:
        return sum(c * v for c, v in zip(self.defect_form, x))


def euler_form(B: ExchangeMatrix, x, y) -> int:
    """<x, y> = sum x_i y_i - sum over arrows i->j of x_i y_j."""
    total = sum(a * b for a, b in zip(x, y))
    for i in range(B.n):
        for j in range(B.n):
            if B.b[i][j] > 0:
                total -= B.b[i][j] * x[i] * y[j]
    return total


def _symmetrized(B: ExchangeMatrix) -> list[list[int]]:
    n = B.n
    return [[2 if i == j else -abs(B.b[i][j]) for j in range(n)] for i in range(n)]


def is_dynkin(B: ExchangeMatrix) -> bool:
    """Connected with positive definite symmetrized form (leading minors test)."""
    if not B.is_connected():
        return False
    c = _symmetrized(B)
    for k in range(1, B.n + 1):
        if fmpz_mat([row[:k] for row in c[:k]]).det() <= 0:
            return False
    return True


def _family_graphs(n: int):
    if n >= 4:
        yield "D", n - 1, affine_d(n - 1)
    if n in (7, 8, 9):
        yield "E", n - 1, affine_e(n - 1)


def _multigraph(B: ExchangeMatrix) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(B.n))
    g.add_edges_from(B.arrows())
    return g


def _cycle_orientation(B: ExchangeMatrix) -> tuple[int, int]:
    """Count arrows running each way around the underlying cycle."""
    n = B.n
    if n == 2:
        return 1, 1
    g = _multigraph(B)
    order = [0]
    prev = None
    while len(order) < n:
        cur = order[-1]
        nxt = next(v for v in sorted(g.neighbors(cur)) if v != prev and v not in order)
        prev = cur
        order.append(nxt)
    forward = 0
    for a, b in zip(order, order[1:] + order[:1]):
        forward += B.b[a][b] > 0
    return forward, n - forward


def _primitive_kernel(B: ExchangeMatrix) -> tuple[int, ...] | None:
    c = fmpz_mat(_symmetrized(B))
    ker, nullity = c.nullspace()
    if nullity != 1:
        return None
    v = [int(ker[i, 0]) for i in range(B.n)]
    g = 0
    for x in v:
        g = _gcd(g, x)
    v = [x // g for x in v]
    if v[0] < 0:
        v = [-x for x in v]
    if any(x <= 0 for x in v):
        return None
    return tuple(v)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def affine_profile(B: ExchangeMatrix) -> AffineProfile:
    """Recognize an acyclic extended Dynkin quiver and return its tube data."""
    if not B.is_connected():
        raise NotExtendedDynkin("quiver is not connected")
    if not B.is_acyclic():
        raise NotExtendedDynkin("quiver has an oriented cycle")
    delta = _primitive_kernel(B)
    if delta is None:
        raise NotExtendedDynkin("symmetrized form has no positive radical vector")
    n = B.n
    g = _multigraph(B)
    tag = ranks = None
    if nx.is_isomorphic(g, _multigraph(affine_a(max(n - 1, 1), 1))):
        p, q = sorted(_cycle_orientation(B), reverse=True)
        tag, ranks = f"A({p},{q})", [p, q]
    else:
        for fam, m, ref in _family_graphs(n):
            if nx.is_isomorphic(g, _multigraph(ref)):
                tag = f"D({m})" if fam == "D" else f"E{m}"
                ranks = [2, 2, m - 2] if fam == "D" else {6: [2, 3, 3], 7: [2, 3, 4], 8: [2, 3, 5]}[m]
                break
    if tag is None:
        raise NotExtendedDynkin("underlying graph is not an extended Dynkin diagram")
    ranks = tuple(sorted((r for r in ranks if r >= 2), reverse=True))
    defect_form = []
    for j in range(n):
        c = delta[j]
        for i in range(n):
            if B.b[i][j] > 0:
                c -= B.b[i][j] * delta[i]
        defect_form.append(c)
    profile = AffineProfile(tag, delta, ranks, tuple(defect_form))
    if sum(r - 1 for r in ranks) != n - 2:
        raise NotExtendedDynkin(f"tube ranks {ranks} inconsistent with {n} vertices")
    if profile.defect(delta) != 0:
        raise NotExtendedDynkin("defect does not vanish on delta")
    return profile


def rank_multiset(ranks) -> Counter:
    return Counter(r for r in ranks if r >= 2)
