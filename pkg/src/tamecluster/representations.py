"""Finite-dimensional representations of an acyclic quiver over the rationals.

Conventions: a representation assigns to arrow ``i -> j`` a ``dims[j] x dims[i]``
matrix.  Paths are tuples of arrow indices in traversal order.  ``P_i`` has
basis the paths starting at ``i`` and ``I_i`` the duals of paths ending at ``i``,
so that ``Hom(P_i, M) = M_i`` and ``Hom(M, I_i) = D M_i``.
"""

from __future__ import annotations

import random
from functools import cached_property

from flint import fmpq, fmpq_mat, fmpz_mat

from . import linalg
from .quiver import ExchangeMatrix

Path = tuple[int, ...]


class InternalInvariantError(RuntimeError):
    """A mathematical invariant failed; results cannot be trusted."""


class PathQuiver:
    """Arrows and paths of an acyclic quiver, vertices and arrows 0-based."""

    def __init__(self, n: int, arrows: list[tuple[int, int]], _opposite: PathQuiver | None = None):
        self.n = n
        self.arrows = list(arrows)
        self.in_arrows = [[a for a, (s, t) in enumerate(self.arrows) if t == v] for v in range(n)]
        self.out_arrows = [[a for a, (s, t) in enumerate(self.arrows) if s == v] for v in range(n)]
        self._opposite = _opposite
        self.paths: dict[tuple[int, int], list[Path]] = {(v, w): [] for v in range(n) for w in range(n)}
        for v in range(n):
            stack: list[tuple[int, Path]] = [(v, ())]
            while stack:
                w, p = stack.pop()
                self.paths[(v, w)].append(p)
                if len(p) > 4 * n + 4:
                    raise ValueError("quiver has an oriented cycle")
                for a in self.out_arrows[w]:
                    stack.append((self.arrows[a][1], p + (a,)))
        for key in self.paths:
            self.paths[key].sort(key=lambda p: (len(p), p))
        self.path_index = {key: {p: i for i, p in enumerate(ps)} for key, ps in self.paths.items()}

    @classmethod
    def from_matrix(cls, B: ExchangeMatrix) -> PathQuiver:
        if not B.is_acyclic():
            raise ValueError("representations need an acyclic quiver")
        return cls(B.n, B.arrows())

    def end(self, start: int, p: Path) -> int:
        return self.arrows[p[-1]][1] if p else start

    @property
    def opposite(self) -> PathQuiver:
        if self._opposite is None:
            self._opposite = PathQuiver(self.n, [(t, s) for s, t in self.arrows], _opposite=self)
        return self._opposite

    def euler(self, x, y) -> int:
        total = sum(a * b for a, b in zip(x, y))
        for s, t in self.arrows:
            total -= x[s] * y[t]
        return total

    @cached_property
    def coxeter(self) -> fmpq_mat:
        """Phi with dim(tau M) = Phi dim(M) on column vectors."""
        n = self.n
        e = linalg.identity(n)
        for s, t in self.arrows:
            e[s, t] -= 1
        return -(e.inv() * e.transpose())


class Representation:
    __slots__ = ("quiver", "dims", "maps", "_rows", "_int_rows", "_paths", "__weakref__")

    def __init__(self, quiver: PathQuiver, dims, maps):
        self.quiver = quiver
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        if len(self.dims) != quiver.n or len(self.maps) != len(quiver.arrows):
            raise ValueError("representation does not match the quiver")
        for (s, t), m in zip(quiver.arrows, self.maps):
            if (m.nrows(), m.ncols()) != (self.dims[t], self.dims[s]):
                raise ValueError(f"arrow {s}->{t}: matrix shape {m.nrows()}x{m.ncols()} "
                                 f"!= {self.dims[t]}x{self.dims[s]}")
        self._rows = None
        self._int_rows = None
        self._paths: dict[Path, fmpq_mat] = {}

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def rows(self, a: int) -> list[list[fmpq]]:
        if self._rows is None:
            self._rows = [linalg.to_rows(m) for m in self.maps]
        return self._rows[a]

    def int_rows(self, a: int) -> tuple[list[list[int]], int]:
        """Arrow matrix ``a`` as integer rows and a common denominator."""
        if self._int_rows is None:
            out = []
            for m in self.maps:
                num, den = m.numer_denom()
                out.append(([[int(num[i, j]) for j in range(m.ncols())] for i in range(m.nrows())],
                            int(den)))
            self._int_rows = out
        return self._int_rows[a]

    def path_matrix(self, start: int, p: Path) -> fmpq_mat:
        if not p:
            return linalg.identity(self.dims[start])
        m = self._paths.get(p)
        if m is None:
            m = self.maps[p[0]]
            for a in p[1:]:
                m = linalg.matmul(self.maps[a], m)
            self._paths[p] = m
        return m

    def dual(self) -> Representation:
        """D M as a representation of the opposite quiver."""
        return Representation(self.quiver.opposite, self.dims, [m.transpose() for m in self.maps])

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": [[[linalg.fmt_entry(v) for v in row] for row in linalg.to_rows(m)] for m in self.maps],
        }

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


# --------------------------------------------------------------- constructors

def projective(q: PathQuiver, i: int) -> Representation:
    dims = [len(q.paths[(i, v)]) for v in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = fmpq_mat(dims[t], dims[s])
        for c, p in enumerate(q.paths[(i, s)]):
            m[q.path_index[(i, t)][p + (a,)], c] = 1
        maps.append(m)
    return Representation(q, dims, maps)


def injective(q: PathQuiver, i: int) -> Representation:
    dims = [len(q.paths[(v, i)]) for v in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        m = fmpq_mat(dims[t], dims[s])
        for c, p in enumerate(q.paths[(s, i)]):
            if p and p[0] == a:
                m[q.path_index[(t, i)][p[1:]], c] = 1
        maps.append(m)
    return Representation(q, dims, maps)


def simple(q: PathQuiver, i: int) -> Representation:
    dims = [1 if v == i else 0 for v in range(q.n)]
    return Representation(q, dims, [fmpq_mat(dims[t], dims[s]) for s, t in q.arrows])


def zero(q: PathQuiver) -> Representation:
    return Representation(q, [0] * q.n, [fmpq_mat(0, 0) for _ in q.arrows])


def random_representation(q: PathQuiver, dims, rng: random.Random, bound: int = 9) -> Representation:
    maps = []
    for s, t in q.arrows:
        r, c = dims[t], dims[s]
        m = fmpq_mat(r, c)
        for x in range(r):
            for y in range(c):
                m[x, y] = rng.randint(-bound, bound)
        maps.append(m)
    return Representation(q, dims, maps)


# ------------------------------------------------------------------ Hom, Ext

def _same_quiver(M: Representation, N: Representation):
    if M.quiver.arrows != N.quiver.arrows or M.quiver.n != N.quiver.n:
        raise ValueError("representations of different quivers")


def intertwiner_system(M: Representation, N: Representation) -> fmpz_mat:
    """Integer linear system in the entries of (phi_v : M_v -> N_v) for phi_j M_a = N_a phi_i.

    Each arrow's equations are scaled by the denominators of both arrow matrices,
    which leaves the solution space unchanged.
    """
    _same_quiver(M, N)
    q = M.quiver
    d, e = M.dims, N.dims
    off = []
    acc = 0
    for v in range(q.n):
        off.append(acc)
        acc += d[v] * e[v]
    nrows = sum(e[t] * d[s] for s, t in q.arrows)
    mat = fmpz_mat(nrows, acc)
    row = 0
    for a, (i, j) in enumerate(q.arrows):
        if not e[j] or not d[i]:
            continue
        A, da = M.int_rows(a)
        Bn, db = N.int_rows(a)
        oi, oj, di, dj = off[i], off[j], d[i], d[j]
        for r in range(e[j]):
            brow = Bn[r]
            for c in range(di):
                for s in range(dj):
                    v = A[s][c]
                    if v:
                        mat[row, oj + r * dj + s] = v * db
                for t in range(e[i]):
                    v = brow[t]
                    if v:
                        mat[row, oi + t * di + c] = -v * da
                row += 1
    return mat


def hom_dim_mod(M: Representation, N: Representation) -> int:
    _same_quiver(M, N)
    unknowns = sum(a * b for a, b in zip(M.dims, N.dims))
    if unknowns == 0:
        return 0
    system = intertwiner_system(M, N)
    if system.nrows() == 0:
        return unknowns
    return unknowns - system.rank()


def ext1_dim_mod(M: Representation, N: Representation) -> int:
    value = hom_dim_mod(M, N) - M.quiver.euler(M.dims, N.dims)
    if value < 0:
        raise InternalInvariantError(f"negative Ext dimension for {M.dims}, {N.dims}")
    return value


def is_brick_rigid(M: Representation) -> bool:
    return hom_dim_mod(M, M) == 1 and ext1_dim_mod(M, M) == 0


# ---------------------------------------------------------------- presentations

class Presentation:
    """Minimal projective presentation ``P1 -> P0 -> M -> 0``.

    ``top`` lists the generators of ``P0`` as (vertex, column of M_v); ``relations``
    lists generators of the kernel as (vertex w, {(g, path): coefficient}) with
    ``path`` running from the vertex of generator ``g`` to ``w``.
    """

    def __init__(self, top, relations):
        self.top = top
        self.relations = relations


def projective_presentation(M: Representation) -> Presentation:
    q = M.quiver
    top = []
    for v in range(q.n):
        if not M.dims[v]:
            continue
        rad = linalg.hstack([M.maps[a] for a in q.in_arrows[v]], M.dims[v])
        for j in linalg.complement_columns(rad, linalg.identity(M.dims[v])):
            top.append((v, j))
    # basis of (P0)_w: pairs (g, path from v_g to w)
    basis = []
    for w in range(q.n):
        basis.append([(g, p) for g, (v, _) in enumerate(top) for p in q.paths[(v, w)]])
    index = [{b: k for k, b in enumerate(bw)} for bw in basis]
    kernels = []
    for w in range(q.n):
        pi = fmpq_mat(M.dims[w], len(basis[w]))
        for k, (g, p) in enumerate(basis[w]):
            v, j = top[g]
            col = M.path_matrix(v, p)
            for r in range(M.dims[w]):
                x = col[r, j]
                if x:
                    pi[r, k] = x
        kernels.append(linalg.nullspace(pi))
    relations = []
    for w in range(q.n):
        K = kernels[w]
        if not K.ncols():
            continue
        images = []
        for a in q.in_arrows[w]:
            u = q.arrows[a][0]
            Ku = kernels[u]
            if not Ku.ncols():
                continue
            act = fmpq_mat(len(basis[w]), len(basis[u]))
            for k, (g, p) in enumerate(basis[u]):
                act[index[w][(g, p + (a,))], k] = 1
            images.append(linalg.matmul(act, Ku))
        rad = linalg.hstack(images, len(basis[w]))
        for col in linalg.complement_columns(rad, K):
            coeffs = {}
            for k, key in enumerate(basis[w]):
                x = K[k, col]
                if x:
                    coeffs[key] = x
            relations.append((w, coeffs))
    return Presentation(top, relations)


def tau(M: Representation) -> Representation | None:
    """Auslander-Reiten translate via the Nakayama functor; None on projectives."""
    q = M.quiver
    pres = projective_presentation(M)
    if not pres.relations:
        return None
    top_vertex = [v for v, _ in pres.top]
    by_vertex: dict[int, list[int]] = {}
    for g, v in enumerate(top_vertex):
        by_vertex.setdefault(v, []).append(g)
    # (nu P0)_u has basis (g, r) with r a path u -> v_g; (nu P1)_u has (k, q) with q: u -> w_k
    rows_idx, cols = [], []
    for u in range(q.n):
        rows_idx.append({(g, r): i for i, (g, r) in enumerate(
            (g, r) for g, v in enumerate(top_vertex) for r in q.paths[(u, v)])})
        cols.append([(k, p) for k, (w, _) in enumerate(pres.relations) for p in q.paths[(u, w)]])
    kernels = []
    for u in range(q.n):
        f = fmpq_mat(len(rows_idx[u]), len(cols[u]))
        for c, (k, path) in enumerate(cols[u]):
            coeffs = pres.relations[k][1]
            for cut in range(len(path) + 1):
                r, p = path[:cut], path[cut:]
                for g in by_vertex.get(q.end(u, r), ()):
                    x = coeffs.get((g, p))
                    if x:
                        i = rows_idx[u][(g, r)]
                        f[i, c] = f[i, c] + x
        kernels.append(linalg.nullspace(f))
    dims = [K.ncols() for K in kernels]
    maps = []
    col_index = [{key: i for i, key in enumerate(cu)} for cu in cols]
    for a, (s, t) in enumerate(q.arrows):
        act = fmpq_mat(len(cols[t]), len(cols[s]))
        for c, (k, path) in enumerate(cols[s]):
            if path and path[0] == a:
                act[col_index[t][(k, path[1:])], c] = 1
        maps.append(linalg.solve(kernels[t], linalg.matmul(act, kernels[s])))
    return Representation(q, dims, maps)


def tau_inv(M: Representation) -> Representation | None:
    """Inverse translate, computed as D tau D on the opposite quiver; None on injectives."""
    X = tau(M.dual())
    if X is None:
        return None
    return X.dual()


# ------------------------------------------------------------------ extensions

def nonsplit_extension(X: Representation, Y: Representation) -> Representation:
    """Middle term E of a nonsplit sequence 0 -> Y -> E -> X -> 0.

    E_a = [[Y_a, Z_a], [0, X_a]] where Z is a cocycle outside the coboundaries
    (h_v) -> (Y_a h_i - h_j X_a).  Unique up to isomorphism when Ext(X, Y) is one-dimensional.
    """
    _same_quiver(X, Y)
    q = X.quiver
    x, y = X.dims, Y.dims
    hoff, acc = [], 0
    for v in range(q.n):
        hoff.append(acc)
        acc += y[v] * x[v]
    zoff, racc = [], 0
    for s, t in q.arrows:
        zoff.append(racc)
        racc += y[t] * x[s]
    D = fmpq_mat(racc, acc)
    for a, (i, j) in enumerate(q.arrows):
        Ya, Xa = Y.rows(a), X.rows(a)
        for r in range(y[j]):
            for c in range(x[i]):
                row = zoff[a] + r * x[i] + c
                for t in range(y[i]):
                    v = Ya[r][t]
                    if v:
                        D[row, hoff[i] + t * x[i] + c] += v
                for s in range(x[j]):
                    v = Xa[s][c]
                    if v:
                        D[row, hoff[j] + r * x[j] + s] -= v
    free = linalg.complement_columns(D, linalg.identity(racc))
    if not free:
        raise InternalInvariantError("Ext vanishes; no nonsplit extension exists")
    pick = free[0]
    dims = [y[v] + x[v] for v in range(q.n)]
    maps = []
    for a, (i, j) in enumerate(q.arrows):
        m = fmpq_mat(dims[j], dims[i])
        Ya, Xa = Y.maps[a], X.maps[a]
        for r in range(y[j]):
            for c in range(y[i]):
                m[r, c] = Ya[r, c]
        for r in range(x[j]):
            for c in range(x[i]):
                m[y[j] + r, y[i] + c] = Xa[r, c]
        base = zoff[a]
        if base <= pick < base + y[j] * x[i]:
            r, c = divmod(pick - base, x[i])
            m[r, y[i] + c] = 1
        maps.append(m)
    return Representation(q, dims, maps)
