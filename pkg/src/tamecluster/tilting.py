"""Cluster-tilting objects, their mutation, and hom-dimension bookkeeping on them."""

from __future__ import annotations

from dataclasses import dataclass, field

from .quiver import ExchangeMatrix, mutate_matrix
from .repcat import ClusterCategory, IndRigidObject, InternalInvariantError, Preprojective, ShiftedProjective


class WindowExhausted(LookupError):
    """No complement inside the current enumeration window; retry with a larger one."""

    def __init__(self, window: int, message: str = ""):
        self.window = window
        super().__init__(message or f"no complement found within window {window}")


class AmbiguousComplement(InternalInvariantError):
    pass


class MIsShiftedSummand(ValueError):
    pass


class CertificationError(InternalInvariantError):
    pass


@dataclass(frozen=True)
class ClusterTiltingObject:
    summands: tuple[IndRigidObject, ...]
    provenance: tuple[int, ...] = field(default=(), compare=False)
    base: str = field(default="P", compare=False)

    @property
    def n(self) -> int:
        return len(self.summands)

    def __getitem__(self, i: int) -> IndRigidObject:
        return self.summands[i]

    def __iter__(self):
        return iter(self.summands)

    def key(self) -> frozenset:
        return frozenset(X.position for X in self.summands)

    def to_dict(self) -> dict:
        return {
            "summands": [X.label for X in self.summands],
            "provenance": ",".join(map(str, self.provenance)),
            "base": self.base,
        }


def projectives(cat: ClusterCategory) -> ClusterTiltingObject:
    return ClusterTiltingObject(tuple(cat.obj(Preprojective(i, 0)) for i in range(1, cat.n + 1)))


def shifted_projectives(cat: ClusterCategory) -> ClusterTiltingObject:
    return ClusterTiltingObject(tuple(cat.obj(ShiftedProjective(i)) for i in range(1, cat.n + 1)), base="SP")


@dataclass
class TiltingCertificate:
    ok: bool
    reason: str = ""
    violations: list[tuple[str, str]] = field(default_factory=list)


def is_cluster_tilting(cat: ClusterCategory, objs) -> TiltingCertificate:
    objs = list(objs)
    if len(objs) != cat.n:
        return TiltingCertificate(False, f"expected {cat.n} summands, got {len(objs)}")
    if len({X.position for X in objs}) != len(objs):
        seen, dup = set(), []
        for X in objs:
            if X.position in seen:
                dup.append((X.label, X.label))
            seen.add(X.position)
        return TiltingCertificate(False, "repeated summand", dup)
    bad = [(X.label, Y.label) for X in objs for Y in objs if cat.ext1_dim_C(X, Y)]
    if bad:
        return TiltingCertificate(False, "summands are not Ext-orthogonal", bad)
    return TiltingCertificate(True)


def _compatible(cat: ClusterCategory, X: IndRigidObject, others) -> bool:
    for Y in others:
        if cat.ext1_dim_C(X, Y) or cat.ext1_dim_C(Y, X):
            return False
    return True


def mutate_ct(cat: ClusterCategory, T: ClusterTiltingObject, k: int, window: int):
    """Replace the 1-based summand ``k`` by its other complement.

    Returns ``(T', (T_k, T_k*))``.  The complement is searched for exhaustively in
    the rigid inventory of the given window.
    """
    if not 1 <= k <= T.n:
        raise IndexError(f"summand index {k} outside 1..{T.n}")
    Tk = T[k - 1]
    others = [X for i, X in enumerate(T) if i != k - 1]
    memo = cat.memo.setdefault("complements", {})
    key = (frozenset(X.position for X in others), Tk.position)
    found = memo.get(key)
    if found is None:
        taken = {X.position for X in T}
        hits = [X for X in cat.enumerate_rigid(window)
                if X.position not in taken and _compatible(cat, X, others)]
        if len(hits) > 1:
            raise AmbiguousComplement(f"complements {[h.label for h in hits]} for {Tk} in {T.to_dict()}")
        if not hits:
            raise WindowExhausted(window, f"no complement to {Tk} within window {window}")
        found = hits[0]
        if cat.ext1_dim_C(Tk, found) != 1:
            raise InternalInvariantError(f"exchange pair {Tk}, {found} has Ext dimension != 1")
        memo[key] = found
        memo[(key[0], found.position)] = Tk
    elif not cat.in_window(found, window):
        raise WindowExhausted(window, f"complement {found} lies outside window {window}")
    summands = T.summands[: k - 1] + (found,) + T.summands[k:]
    return ClusterTiltingObject(summands, T.provenance + (k,), T.base), (Tk, found)


def mutate_ct_along(cat: ClusterCategory, T: ClusterTiltingObject, word, window: int) -> ClusterTiltingObject:
    for k in word:
        T, _ = mutate_ct(cat, T, k, window)
    return T


def dim_vector_tau_rigid(cat: ClusterCategory, T: ClusterTiltingObject, M: IndRigidObject) -> tuple[int, ...]:
    """Dimension vector of the module over End(T) attached to M, i.e. (dim Hom(T_i, M))_i."""
    for i, X in enumerate(T, start=1):
        if cat.shift(X) == M:
            raise MIsShiftedSummand(f"{M} is the shift of summand {i} ({X})")
    return tuple(cat.hom_dim_C(X, M) for X in T)


# ------------------------------------------------------------ compatibility

Multiset = list[tuple[IndRigidObject, int]]


def exchange_middle_terms(T: ClusterTiltingObject, k: int, B: ExchangeMatrix) -> tuple[Multiset, Multiset]:
    """Middle terms of the two exchange triangles at summand ``k``.

    The multiplicity of T_j in either middle term is the number of arrows between
    j and k in the quiver of T, read off the exchange matrix that was mutated in
    step with T.  Which term is which is fixed later by certification.
    """
    col = [B.b[j][k - 1] for j in range(B.n)]
    first = [(T[j], col[j]) for j in range(B.n) if col[j] > 0]
    second = [(T[j], -col[j]) for j in range(B.n) if col[j] < 0]
    return first, second


def _hom_into(cat, M, terms: Multiset) -> int:
    return sum(m * cat.hom_dim_C(M, X) for X, m in terms)


def _hom_from(cat, terms: Multiset, M) -> int:
    return sum(m * cat.hom_dim_C(X, M) for X, m in terms)


def certify_middle_terms(cat: ClusterCategory, T: ClusterTiltingObject, k: int,
                         Tk_star: IndRigidObject, terms: tuple[Multiset, Multiset]) -> tuple[Multiset, Multiset]:
    """Orient (B, B') so that B -> T_k* and B' -> T_k are add(T')-approximations.

    Every other summand T_j must satisfy the dimension inequalities forced by
    the triangles T_k -> B -> T_k* and T_k* -> B' -> T_k: the approximation maps
    are onto on Hom(T_j, -), and the left maps out of T_k, T_k* are onto on
    Hom(-, T_j).  Raises CertificationError if neither orientation passes.
    """
    Tk = T[k - 1]
    others = [X for i, X in enumerate(T) if i != k - 1]

    def fits(B: Multiset, Bp: Multiset) -> bool:
        for Tj in others:
            into_b, into_bp = _hom_into(cat, Tj, B), _hom_into(cat, Tj, Bp)
            to_k, to_star = cat.hom_dim_C(Tj, Tk), cat.hom_dim_C(Tj, Tk_star)
            if not (to_star <= into_b <= to_k + to_star and to_k <= into_bp <= to_k + to_star):
                return False
            if _hom_from(cat, B, Tj) < cat.hom_dim_C(Tk, Tj):
                return False
            if _hom_from(cat, Bp, Tj) < cat.hom_dim_C(Tk_star, Tj):
                return False
        return True

    first, second = terms
    for cand in ((first, second), (second, first)):
        if fits(*cand):
            return cand
    raise CertificationError(f"middle terms for exchange of {Tk} and {Tk_star} fail the approximation bounds")


def exchange_compatibility_check(cat: ClusterCategory, pair, middle: tuple[Multiset, Multiset],
                                 M: IndRigidObject) -> bool:
    X, Xs = pair
    B, Bp = middle
    SM = cat.shift(M)
    if SM == X or SM == Xs:
        return True
    lhs = cat.hom_dim_C(M, X) + cat.hom_dim_C(M, Xs)
    return lhs == max(_hom_into(cat, M, B), _hom_into(cat, M, Bp))


@dataclass
class ExchangeStep:
    before: ClusterTiltingObject
    k: int
    pair: tuple[IndRigidObject, IndRigidObject]
    middle: tuple[Multiset, Multiset]

    @property
    def transjective(self) -> bool:
        return self.pair[0].is_transjective and self.pair[1].is_transjective


def exchange_steps(cat: ClusterCategory, word, window: int, B: ExchangeMatrix | None = None,
                   T: ClusterTiltingObject | None = None) -> list[ExchangeStep]:
    """Mutate {P_i} along ``word`` with the exchange matrix in step, recording certified pairs."""
    T = T or projectives(cat)
    B = B or cat.B
    steps = []
    for k in word:
        terms = exchange_middle_terms(T, k, B)
        T2, pair = mutate_ct(cat, T, k, window)
        middle = certify_middle_terms(cat, T, k, pair[1], terms)
        steps.append(ExchangeStep(T, k, pair, middle))
        T, B = T2, mutate_matrix(B, k)
    return steps
