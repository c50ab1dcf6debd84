"""Denominator vectors from the cluster category and the two verification harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import LaurentPolynomial, denominator_vector
from .repcat import ClusterCategory, IndRigidObject
from .seeds import explore, format_word, mutate_along, root_seed
from .tilting import (
    ClusterTiltingObject,
    MIsShiftedSummand,
    WindowExhausted,
    dim_vector_tau_rigid,
    mutate_ct,
    mutate_ct_along,
    projectives,
)
from .tubes import Wing, region_membership


@dataclass
class VerificationReport:
    name: str
    quiver: str
    parameters: dict
    violations: list[dict] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    tables: list[dict] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "FAIL" if self.violations else "PASS"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "quiver": self.quiver,
            "parameters": self.parameters,
            "status": self.status,
            "counts": self.counts,
            "violations": self.violations,
        }


def _correction_applies(cat: ClusterCategory, Ti: IndRigidObject, M: IndRigidObject) -> bool:
    if not (Ti.is_regular and M.is_regular) or Ti.coord.tube != M.coord.tube:
        return False
    t = cat.tube_rank(Ti.coord.tube)
    if t < 2 or Ti.coord.b != t - 1:
        return False
    tau_ti = Ti.coord.shifted(1, t)
    return not region_membership(M.coord, Wing(tau_ti), t)


def denominator_from_category(cat: ClusterCategory, T: ClusterTiltingObject, M: IndRigidObject) -> tuple[int, ...]:
    """Denominator of the variable attached to M with respect to the seed attached to shift(T)."""
    for i, X in enumerate(T, start=1):
        if cat.shift(X) == M:
            raise MIsShiftedSummand(f"{M} is the shift of summand {i} ({X})")
    out = []
    for Ti in T:
        h = cat.hom_dim_C(Ti, M)
        if _correction_applies(cat, Ti, M):
            h -= 1
        out.append(h)
    return tuple(out)


def initial_denominators(n: int) -> list[tuple[int, ...]]:
    return [tuple(-1 if j == i else 0 for j in range(n)) for i in range(n)]


def _collisions(items) -> list[tuple[str, str, tuple]]:
    """Pairs of distinct labels sharing a vector, reported once per pair."""
    first: dict[tuple, str] = {}
    out = []
    for label, vec in items:
        vec = tuple(vec)
        other = first.get(vec)
        if other is None:
            first[vec] = label
        elif other != label:
            out.append((other, label, vec))
    return out


def _inventory(cat: ClusterCategory, window: int, inventory) -> list[tuple[str, IndRigidObject]]:
    """Labelled inventory; an override may mix bare objects and (label, object) pairs."""
    if inventory is None:
        inventory = cat.enumerate_rigid(window)
    return [it if isinstance(it, tuple) else (it.label, it) for it in inventory]


def verify_distinct_dimvectors(cat: ClusterCategory, ct_words, window: int, inventory=None,
                               quiver_name: str = "") -> VerificationReport:
    """Dimension vectors over End(T) separate the rigid inventory, for each T reached by a word."""
    inv = _inventory(cat, window, inventory)
    rep = VerificationReport("dimvec", quiver_name or cat.B.__repr__(),
                             {"window": window, "words": [format_word(w) for w in ct_words]})
    pairs = modules = 0
    base = projectives(cat)
    for word in ct_words:
        T = mutate_ct_along(cat, base, word, window)
        excluded = {cat.shift(X) for X in T}
        items = []
        for label, M in inv:
            if M in excluded:
                continue
            vec = dim_vector_tau_rigid(cat, T, M)
            items.append((label, vec))
            rep.tables.append({"word": format_word(word), "object": label, "dimVector": list(vec)})
        modules += len(items)
        pairs += len(items) * (len(items) - 1) // 2
        for a, b, vec in _collisions(items):
            rep.violations.append({"word": format_word(word), "tilting": T.to_dict()["summands"],
                                   "objects": [a, b], "dimVector": list(vec)})
    rep.counts = {"tiltingObjects": len(ct_words), "modulesChecked": modules,
                  "pairsChecked": pairs, "inventory": len(inv)}
    return rep


@dataclass
class PairedVariable:
    word: tuple[int, ...]
    slot: int
    variable: LaurentPolynomial
    obj: IndRigidObject


def paired_exploration(cat: ClusterCategory, seed_word, depth: int, window: int):
    """Seed and cluster-tilting object reached by ``seed_word``, and all variables within
    ``depth`` of that seed (expanded in its cluster) paired with rigid objects."""
    n = cat.n
    Y = mutate_along(root_seed(cat.B), seed_word)
    T = mutate_ct_along(cat, projectives(cat), seed_word, window)
    ex = explore(root_seed(Y.B), depth)
    tilts: dict[tuple[int, ...], ClusterTiltingObject] = {(): T}
    paired = []
    for word, seed in ex.seeds:
        if word not in tilts:
            tilts[word], _ = mutate_ct(cat, tilts[word[:-1]], word[-1], window)
        Tw = tilts[word]
        for k in range(n):
            paired.append(PairedVariable(word, k, seed.cluster[k], cat.shift(Tw[k])))
    return Y, T, ex, paired


def verify_weak_denominator(cat: ClusterCategory, seed_word, depth: int, window: int,
                            quiver_name: str = "") -> VerificationReport:
    n = cat.n
    seed_word = tuple(seed_word)
    rep = VerificationReport("denom", quiver_name or repr(cat.B),
                             {"seedWord": format_word(seed_word), "depth": depth, "window": window})
    Y, T, ex, paired = paired_exploration(cat, seed_word, depth, window)
    shifted = {cat.shift(X): i for i, X in enumerate(T)}
    var_to_obj: dict[LaurentPolynomial, IndRigidObject] = {}
    obj_to_var: dict[IndRigidObject, LaurentPolynomial] = {}
    agree = 0
    for pv in paired:
        prev = var_to_obj.setdefault(pv.variable, pv.obj)
        if prev != pv.obj:
            rep.violations.append({"kind": "pairing", "word": format_word(pv.word), "slot": pv.slot + 1,
                                   "variable": repr(pv.variable), "objects": [prev.label, pv.obj.label]})
        prev_var = obj_to_var.setdefault(pv.obj, pv.variable)
        if prev_var != pv.variable:
            rep.violations.append({"kind": "pairing", "word": format_word(pv.word), "slot": pv.slot + 1,
                                   "object": pv.obj.label, "variables": [repr(prev_var), repr(pv.variable)]})
    for var, M in sorted(var_to_obj.items(), key=lambda kv: kv[0].sorted_terms()):
        symbolic = denominator_vector(var)
        if M in shifted:
            categorical = initial_denominators(n)[shifted[M]]
        else:
            categorical = denominator_from_category(cat, T, M)
            if min(categorical) < 0:
                rep.violations.append({"kind": "negative", "object": M.label, "den": list(categorical)})
        rep.tables.append({"word": format_word(seed_word), "object": M.label,
                           "dims": list(M.dims) if M.dims else None,
                           "symbolicDen": list(symbolic), "categoricalDen": list(categorical)})
        if tuple(symbolic) != tuple(categorical):
            rep.violations.append({"kind": "mismatch", "object": M.label, "variable": repr(var),
                                   "symbolicDen": list(symbolic), "categoricalDen": list(categorical)})
        else:
            agree += 1
    checked, collisions = distinct_denominators(cat, T, window)
    rep.violations += collisions
    rep.counts = {"seeds": len(ex.seeds), "variables": len(var_to_obj), "agreements": agree,
                  "inventory": checked - n, "pairsChecked": checked * (checked - 1) // 2}
    return rep


def distinct_denominators(cat: ClusterCategory, T: ClusterTiltingObject, window: int) -> tuple[int, list[dict]]:
    """Categorical denominators of the windowed inventory off add ΣT, together with the
    initial vectors -e_i, must be pairwise distinct.  Returns (vectors compared, collisions)."""
    shifted = {cat.shift(X) for X in T}
    items = [(f"initial{i + 1}", v) for i, v in enumerate(initial_denominators(cat.n))]
    for M in cat.enumerate_rigid(window):
        if M not in shifted:
            items.append((M.label, denominator_from_category(cat, T, M)))
    return len(items), [{"kind": "collision", "objects": [a, b], "den": list(vec)}
                        for a, b, vec in _collisions(items)]


def with_window_growth(fn, window: int, max_doublings: int = 3):
    """Call ``fn(window)``, doubling the window on WindowExhausted; returns (result, window used)."""
    for _ in range(max_doublings + 1):
        try:
            return fn(window), window
        except WindowExhausted:
            window = max(1, 2 * window)
    raise WindowExhausted(window, f"complement search failed up to window {window}")
