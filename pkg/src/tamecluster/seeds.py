"""Seeds, seed mutation and bounded exploration of the exchange graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .laurent import LaurentPolynomial
from .quiver import ExchangeMatrix, mutate_matrix

Word = tuple[int, ...]


@dataclass(frozen=True)
class Seed:
    B: ExchangeMatrix
    cluster: tuple[LaurentPolynomial, ...]
    history: Word = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.B.n


def root_seed(B: ExchangeMatrix) -> Seed:
    n = B.n
    return Seed(B, tuple(LaurentPolynomial.variable(n, i) for i in range(n)))


def _monomial_product(cluster, exps) -> LaurentPolynomial:
    out = LaurentPolynomial.constant(cluster[0].nvars, 1)
    for x, e in zip(cluster, exps):
        if e:
            out = out * x**e
    return out


@lru_cache(maxsize=1 << 17)
def _exchange(B: ExchangeMatrix, cluster: tuple, k: int) -> LaurentPolynomial:
    col = [B.b[i][k] for i in range(B.n)]
    plus = _monomial_product(cluster, [max(b, 0) for b in col])
    minus = _monomial_product(cluster, [max(-b, 0) for b in col])
    return (plus + minus).div_exact(cluster[k])


def mutate_seed(s: Seed, k: int) -> Seed:
    """Mutate at the 1-based index ``k``; raises NotDivisible if the Laurent property breaks."""
    if not 1 <= k <= s.n:
        raise IndexError(f"mutation index {k} outside 1..{s.n}")
    new = _exchange(s.B, s.cluster, k - 1)
    cluster = s.cluster[: k - 1] + (new,) + s.cluster[k:]
    return Seed(mutate_matrix(s.B, k), cluster, s.history + (k,))


def mutate_along(s: Seed, word) -> Seed:
    for k in word:
        s = mutate_seed(s, k)
    return s


def words(n: int, depth: int):
    """All words of length <= depth over 1..n without immediate repeats, breadth-first."""
    layer: list[Word] = [()]
    yield ()
    for _ in range(depth):
        nxt = []
        for w in layer:
            for k in range(1, n + 1):
                if not w or w[-1] != k:
                    nxt.append(w + (k,))
        yield from nxt
        layer = nxt


@dataclass
class Exploration:
    seeds: list[tuple[Word, Seed]]
    variables: list[LaurentPolynomial]
    # first word (in lexicographic order) at which each variable appears, and its slot
    first_seen: dict[LaurentPolynomial, tuple[Word, int]]


def explore(root: Seed, depth: int) -> Exploration:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    reached: dict[Word, Seed] = {(): root}
    frontier = [((), root)]
    for _ in range(depth):
        nxt = []
        for w, s in frontier:
            for k in range(1, root.n + 1):
                if w and w[-1] == k:
                    continue
                child = mutate_seed(s, k)
                reached[w + (k,)] = child
                nxt.append((w + (k,), child))
        frontier = nxt
    ordered = sorted(reached.items())
    first_seen: dict[LaurentPolynomial, tuple[Word, int]] = {}
    for w, s in ordered:
        for i, x in enumerate(s.cluster):
            first_seen.setdefault(x, (w, i))
    variables = sorted(first_seen, key=lambda p: p.sorted_terms())
    return Exploration(ordered, variables, first_seen)


def format_word(word) -> str:
    return ",".join(str(k) for k in word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))
