"""Small independent reference computations used only by the tests."""

from fractions import Fraction


def frac_rank(rows) -> int:
    rows = [[Fraction(v) for v in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def naive_hom_dim(M, N) -> int:
    """dim Hom(M, N) from the Kronecker-style commutation equations, one unknown per entry."""
    q = M.quiver
    offs, total = [], 0
    for v in range(q.n):
        offs.append(total)
        total += N.dims[v] * M.dims[v]

    def var(v, r, c):
        return offs[v] + r * M.dims[v] + c

    eqs = []
    for a, (s, t) in enumerate(q.arrows):
        Ma = [[Fraction(int(x.p), int(x.q)) for x in row] for row in M.rows(a)]
        Na = [[Fraction(int(x.p), int(x.q)) for x in row] for row in N.rows(a)]
        # (phi_t M_a - N_a phi_s)[r][c] = 0
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                row = [Fraction(0)] * total
                for k in range(M.dims[t]):
                    row[var(t, r, k)] += Ma[k][c]
                for k in range(N.dims[s]):
                    row[var(s, k, c)] -= Na[r][k]
                eqs.append(row)
    return total - (frac_rank(eqs) if eqs and total else 0)


def count_paths(arrows, i, j) -> int:
    """Number of paths from i to j in an acyclic quiver."""
    if i == j:
        return 1
    return sum(count_paths(arrows, t, j) for s, t in arrows if s == i)


def positive_roots(sym) -> set[tuple[int, ...]]:
    """Positive real roots of a Dynkin diagram given its symmetric Cartan matrix, by reflection closure."""
    n = len(sym)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots, frontier = set(simple), list(simple)
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(n):
                pairing = sum(sym[i][k] * x[k] for k in range(n))
                y = tuple(x[k] - (pairing if k == i else 0) for k in range(n))
                if all(v >= 0 for v in y) and any(y) and y not in roots:
                    roots.add(y)
                    nxt.append(y)
        frontier = nxt
    return roots
