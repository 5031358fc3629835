"""Short-vector machinery: Fincke-Pohst enumeration on definite lattices,
bounded witness search on indefinite ones, and the D'/D'' classification of
norm -2 vectors by whether half of them lies in the dual.
"""

import math
from fractions import Fraction

from .errors import NotDefinite


def short_vectors(L, bound):
    """All nonzero vectors of |norm| <= bound in a definite lattice, up to
    sign.  Returns (vector, norm) pairs sorted by (|norm|, vector); norms
    carry the sign of the lattice.
    """
    n_plus, n_minus = L.signature()
    if n_plus and n_minus:
        raise NotDefinite("Fincke-Pohst needs a definite lattice")
    sign = 1 if n_minus == 0 else -1
    gram = [[sign * x for x in row] for row in L.gram]
    n = L.rank
    # Lagrange decomposition: norm = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        piv = q[i][i]
        if piv <= 0:
            raise NotDefinite("gram matrix is not definite")
        for j in range(i + 1, n):
            q[i][j] = q[i][j] / piv
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= piv * q[i][k] * q[i][l]
    out = []
    coords = [0] * n

    def descend(i, remaining):
        """Choose coords[i] given the budget left for levels <= i."""
        if i < 0:
            if any(coords):
                out.append(tuple(coords))
            return
        center = sum(q[i][j] * coords[j] for j in range(i + 1, n))
        radius = math.sqrt(float(remaining / q[i][i])) if remaining > 0 else 0.0
        lo = math.floor(-float(center) - radius) - 1
        hi = math.ceil(-float(center) + radius) + 1
        for x in range(lo, hi + 1):
            coords[i] = x
            used = q[i][i] * (x + center) ** 2
            if used <= remaining:
                descend(i - 1, remaining - used)
        coords[i] = 0

    descend(n - 1, Fraction(bound))
    result = []
    seen = set()
    for v in out:
        neg = tuple(-c for c in v)
        canon = v if v > neg else neg
        if canon in seen:
            continue
        seen.add(canon)
        norm = _int_norm(L.gram, canon)
        if 0 < abs(norm) <= bound:
            result.append((canon, norm))
    result.sort(key=lambda t: (abs(t[1]), t[0]))
    return result


def _int_norm(gram, v):
    n = len(v)
    total = 0
    for i in range(n):
        if v[i]:
            row = gram[i]
            total += v[i] * sum(row[j] * v[j] for j in range(n))
    return total


def witness_vector(L, target_norm, box):
    """A vector of the given norm with coordinates in [-box, box], or None.

    Semidecision only: None does not prove nonexistence.  The search runs
    in increasing sup-norm shells so cheap witnesses are found first.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    n = L.rank
    gram = L.gram
    coords = [0] * n

    def dfs(i, shell, touched):
        if i == n:
            if touched and any(coords) and _int_norm(gram, coords) == target_norm:
                return tuple(coords)
            return None
        for x in _shell_range(shell):
            coords[i] = x
            hit = dfs(i + 1, shell, touched or abs(x) == shell)
            if hit:
                return hit
        coords[i] = 0
        return None

    for shell in range(0, box + 1):
        coords = [0] * n
        hit = dfs(0, shell, shell == 0)
        if hit:
            # canonical sign: first nonzero coordinate positive
            first = next(c for c in hit if c)
            return hit if first > 0 else tuple(-c for c in hit)
    return None


def _shell_range(shell):
    # 0, 1, -1, ..., shell, -shell: deterministic, small values first
    yield 0
    for v in range(1, shell + 1):
        yield v
        yield -v


def disc_class_of_vector(L, lam):
    """(class of lam/2 in D_L, flag) where the flag says lam/2 is in the
    dual.  When the flag is False the class is None.
    """
    half = [Fraction(c, 2) for c in lam]
    if not L.in_dual(half):
        return None, False
    return L.disc_class(half), True
