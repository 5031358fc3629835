"""Finite 2-elementary quadratic forms (D, q, b) on (Z/2)^a.

q takes values in (1/2)Z mod 2Z, b in (1/2)Z mod Z.  Forms are stored by
generator data; values on all 2^a elements are computed on demand and cached.
"""

from fractions import Fraction
from itertools import product

from .exactalg import CycEight
from .errors import DegenerateForm, NotIsotropic, BoundExceeded, NotIsometry

HALF = Fraction(1, 2)


def _f2_rank(m):
    rows = [list(r) for r in m]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % 2), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % 2:
                rows[r] = [(x + y) % 2 for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class FiniteQuadraticForm:
    def __init__(self, a, q_gen, b):
        self.a = a
        self.q_gen = [Fraction(x) % 2 for x in q_gen]
        self.b_mat = [[Fraction(x) % 1 for x in row] for row in b]
        if len(self.q_gen) != a or len(self.b_mat) != a:
            raise ValueError("generator data has wrong length")
        for i in range(a):
            if len(self.b_mat[i]) != a:
                raise ValueError("bilinear matrix must be square")
            for j in range(a):
                if self.b_mat[i][j] != self.b_mat[j][i]:
                    raise ValueError("bilinear matrix must be symmetric")
                if self.b_mat[i][j] not in (0, HALF):
                    raise ValueError("b values must be 0 or 1/2 mod 1")
            if self.q_gen[i] % 1 != self.b_mat[i][i]:
                raise ValueError("q(g) mod 1 must equal b(g,g)")
            if self.q_gen[i] not in (0, HALF, 1, Fraction(3, 2)):
                raise ValueError("q values must lie in (1/2)Z mod 2Z")
        self._qcache = None

    def elements(self):
        return list(product((0, 1), repeat=self.a))

    def q(self, x):
        total = Fraction(0)
        for i in range(self.a):
            if x[i]:
                total += self.q_gen[i]
                for j in range(i + 1, self.a):
                    if x[j]:
                        total += 2 * self.b_mat[i][j]
        return total % 2

    def b(self, x, y):
        total = Fraction(0)
        for i in range(self.a):
            if x[i]:
                for j in range(self.a):
                    if y[j]:
                        total += self.b_mat[i][j]
        return total % 1

    def q_values(self):
        if self._qcache is None:
            self._qcache = {x: self.q(x) for x in self.elements()}
        return self._qcache

    def delta(self):
        return 1 if any(v % 1 != 0 for v in self.q_values().values()) else 0

    def is_nondegenerate(self):
        """b is nondegenerate iff 2b is nonsingular over F2."""
        m = [[int(2 * x) % 2 for x in row] for row in self.b_mat]
        return _f2_rank(m) == self.a

    def direct_sum(self, other):
        a = self.a + other.a
        q_gen = self.q_gen + other.q_gen
        b = [[Fraction(0)] * a for _ in range(a)]
        for i in range(self.a):
            for j in range(self.a):
                b[i][j] = self.b_mat[i][j]
        for i in range(other.a):
            for j in range(other.a):
                b[self.a + i][self.a + j] = other.b_mat[i][j]
        return FiniteQuadraticForm(a, q_gen, b)

    def to_json_dict(self):
        def enc(x):
            return str(x) if x.denominator != 1 else int(x)
        return {
            "a": self.a,
            "b": [[enc(x) for x in row] for row in self.b_mat],
            "q_gen": [enc(x) for x in self.q_gen],
        }

    def __eq__(self, other):
        return (isinstance(other, FiniteQuadraticForm)
                and self.q_gen == other.q_gen and self.b_mat == other.b_mat)

    def __repr__(self):
        return f"FiniteQuadraticForm(a={self.a})"


def form_from_json_dict(data):
    def dec(x):
        return Fraction(x)
    return FiniteQuadraticForm(
        data["a"],
        [dec(x) for x in data["q_gen"]],
        [[dec(x) for x in row] for row in data["b"]],
    )


class SubgroupSpec:
    """A subgroup of (Z/2)^a given by generators; the span is stored reduced."""

    def __init__(self, generators, a=None):
        self.a = a if a is not None else (len(generators[0]) if generators else 0)
        gens = []
        span = {tuple([0] * self.a)}
        for g in generators:
            g = tuple(c % 2 for c in g)
            if g in span:
                continue
            gens.append(g)
            span |= {tuple((x + y) % 2 for x, y in zip(g, v)) for v in span}
        self.generators = gens
        self._span = frozenset(span)

    @property
    def rank(self):
        return len(self.generators)

    def elements(self):
        return sorted(self._span)

    def order(self):
        return len(self._span)

    def __contains__(self, x):
        return tuple(c % 2 for c in x) in self._span

    def __eq__(self, other):
        return isinstance(other, SubgroupSpec) and self._span == other._span

    def __repr__(self):
        return f"SubgroupSpec(rank={self.rank}, a={self.a})"


# ---------------------------------------------------------------------------

def milgram_signature(q):
    """sigma mod 8 from the Gauss sum: sum e^(pi i q(x)) = sqrt|D| e^(2 pi i sigma/8)."""
    total = CycEight.integer(0)
    for v in q.q_values().values():
        total = total + CycEight.zeta_power(int(4 * v))
    if total.is_zero():
        raise DegenerateForm("Gauss sum vanishes")
    a = q.a
    mag = CycEight.integer(2) ** (a // 2)
    if a % 2:
        mag = mag * CycEight.sqrt2()
    for sigma in range(8):
        if total == mag * CycEight.zeta_power(sigma):
            return sigma
    raise DegenerateForm("Gauss sum has the wrong magnitude")


def parity_delta(q):
    return q.delta()


def form_invariants(q):
    if not q.is_nondegenerate():
        raise DegenerateForm("bilinear form is degenerate")
    return (q.a, q.delta(), milgram_signature(q))


def forms_isometric(q1, q2):
    """2-elementary nondegenerate forms are classified by (a, delta, sigma)."""
    return form_invariants(q1) == form_invariants(q2)


def iter_isotropic_subgroups(q, max_order):
    """Subgroups on which q vanishes identically, of order <= max_order,
    in a deterministic order (each subgroup yielded once via its greedy basis).
    """
    qv = q.q_values()
    candidates = sorted(x for x, v in qv.items() if v == 0 and any(x))

    def extend(gens, span):
        yield SubgroupSpec(list(gens), q.a)
        if 2 * len(span) > max_order:
            return
        last = gens[-1] if gens else None
        for c in candidates:
            if last is not None and c <= last:
                continue
            if c in span:
                continue
            if any(q.b(c, g) != 0 for g in gens):
                continue
            coset = [tuple((x + y) % 2 for x, y in zip(c, s)) for s in span]
            if min(coset) != c:
                continue
            yield from extend(gens + [c], span | set(coset))

    yield from extend([], {tuple([0] * q.a)})


def isotropic_subgroups(q, max_order):
    return list(iter_isotropic_subgroups(q, max_order))


def quotient_form(q, G):
    """The induced form on Gperp/G for an isotropic subgroup G."""
    if any(q.q(g) != 0 for g in G.elements()):
        raise NotIsotropic("q does not vanish on the subgroup")
    gens = G.generators
    perp = [x for x in q.elements() if all(q.b(x, g) == 0 for g in gens)]
    reps = []
    span = set(G.elements())
    for x in sorted(perp):
        if x in span:
            continue
        reps.append(x)
        span |= {tuple((a + b) % 2 for a, b in zip(x, s)) for s in span}
    # q descends: check independence of coset representative
    for r in reps:
        for g in G.elements():
            shifted = tuple((a + b) % 2 for a, b in zip(r, g))
            if q.q(shifted) != q.q(r):
                raise NotIsotropic("q does not descend to the quotient")
    a_new = len(reps)
    q_gen = [q.q(r) for r in reps]
    b = [[q.b(r, s) for s in reps] for r in reps]
    return FiniteQuadraticForm(a_new, q_gen, b)


def orthogonal_group_order(q, bound=8):
    """|O(q)| by backtracking over generator images."""
    if q.a > bound:
        raise BoundExceeded(f"a = {q.a} exceeds the search bound {bound}")
    if q.a == 0:
        return 1
    elements = q.elements()
    qv = q.q_values()
    count = 0
    images = []

    def independent(x):
        span = {tuple([0] * q.a)}
        for g in images:
            span |= {tuple((a + b) % 2 for a, b in zip(g, v)) for v in span}
        return x not in span

    def place(i):
        nonlocal count
        if i == q.a:
            count += 1
            return
        for x in elements:
            if qv[x] != q.q_gen[i]:
                continue
            if any(q.b(x, images[j]) != q.b_mat[i][j] for j in range(i)):
                continue
            if not independent(x):
                continue
            images.append(x)
            place(i + 1)
            images.pop()

    place(0)
    return count


def isometry_witness(q1, q2):
    """An explicit generator-image table carrying q1 to q2, or None.

    Brute-force; intended for cross-checking forms_isometric on small forms.
    """
    if q1.a != q2.a:
        return None
    a = q1.a
    if a == 0:
        return []
    elements = q2.elements()
    qv = q2.q_values()
    images = []

    def independent(x):
        span = {tuple([0] * a)}
        for g in images:
            span |= {tuple((p + r) % 2 for p, r in zip(g, v)) for v in span}
        return x not in span

    def place(i):
        if i == a:
            return True
        for x in elements:
            if qv[x] != q1.q_gen[i]:
                continue
            if any(q2.b(x, images[j]) != q1.b_mat[i][j] for j in range(i)):
                continue
            if not independent(x):
                continue
            images.append(x)
            if place(i + 1):
                return True
            images.pop()
        return False

    if place(0):
        return list(images)
    return None


# ---------------------------------------------------------------------------
# induced discriminant actions of lattice isometries

def induced_disc_action(L, gamma):
    """The F2 matrix of the action of gamma in O(L) on the D_L generators.

    Raises NotIsometry if gamma does not preserve the gram matrix; the
    result is checked to preserve q_L.
    """
    from .lattice import induced_disc_matrix, discriminant_form

    m = induced_disc_matrix(L, gamma)
    form = discriminant_form(L)
    a = form.a
    cols = [tuple(m[i][j] % 2 for i in range(a)) for j in range(a)]
    for j in range(a):
        if form.q(cols[j]) != form.q_gen[j]:
            raise NotIsometry("induced map fails to preserve q")
        for i in range(a):
            if form.b(cols[i], cols[j]) != form.b_mat[i][j]:
                raise NotIsometry("induced map fails to preserve b")
    return m


def compose_actions(m1, m2):
    """Matrix of action m1 after m2, over F2."""
    n = len(m1)
    return [[sum(m1[i][k] * m2[k][j] for k in range(len(m2))) % 2
             for j in range(len(m2[0]))] for i in range(n)]


def matrix_group_order(generators):
    """Order of the group of F2 matrices generated by the given list."""
    if not generators:
        return 1
    n = len(generators[0])
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    gens = [tuple(tuple(x % 2 for x in row) for row in g) for g in generators]
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = tuple(
                    tuple(sum(m[i][k] * g[k][j] for k in range(n)) % 2
                          for j in range(n))
                    for i in range(n)
                )
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
        frontier = new
    return len(seen)
