"""Integer/rational linear algebra and the cyclotomic ring, checked against
independent oracles (numpy determinants, complex arithmetic)."""

import cmath
import math
import random

import pytest

from k3lat.exactalg import (
    smith_normal_form,
    hermite_normal_form_columns,
    det,
    rational_inverse,
    rational_inertia,
    mat_mul,
    identity_matrix,
    CycEight,
)


def random_matrix(rng, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def test_det_matches_numpy():
    import numpy as np

    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 6)
        m = random_matrix(rng, n)
        expected = round(np.linalg.det(np.array(m, dtype=float)))
        assert det(m) == expected


def test_smith_normal_form_properties():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 6)
        m = random_matrix(rng, n, -6, 6)
        d, u, v, = smith_normal_form(m)
        assert mat_mul(u, mat_mul(m, v)) == d
        # u, v unimodular
        assert abs(det(u)) == 1
        assert abs(det(v)) == 1
        diag = [d[i][i] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
        # divisibility chain, nonnegative
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and (a == 0 or b % a == 0 or b == 0)
        prod = 1
        for x in diag:
            prod *= x
        assert prod == abs(det(m))


def test_hermite_form_lower_triangular():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 5)
        while True:
            m = random_matrix(rng, n, -5, 5)
            if det(m):
                break
        h = hermite_normal_form_columns(m)
        for i in range(n):
            assert h[i][i] > 0
            for j in range(i + 1, n):
                assert h[i][j] == 0
            for j in range(i):
                assert 0 <= h[i][j] < h[i][i]
        prod = 1
        for i in range(n):
            prod *= h[i][i]
        assert prod == abs(det(m))


def test_rational_inverse_round_trip():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 5)
        while True:
            m = random_matrix(rng, n)
            if det(m):
                break
        inv = rational_inverse(m)
        assert mat_mul(m, inv) == identity_matrix(n)


def test_inertia_sylvester():
    """Inertia of G agrees with the signs of numpy eigenvalues."""
    import numpy as np

    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 5)
        b = random_matrix(rng, n, -4, 4)
        g = mat_mul([[b[j][i] for j in range(n)] for i in range(n)], b)
        # make it symmetric but possibly indefinite
        shift = rng.randint(-20, 5)
        for i in range(n):
            g[i][i] += shift
        eig = np.linalg.eigvalsh(np.array(g, dtype=float))
        if any(abs(e) <= 1e-8 for e in eig):
            continue  # skip near-degenerate samples
        expected = (int((eig > 0).sum()), int((eig < 0).sum()), 0)
        assert rational_inertia(g) == expected


def approx(z1, z2, tol=1e-10):
    return abs(z1 - z2) < tol


def test_cyc_eight_against_complex():
    rng = random.Random(17)
    zeta = cmath.exp(1j * cmath.pi / 4)
    for _ in range(200):
        a = CycEight([rng.randint(-8, 8) for _ in range(4)], rng.randint(0, 3))
        b = CycEight([rng.randint(-8, 8) for _ in range(4)], rng.randint(0, 3))
        assert approx(complex(a + b), complex(a) + complex(b))
        assert approx(complex(a * b), complex(a) * complex(b))
        assert approx(complex(a.conjugate()), complex(a).conjugate())


def test_cyc_eight_constants():
    assert approx(complex(CycEight.sqrt2()), math.sqrt(2))
    assert approx(complex(CycEight.zeta_power(2)), 1j)
    assert complex(CycEight.zeta_power(8)) == 1
    assert CycEight.zeta_power(4) == CycEight.integer(-1)
    # sqrt2^2 = 2
    s = CycEight.sqrt2()
    assert s * s == CycEight.integer(2)


def test_cyc_eight_canonical_equality():
    a = CycEight([2, 0, 2, 0], 1)
    b = CycEight([1, 0, 1, 0], 0)
    assert a == b
    assert hash(a) == hash(b)
