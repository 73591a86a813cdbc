"""Small curves shared by the tests, with values checked independently."""

from fractions import Fraction
import math

# label: (ainvs, conductor, torsion)
SMALL = {
    "11a1": ((0, -1, 1, -10, -20), 11, 5),
    "32a": ((0, 0, 0, -1, 0), 32, 4),
    "37a": ((0, 0, 1, -1, 0), 37, 1),
    "14a1": ((1, 0, 1, 4, -6), 14, 6),
    "15a1": ((1, 1, 1, -10, -10), 15, 8),
    "389a": ((0, 1, 1, -2, 0), 389, 1),
}

DESK = [
    (0, -1, 1, -10, -20), (0, 0, 0, -1, 0), (0, 0, 1, -1, 0), (1, 0, 1, 4, -6),
    (1, 1, 1, -10, -10), (0, 1, 1, -2, 0), (1, 0, 0, -45, 81), (1, -1, 1, -3, 3),
    (0, 0, 1, 0, -7), (0, 0, 0, 2, 3), (0, 0, 0, -7, 6), (1, 1, 0, -2, 0),
    (0, -1, 0, -4, 4), (0, 1, 0, 16, 180), (0, 0, 0, -11, 14), (1, 0, 1, -19, 26),
    (1, 1, 1, -135, -660), (0, -14, 0, 13, 0), (0, 196, 0, 11664, 0), (0, -3788, 0, 2500, 0),
]


def brute_count(ainvs, p):
    """#E(F_p) by enumerating every (x, y)."""
    a1, a2, a3, a4, a6 = ainvs
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
                n += 1
    return n


def _add(P, Q, A):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        lam = Fraction(3 * x1 * x1 + A, 2 * y1)
    else:
        lam = Fraction(y2 - y1, x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def brute_torsion(c4, c6, radius=None):
    """Torsion order by searching integral points of small X on Y^2 = X^3 - 27c4 X - 54c6.

    The default radius is four times the Fujiwara bound on the roots of the cubic.
    """
    A, B = -27 * c4, -54 * c6
    if radius is None:
        radius = 4 * (2 * max(math.isqrt(abs(A)) + 1, round(abs(B / 2) ** (1 / 3)) + 1)) + 10
    count = 1
    for X in range(-radius, radius + 1):
        v = X**3 + A * X + B
        if v < 0:
            continue
        y = math.isqrt(v)
        if y * y != v:
            continue
        for Y in {y, -y}:
            P = Q = (X, Y)
            for _ in range(12):
                if Q is None:
                    count += 1
                    break
                Q = _add(Q, P, A)
    return count
