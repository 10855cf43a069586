"""Exact counting of standard fillings by independent routes.

count_hlf        product formula for straight shapes
count_brute_force  transfer-matrix enumeration of row fill states
count_determinant  integer determinant of inverse-factorial type
count_thick_hook   closed superfactorial form for rectangle-minus-rectangle
macmahon           boxed plane partition product
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial

from .errors import ResourceGuardError
from .shapes import Partition, SkewShape, hook_table

BRUTE_FORCE_LIMIT = 25


def count_hlf(lam) -> int:
    """Number of standard fillings of a straight shape: N! over hook product."""
    lam = Partition(lam)
    if not lam:
        return 1
    num = factorial(lam.size)
    den = hook_table(lam).product()
    assert num % den == 0
    return num // den


def count_brute_force(shape: SkewShape, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Count standard fillings by dynamic programming over row fill states.

    A state records how far each row is filled; entries are added one at a
    time in increasing label order.  Exact but exponential, so shapes with
    more than `limit` cells are refused.
    """
    if shape.size > limit:
        raise ResourceGuardError(
            f"brute force refused for {shape.size} cells (limit {limit})",
            "use count_determinant or count_nhlf",
        )
    lam = shape.outer.parts
    mu = tuple(shape.inner.row(x) for x in range(1, len(lam) + 1))
    full = tuple(lam)

    @lru_cache(maxsize=None)
    def ways(state: tuple[int, ...]) -> int:
        if state == full:
            return 1
        total = 0
        for i, c in enumerate(state):
            if c >= lam[i]:
                continue
            y = c + 1
            # the cell above must already be filled past column y
            if i > 0 and y > mu[i - 1] and y > state[i - 1]:
                continue
            nxt = state[:i] + (c + 1,) + state[i + 1 :]
            total += ways(nxt)
        return total

    result = ways(mu)
    ways.cache_clear()
    return result


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def count_determinant(shape: SkewShape) -> int:
    """Count standard fillings via the inverse-factorial determinant.

    The float-free form scales row i by (lam_i - i + n)! so every entry is
    the integer falling product prod_{t = a_i - b_j + 1}^{a_i + n} t with
    a_i = lam_i - i and b_j = mu_j - j; entries with a_i < b_j vanish
    because the product runs through zero.
    """
    lam = shape.outer.parts
    n = len(lam)
    if n == 0:
        return 1
    a = [lam[i] - (i + 1) for i in range(n)]
    b = [shape.inner.row(j + 1) - (j + 1) for j in range(n)]
    m = []
    for i in range(n):
        row = []
        for j in range(n):
            v = 1
            for t in range(a[i] - b[j] + 1, a[i] + n + 1):
                v *= t
            row.append(v)
        m.append(row)
    det = _bareiss_det(m)
    num = factorial(shape.size) * det
    den = 1
    for i in range(n):
        den *= factorial(a[i] + n)
    assert num % den == 0, "determinant count did not divide evenly"
    return num // den


def superfactorial(n: int) -> int:
    """Phi(n) = 1! 2! ... (n-1)!, with Phi(0) = Phi(1) = 1."""
    if n < 0:
        raise ValueError("superfactorial needs n >= 0")
    out = 1
    cur = 1
    for k in range(1, n):
        cur *= k
        out *= cur
    return out


def macmahon(a: int, b: int, c: int) -> int:
    """Number of lozenge tilings of the a x b x c hexagon (boxed plane partitions)."""
    if min(a, b, c) < 0:
        raise ValueError("box sides must be nonnegative")
    num = superfactorial(a) * superfactorial(b) * superfactorial(c)
    num *= superfactorial(a + b + c)
    den = superfactorial(a + b) * superfactorial(b + c) * superfactorial(a + c)
    assert num % den == 0
    return num // den


def count_thick_hook(a: int, b: int, c: int) -> int:
    """Closed form for the number of standard fillings of (a+c)^(b+c) / a^b."""
    if a < 0 or b < 0 or c < 1:
        raise ValueError("need a, b >= 0 and c >= 1")
    n = c * (a + b + c)
    num = factorial(n) * superfactorial(a) * superfactorial(b)
    num *= superfactorial(c) ** 2 * superfactorial(a + b + c) ** 2
    den = superfactorial(a + b) * superfactorial(a + c) * superfactorial(b + c)
    den *= superfactorial(a + b + 2 * c)
    assert num % den == 0
    return num // den
