"""Exact integer and rational linear algebra.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Integer matrices are plain lists of rows of Python ints, so
entries never overflow.
"""

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVector = tuple[int, ...]
IntMatrix = list[list[int]]


def parse_rational(value) -> Fraction:
    """Parse an int, Fraction or a string such as ``"3/2"`` or ``"-4"``.

    Floats are rejected: they would silently lose exactness.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not a rational number: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise ValueError(f"not a rational number: {value!r}")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence) -> IntVector:
    """Smallest positive integer multiple of a rational vector, made primitive.

    The zero vector is returned unchanged.
    """
    v = [Fraction(x) for x in v]
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    w = [int(x * lcm) for x in v]
    if not any(w):
        return tuple(w)
    return primitive(w)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for row in A]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)]


def determinant(M: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination.

    Works for integer and Fraction entries alike; integer input gives an
    integer result.
    """
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    A[i][j] = num // prev
                else:
                    A[i][j] = num / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def row_reduce(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and the pivot columns."""
    A = [[Fraction(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [x / piv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(row_reduce(M)[1])


def rational_kernel(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}`` over the rationals."""
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_reduce(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve_linear(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of ``A x = b`` (free variables set to 0), or None."""
    ncols = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x


def hermite_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == U @ A``.  ``H`` is in
    row echelon form, pivots are positive and the entries above each pivot lie
    in ``[0, pivot)``.  Zero rows come last.  ``H`` is unique for the orbit
    ``GL(m, Z) @ A``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(map(int, row)) for row in A]
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][j]
            if b == 0:
                continue
            a = H[r][j]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            Hr, Hi = H[r], H[i]
            H[r] = [x * s + y * t for s, t in zip(Hr, Hi)]
            H[i] = [p * s + q * t for s, t in zip(Hr, Hi)]
            Ur, Ui = U[r], U[i]
            U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
            U[i] = [p * s + q * t for s, t in zip(Ur, Ui)]
        piv = H[r][j]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            f = H[i][j] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        r += 1
    return H, U


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``S == U @ A @ V`` with unimodular ``U`` and ``V``.

    The diagonal of ``S`` is non-negative and each entry divides the next.
    """
    S, U, V, _ = _smith(A)
    return S, U, V


def _smith(A):
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)
    Vinv = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        # col_dst += f * col_src; inverse acts on rows of Vinv
        for row in S:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]
        Vinv[src] = [a - f * b for a, b in zip(Vinv[src], Vinv[dst])]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = S[t][t]
            done = True
            for i in range(t + 1, m):
                q = S[i][t] // piv
                if q:
                    add_row(i, t, -q)
                if S[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = S[t][j] // piv
                if q:
                    add_col(j, t, -q)
                if S[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return S, U, V, Vinv


def elementary_divisors(A: Sequence[Sequence[int]]) -> list[int]:
    S = smith_normal_form(A)[0]
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def is_saturated(rows: Sequence[Sequence[int]]) -> bool:
    """True when the rows span a direct summand of ``Z^n`` (all invariants 1)."""
    if not rows:
        return True
    return all(d == 1 for d in elementary_divisors(rows))


def saturate(rows: Sequence[Sequence[int]]) -> list[IntVector]:
    """Basis of ``span_Q(rows) ∩ Z^n`` in Hermite normal form."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not rows:
        return []
    S, _, _, Vinv = _smith(rows)
    r = sum(1 for i in range(min(len(S), len(S[0]))) if S[i][i])
    H, _ = hermite_normal_form(Vinv[:r])
    return [tuple(row) for row in H if any(row)]


def saturated_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[IntVector]:
    """Basis of the integer kernel ``{v in Z^n : A v = 0}``.

    The basis spans a saturated sublattice, so every integer solution is an
    integer combination of it.  Rows are in Hermite normal form.
    """
    if ncols is None:
        ncols = len(A[0])
    kernel = [clear_denominators(v) for v in rational_kernel(A, ncols)]
    return saturate(kernel)


def complete_to_unimodular(rows: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Extend a saturated basis to a unimodular ``n x n`` matrix (rows first)."""
    rows = [list(map(int, r)) for r in rows]
    if not is_saturated(rows):
        raise ValueError("rows do not span a saturated sublattice")
    if not rows:
        return identity(n)
    S, U, V, Vinv = _smith(rows)
    # rows = U^-1 [I 0] Vinv, so the last n-k rows of Vinv complete the basis.
    return rows + [list(r) for r in Vinv[len(rows):]]
