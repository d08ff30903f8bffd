import logging
from dataclasses import dataclass

from algebra.matrices import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnfResult:
    """
    Smith normal form U·A·V = D of an integer matrix.

    The inverses of U and V are carried along because homology generators
    and cycle coordinates need them and they come for free from the
    elementary operations.

    Attributes:
        U (IntMatrix): Unimodular row transform (rows x rows).
        D (IntMatrix): Diagonal, nonnegative, d_1 | d_2 | ... with zeros trailing.
        V (IntMatrix): Unimodular column transform (cols x cols).
        U_inv (IntMatrix): Inverse of U.
        V_inv (IntMatrix): Inverse of V.
    """
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self):
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def divisors(self):
        """Nonzero diagonal entries, in divisibility order"""
        return [d for d in self.diagonal if d != 0]


class _Reducer:
    """Dense working state for the elementary row/column operations"""

    def __init__(self, dense, rows, cols):
        self.a = dense
        self.m = rows
        self.n = cols
        self.u = [[int(i == j) for j in range(rows)] for i in range(rows)]
        self.u_inv = [[int(i == j) for j in range(rows)] for i in range(rows)]
        self.v = [[int(i == j) for j in range(cols)] for i in range(cols)]
        self.v_inv = [[int(i == j) for j in range(cols)] for i in range(cols)]

    # row operations act on A and U from the left, on U_inv from the right

    def swap_rows(self, i, j):
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.u_inv:
            row[i], row[j] = row[j], row[i]

    def add_row(self, target, source, factor):
        """row_target += factor * row_source"""
        if factor == 0:
            return
        a_src, a_tgt = self.a[source], self.a[target]
        for k in range(self.n):
            if a_src[k]:
                a_tgt[k] += factor * a_src[k]
        u_src, u_tgt = self.u[source], self.u[target]
        for k in range(self.m):
            if u_src[k]:
                u_tgt[k] += factor * u_src[k]
        for row in self.u_inv:
            if row[target]:
                row[source] -= factor * row[target]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.u_inv:
            row[i] = -row[i]

    # column operations act on A and V from the right, on V_inv from the left

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def add_col(self, target, source, factor):
        """col_target += factor * col_source"""
        if factor == 0:
            return
        for row in self.a:
            if row[source]:
                row[target] += factor * row[source]
        for row in self.v:
            if row[source]:
                row[target] += factor * row[source]
        src, tgt = self.v_inv[source], self.v_inv[target]
        for k in range(self.n):
            if tgt[k]:
                src[k] -= factor * tgt[k]

    def smallest_pivot(self, t):
        best = None
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                value = row[j]
                if value and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)
        return best


def smith_normal_form(A):
    """
    Compute the Smith normal form of an integer matrix.

    Pivoting always takes the smallest absolute value in the remaining
    block, ties broken by the lowest (row, col), so U and V are a
    deterministic function of A.

    Args:
        A (IntMatrix): Input matrix, possibly empty.

    Returns:
        SnfResult: Transforms with U·A·V = D.
    """
    m, n = A.rows, A.cols
    state = _Reducer(A.to_dense(), m, n)
    a = state.a

    for t in range(min(m, n)):
        while True:
            pivot = state.smallest_pivot(t)
            if pivot is None:
                break
            _, i, j = pivot
            state.swap_rows(t, i)
            state.swap_cols(t, j)
            p = a[t][t]

            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    state.add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    state.add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue

            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            state.add_row(t, offender, 1)

        if a[t][t] < 0:
            state.negate_row(t)
        elif a[t][t] == 0:
            break

    logger.debug(f"Smith form of {m}x{n} matrix computed")
    return SnfResult(
        U=IntMatrix.from_dense(state.u, m),
        D=IntMatrix.from_dense(a, n),
        V=IntMatrix.from_dense(state.v, n),
        U_inv=IntMatrix.from_dense(state.u_inv, m),
        V_inv=IntMatrix.from_dense(state.v_inv, n),
    )
