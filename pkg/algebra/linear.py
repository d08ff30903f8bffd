import logging
from fractions import Fraction
from math import lcm

from algebra.errors import DimensionMismatch
from algebra.matrices import IntMatrix, RatMatrix, Ring
from algebra.smith import smith_normal_form

logger = logging.getLogger(__name__)


def _check_rhs(A, b):
    if len(b) != A.rows:
        raise DimensionMismatch(f"Right-hand side of length {len(b)} for {A.rows}x{A.cols} system")


def rref(dense, cols):
    """
    Reduced row echelon form over Q.

    Args:
        dense (list): Rows of exact numbers (copied, not mutated).
        cols (int): Number of columns.

    Returns:
        tuple: (reduced rows, pivot column list)
    """
    rows = [[Fraction(x) for x in row] for row in dense]
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rational_rank(A):
    _, pivots = rref(A.to_dense(), A.cols)
    return len(pivots)


def rational_kernel(A):
    """Basis of ker A over Q as a list of dense Fraction vectors"""
    reduced, pivots = rref(A.to_dense(), A.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(A.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * A.cols
        vector[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[free]
        basis.append(vector)
    return basis


def integer_kernel(A):
    """
    Lattice basis of ker A over Z.

    Args:
        A (IntMatrix): Integer matrix.

    Returns:
        list: Dense integer vectors spanning {x in Z^n : A x = 0}.
    """
    snf = smith_normal_form(A)
    rank = snf.rank
    return [snf.V.column(j) for j in range(rank, A.cols)]


def solve_linear(A, b, ring=None):
    """
    Solve A·x = b exactly.

    Over Z solvability is decided through the Smith form; over Q by
    Gauss-Jordan elimination with free variables set to zero.

    Args:
        A (IntMatrix | RatMatrix): Coefficient matrix.
        b (list): Right-hand side.
        ring (Ring, optional): Defaults to the ring of A.

    Returns:
        list | None: A solution vector, or None when none exists.

    Raises:
        DimensionMismatch: If b does not match the row count of A.
    """
    _check_rhs(A, b)
    ring = Ring.parse(ring) if ring is not None else A.ring
    if ring is Ring.Z:
        return _solve_integer(A, b)
    return _solve_rational(A, b)


def _solve_integer(A, b):
    for value in b:
        if Fraction(value).denominator != 1:
            return None
    b = [int(Fraction(v)) for v in b]
    if isinstance(A, RatMatrix):
        A = IntMatrix(A.rows, A.cols, A.entries())
    snf = smith_normal_form(A)
    ub = snf.U.apply(b)
    divisors = snf.diagonal
    y = [0] * A.cols
    for i, value in enumerate(ub):
        d = divisors[i] if i < len(divisors) else 0
        if d == 0:
            if value != 0:
                return None
        elif value % d:
            return None
        else:
            y[i] = value // d
    return snf.V.apply(y)


def _solve_rational(A, b):
    augmented = [row + [b[i]] for i, row in enumerate(A.to_dense())]
    reduced, pivots = rref(augmented, A.cols + 1)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [Fraction(0)] * A.cols
    for row, pivot in zip(reduced, pivots):
        x[pivot] = row[A.cols]
    return x


def left_annihilator(A):
    """Rows p spanning {p : p·A = 0} over Q"""
    return rational_kernel(A.transpose())


def solve_mixed(A_int, A_rat, b):
    """
    Find integer y and rational x with A_int·y + A_rat·x = b.

    The rational unknowns are eliminated with a left annihilator P of
    A_rat; the remaining condition P·A_int·y = P·b is cleared of
    denominators and solved over Z, after which x is recovered by one
    rational solve.

    Args:
        A_int (IntMatrix | RatMatrix): Columns multiplying integer unknowns.
        A_rat (IntMatrix | RatMatrix): Columns multiplying rational unknowns.
        b (list): Rational right-hand side.

    Returns:
        tuple | None: (y, x) or None when no mixed solution exists.
    """
    if A_int.rows != A_rat.rows:
        raise DimensionMismatch("Integer and rational blocks must have the same row count")
    _check_rhs(A_int, b)
    b = [Fraction(v) for v in b]

    if A_rat.cols:
        annihilator = left_annihilator(A_rat)
    else:
        annihilator = [[Fraction(int(i == j)) for j in range(A_int.rows)] for i in range(A_int.rows)]

    int_dense = A_int.to_dense()
    system, rhs = [], []
    for p in annihilator:
        row = [sum((p[k] * int_dense[k][j] for k in range(A_int.rows)), Fraction(0)) for j in range(A_int.cols)]
        value = sum((p[k] * b[k] for k in range(A_int.rows)), Fraction(0))
        scale = lcm(*(x.denominator for x in row + [value]))
        system.append([int(x * scale) for x in row])
        rhs.append(int(value * scale))

    if A_int.cols:
        y = _solve_integer(IntMatrix.from_dense(system, A_int.cols), rhs) if system else [0] * A_int.cols
        if y is None:
            return None
    else:
        if any(rhs):
            return None
        y = []

    residual = [bi - yi for bi, yi in zip(b, A_int.apply(y))] if A_int.cols else list(b)
    if A_rat.cols:
        x = _solve_rational(A_rat, residual)
        if x is None:
            return None
    else:
        if any(residual):
            return None
        x = []
    return y, x


def unit_reduce(A):
    """
    Remove unit pivots from an integer matrix by sparse elimination.

    Each removed ±1 pivot contributes an invariant factor 1; the residual
    block carries all remaining invariant factors.

    Args:
        A (IntMatrix): Input matrix.

    Returns:
        tuple: (number of unit pivots removed, residual dense block)
    """
    rows = {r: row for r, row in enumerate(A.row_dicts()) if row}
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    removed = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda k: (len(cols[k]), k)):
            if c not in cols:
                continue
            candidates = [r for r in cols[c] if abs(rows[r][c]) == 1]
            if not candidates:
                continue
            r = min(candidates, key=lambda k: (len(rows[k]), k))
            pivot_row = rows.pop(r)
            u = pivot_row[c]
            for k in sorted(cols[c] - {r}):
                target = rows[k]
                factor = target[c] * u
                for cc, value in pivot_row.items():
                    new = target.get(cc, 0) - factor * value
                    if new:
                        if cc not in target:
                            cols[cc].add(k)
                        target[cc] = new
                    elif cc in target:
                        del target[cc]
                        cols[cc].discard(k)
                if not target:
                    del rows[k]
            for cc in pivot_row:
                cols[cc].discard(r)
            del cols[c]
            for cc in [cc for cc in pivot_row if cc in cols and not cols[cc]]:
                del cols[cc]
            removed += 1
            progress = True

    live_rows = sorted(rows)
    live_cols = sorted(cols)
    col_pos = {c: i for i, c in enumerate(live_cols)}
    block = [[0] * len(live_cols) for _ in live_rows]
    for i, r in enumerate(live_rows):
        for c, value in rows[r].items():
            block[i][col_pos[c]] = value
    return removed, block


def integer_divisors(A):
    """
    Rank and non-unit invariant factors of an integer matrix.

    Returns:
        tuple: (rank, sorted list of invariant factors greater than 1)
    """
    removed, block = unit_reduce(A)
    if not block or not block[0]:
        return removed, []
    residual = IntMatrix.from_dense(block)
    snf = smith_normal_form(residual)
    divisors = snf.divisors
    logger.debug(
        f"{A.rows}x{A.cols} matrix: {removed} unit pivots, residual {residual.rows}x{residual.cols}"
    )
    return removed + len(divisors), [d for d in divisors if d > 1]
