import logging
from enum import Enum
from fractions import Fraction

from algebra.errors import DimensionMismatch, MalformedInput

logger = logging.getLogger(__name__)


class Ring(Enum):
    """
    Coefficient rings understood by the toolkit.

    Attributes:
        Z (str): Arbitrary-precision integers.
        Q (str): Exact rationals.
        QMODZ (str): Rationals modulo the integers, stored in [0, 1).
    """
    Z = "Z"
    Q = "Q"
    QMODZ = "QmodZ"

    @classmethod
    def parse(cls, value):
        if isinstance(value, Ring):
            return value
        for ring in cls:
            if ring.value.lower() == str(value).strip().lower():
                return ring
        raise MalformedInput(f"Unknown ring: {value!r}")


def parse_scalar(text):
    """Parse an int or fraction string ("3", "-3/2") into an exact number"""
    if isinstance(text, int):
        return text
    if isinstance(text, Fraction):
        return text if text.denominator != 1 else text.numerator
    try:
        value = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInput(f"Not an exact scalar: {text!r}") from e
    return value.numerator if value.denominator == 1 else value


def format_scalar(value):
    """Render an exact scalar as an int or "p/q" string"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class _SparseMatrix:
    """
    Immutable sparse matrix over an exact ring.

    Entries are kept in a dict keyed by (row, col); zero entries are never
    stored. Subclasses fix the scalar type.
    """
    ring = None

    __slots__ = ("rows", "cols", "_entries", "_row_index")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"Negative shape ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        cleaned = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(f"Entry ({r}, {c}) outside shape ({rows}, {cols})")
            value = self._coerce(value)
            if value != 0:
                cleaned[(r, c)] = value
        self._entries = cleaned
        self._row_index = None

    @classmethod
    def _coerce(cls, value):
        raise NotImplementedError

    # Construction helpers

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows_data, cols=None):
        rows = len(rows_data)
        if cols is None:
            cols = len(rows_data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(rows_data):
            if len(row) != cols:
                raise DimensionMismatch("Ragged dense matrix")
            for c, value in enumerate(row):
                if value != 0:
                    entries[(r, c)] = value
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, columns, rows):
        """Build a matrix whose j-th column is the j-th dense vector"""
        entries = {}
        for c, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionMismatch("Column length does not match row count")
            for r, value in enumerate(column):
                if value != 0:
                    entries[(r, c)] = value
        return cls(rows, len(columns), entries)

    # Accessors

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entries(self):
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key):
        return self._entries.get(key, 0)

    def nnz(self):
        return len(self._entries)

    def is_zero(self):
        return not self._entries

    def row_dicts(self):
        """Return rows as a list of {col: value} dicts"""
        if self._row_index is None:
            index = [dict() for _ in range(self.rows)]
            for (r, c), value in sorted(self._entries.items()):
                index[r][c] = value
            self._row_index = index
        return [dict(row) for row in self._row_index]

    def to_dense(self):
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), value in self._entries.items():
            dense[r][c] = value
        return dense

    def column(self, j):
        return [self._entries.get((r, j), 0) for r in range(self.rows)]

    # Algebra

    def transpose(self):
        return type(self)(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def __eq__(self, other):
        if not isinstance(other, _SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, frozenset(self._entries.items())))

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"Cannot add {self.shape} and {other.shape}")
        result = dict(self._entries)
        for key, value in other._entries.items():
            result[key] = result.get(key, 0) + value
        return self._promote(other)(self.rows, self.cols, result)

    def __neg__(self):
        return type(self)(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        cls = type(self) if isinstance(factor, int) else RatMatrix
        return cls(self.rows, self.cols, {k: v * factor for k, v in self._entries.items()})

    def _promote(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return IntMatrix

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        other_rows = other.row_dicts()
        result = {}
        for (r, k), value in self._entries.items():
            for c, other_value in other_rows[k].items():
                result[(r, c)] = result.get((r, c), 0) + value * other_value
        return self._promote(other)(self.rows, other.cols, result)

    def apply(self, vector):
        """Multiply by a dense column vector, returning a dense list"""
        if len(vector) != self.cols:
            raise DimensionMismatch(f"Vector of length {len(vector)} for {self.shape} matrix")
        out = [0] * self.rows
        for (r, c), value in self._entries.items():
            if vector[c]:
                out[r] += value * vector[c]
        return out

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        entries = dict(self._entries)
        entries.update({(r, c + self.cols): v for (r, c), v in other._entries.items()})
        return self._promote(other)(self.rows, self.cols + other.cols, entries)

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        entries = dict(self._entries)
        entries.update({(r + self.rows, c): v for (r, c), v in other._entries.items()})
        return self._promote(other)(self.rows + other.rows, self.cols, entries)

    def to_rational(self):
        return RatMatrix(self.rows, self.cols, self._entries)

    # Serialization

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, format_scalar(v)] for (r, c), v in sorted(self._entries.items())],
        }

    @classmethod
    def from_json(cls, data):
        try:
            rows, cols = int(data["rows"]), int(data["cols"])
            entries = {(int(r), int(c)): parse_scalar(v) for r, c, v in data["entries"]}
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInput(f"Malformed matrix JSON: {e}") from e
        return cls(rows, cols, entries)

    def __repr__(self):
        return f"{type(self).__name__}({self.rows}x{self.cols}, nnz={len(self._entries)})"


class IntMatrix(_SparseMatrix):
    """Sparse matrix with arbitrary-precision integer entries"""
    ring = Ring.Z
    __slots__ = ()

    @classmethod
    def _coerce(cls, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise MalformedInput(f"Non-integral entry {value} in IntMatrix")
            return value.numerator
        if isinstance(value, bool) or not isinstance(value, int):
            raise MalformedInput(f"Non-integral entry {value!r} in IntMatrix")
        return value


class RatMatrix(_SparseMatrix):
    """Sparse matrix with exact rational entries in lowest terms"""
    ring = Ring.Q
    __slots__ = ()

    @classmethod
    def _coerce(cls, value):
        if isinstance(value, bool):
            raise MalformedInput("Boolean entry in RatMatrix")
        return Fraction(value)


def matrix_class(ring):
    """Matrix type used for differentials over the given ring"""
    return IntMatrix if Ring.parse(ring) is Ring.Z else RatMatrix


def block_matrix(cls, rows, cols, blocks):
    """Assemble a block matrix from {(row_offset, col_offset): matrix}"""
    entries = {}
    for (r0, c0), m in blocks.items():
        for (r, c), value in m.items():
            entries[(r0 + r, c0 + c)] = entries.get((r0 + r, c0 + c), 0) + value
    return cls(rows, cols, entries)
