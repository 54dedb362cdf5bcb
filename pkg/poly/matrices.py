"""Matrices polynomiales immuables, à forme explicite (les formes 0×n sont permises)."""

from poly.exceptions import RingMismatchError


class PolyMatrix:
    """Matrice d'éléments d'un ``Ring``; ``rows`` est un tuple de tuples."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows, nrows=None, ncols=None):
        rows = tuple(tuple(ring.embed(x) for x in row) for row in rows)
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise RingMismatchError(
                f"Forme incohérente: attendu {self.nrows}x{self.ncols}"
            )

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, ring, n, value=None):
        value = ring.one if value is None else value
        rows = [[value if i == j else ring.zero for j in range(n)] for i in range(n)]
        return cls(ring, rows, n, n)

    @classmethod
    def from_columns(cls, ring, cols, nrows):
        rows = [[col[i] for col in cols] for i in range(nrows)]
        return cls(ring, rows, nrows, len(cols))

    @classmethod
    def block(cls, ring, grid, heights, widths):
        """Assemble une matrice par blocs; ``None`` désigne un bloc nul."""
        rows = []
        for bi, h in enumerate(heights):
            for i in range(h):
                line = []
                for bj, w in enumerate(widths):
                    blk = grid[bi][bj]
                    line.extend(blk.rows[i] if blk is not None else [ring.zero] * w)
                rows.append(line)
        return cls(ring, rows, sum(heights), sum(widths))

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.shape == other.shape
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        from poly.printing import format_matrix

        return f"PolyMatrix({self.nrows}x{self.ncols}: {format_matrix(self.rows)})"

    def _check(self, other):
        if self.shape != other.shape:
            raise RingMismatchError(f"Formes incompatibles: {self.shape} et {other.shape}")

    def __add__(self, other):
        self._check(other)
        rows = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        return PolyMatrix(self.ring, rows, self.nrows, self.ncols)

    def __sub__(self, other):
        self._check(other)
        rows = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        return PolyMatrix(self.ring, rows, self.nrows, self.ncols)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise RingMismatchError(
                f"Produit impossible: {self.shape} @ {other.shape}"
            )
        zero = self.ring.zero
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return PolyMatrix(self.ring, rows, self.nrows, other.ncols)

    def scale(self, c):
        return self.map(lambda x: c * x)

    def map(self, fn, ring=None):
        ring = ring or self.ring
        rows = [[fn(x) for x in row] for row in self.rows]
        return PolyMatrix(ring, rows, self.nrows, self.ncols)

    @property
    def T(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return PolyMatrix(self.ring, rows, self.ncols, self.nrows)

    def columns(self):
        return [tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)]

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def is_scalar(self, value):
        """Vrai si la matrice (carrée) vaut ``value·Id``."""
        if self.nrows != self.ncols:
            return False
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if i == j and x != value:
                    return False
                if i != j and x:
                    return False
        return True

    def embed(self, ring):
        return self.map(ring.embed, ring)

    def permute(self, row_order, col_order):
        rows = [[self.rows[i][j] for j in col_order] for i in row_order]
        return PolyMatrix(self.ring, rows, len(row_order), len(col_order))
