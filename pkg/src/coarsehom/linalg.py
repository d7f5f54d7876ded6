"""Exact sparse linear algebra over Q, prime fields F_p, and Z.

Everything here is integer-exact: rationals are `fractions.Fraction`,
prime-field elements are reduced ints, integer matrices are plain ints.
Floating point never appears.

The three entry points used by the homology code are

    >>> m = Matrix.from_dense([[1, 2], [2, 4]], QQ)
    >>> rank(m)
    1
    >>> kernel_basis(m)
    [{1: Fraction(1, 1), 0: Fraction(-2, 1)}]
    >>> s, _, _ = smith_normal_form(Matrix.from_dense([[2, 0], [0, 3]], ZZ))
    >>> [s.get(i, i) for i in range(2)]
    [1, 6]

Elimination over Q and Z runs on denominator-cleared integer rows with
fraction-free updates and content normalization, so entries stay small.
Row order is chosen deterministically (unit pivots first, then fewest
nonzeros, then lowest index); the reduced echelon form, and with it
`kernel_basis`, is unique regardless, which keeps every downstream basis
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _modp

_DENSE_RANK_CAP = 4_000_000


class _Rationals:
    is_field = True
    char = 0
    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def __repr__(self):
        return "QQ"


class _Integers:
    is_field = False
    char = 0
    name = "Z"

    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise TypeError(f"cannot coerce {x!r} into Z")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ZeroDivisionError(f"{a} not divisible by {b} in Z")
        return q

    def __repr__(self):
        return "ZZ"


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class _PrimeField:
    is_field = True

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("prime too large for the int64 fast path")
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.char
        if isinstance(x, Fraction):
            den = x.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.char}")
            return x.numerator * pow(den, self.char - 2, self.char) % self.char
        raise TypeError(f"cannot coerce {x!r} into F_{self.char}")

    def add(self, a, b):
        return (a + b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def div(self, a, b):
        if b % self.char == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.char}")
        return a * pow(b, self.char - 2, self.char) % self.char

    def __repr__(self):
        return f"GF({self.char})"


QQ = _Rationals()
ZZ = _Integers()

_gf_cache = {}


def GF(p):
    """The prime field with p elements (instances are cached)."""
    if p not in _gf_cache:
        _gf_cache[p] = _PrimeField(p)
    return _gf_cache[p]


class Matrix:
    """Sparse matrix over one of the domains above.

    Entries are stored column-major with no explicit zeros; a matrix with
    zero rows or columns is legal and behaves like the empty map.
    """

    __slots__ = ("nrows", "ncols", "domain", "_cols")

    def __init__(self, nrows, ncols, domain):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        self.nrows = nrows
        self.ncols = ncols
        self.domain = domain
        self._cols = {}

    @classmethod
    def zeros(cls, nrows, ncols, domain):
        return cls(nrows, ncols, domain)

    @classmethod
    def identity(cls, n, domain):
        m = cls(n, n, domain)
        for i in range(n):
            m._cols[i] = {i: domain.one}
        return m

    @classmethod
    def from_dense(cls, rows, domain, ncols=None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        m = cls(nrows, ncols, domain)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                m.set(i, j, v)
        return m

    @classmethod
    def from_columns(cls, columns, nrows, domain):
        """Build from a list of sparse columns ({row: value})."""
        m = cls(nrows, len(columns), domain)
        for j, col in enumerate(columns):
            for i, v in col.items():
                m.set(i, j, v)
        return m

    @classmethod
    def block(cls, grid, domain):
        """Assemble a block matrix; None entries are zero blocks.

        Every block row must contain at least one real block, and likewise
        every block column, so that all sizes are determined.
        """
        heights = [None] * len(grid)
        nbc = max(len(r) for r in grid) if grid else 0
        widths = [None] * nbc
        for bi, brow in enumerate(grid):
            for bj, blk in enumerate(brow):
                if blk is None:
                    continue
                if heights[bi] is None:
                    heights[bi] = blk.nrows
                elif heights[bi] != blk.nrows:
                    raise ValueError("inconsistent block heights")
                if widths[bj] is None:
                    widths[bj] = blk.ncols
                elif widths[bj] != blk.ncols:
                    raise ValueError("inconsistent block widths")
        if any(h is None for h in heights) or any(w is None for w in widths):
            raise ValueError("block grid leaves a size undetermined")
        row_off = [0]
        for h in heights:
            row_off.append(row_off[-1] + h)
        col_off = [0]
        for w in widths:
            col_off.append(col_off[-1] + w)
        out = cls(row_off[-1], col_off[-1], domain)
        for bi, brow in enumerate(grid):
            for bj, blk in enumerate(brow):
                if blk is None:
                    continue
                r0, c0 = row_off[bi], col_off[bj]
                for j, col in blk._cols.items():
                    dst = out._cols.setdefault(c0 + j, {})
                    for i, v in col.items():
                        dst[r0 + i] = v
        return out

    def get(self, i, j):
        return self._cols.get(j, {}).get(i, self.domain.zero)

    def set(self, i, j, value):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry ({i}, {j}) out of bounds")
        v = self.domain.coerce(value)
        col = self._cols.setdefault(j, {})
        if v == self.domain.zero:
            col.pop(i, None)
            if not col:
                del self._cols[j]
        else:
            col[i] = v

    def add_at(self, i, j, value):
        self.set(i, j, self.domain.add(self.get(i, j), self.domain.coerce(value)))

    def column(self, j):
        """The j-th column as {row: value} (a fresh dict)."""
        return dict(self._cols.get(j, {}))

    def entries(self):
        for j in sorted(self._cols):
            col = self._cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    @property
    def nnz(self):
        return sum(len(c) for c in self._cols.values())

    def is_zero(self):
        return not self._cols

    def transpose(self):
        out = Matrix(self.ncols, self.nrows, self.domain)
        for j, col in self._cols.items():
            for i, v in col.items():
                out._cols.setdefault(i, {})[j] = v
        return out

    def scale(self, c):
        c = self.domain.coerce(c)
        out = Matrix(self.nrows, self.ncols, self.domain)
        if c == self.domain.zero:
            return out
        for j, col in self._cols.items():
            out._cols[j] = {i: self.domain.mul(c, v) for i, v in col.items()}
        return out

    def __add__(self, other):
        self._check_same_shape(other)
        out = Matrix(self.nrows, self.ncols, self.domain)
        for j in set(self._cols) | set(other._cols):
            col = {}
            a = self._cols.get(j, {})
            b = other._cols.get(j, {})
            for i in set(a) | set(b):
                v = self.domain.add(a.get(i, self.domain.zero), b.get(i, self.domain.zero))
                if v != self.domain.zero:
                    col[i] = v
            if col:
                out._cols[j] = col
        return out

    def __sub__(self, other):
        return self + other.scale(self.domain.neg(self.domain.one))

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        if self.domain is not other.domain:
            raise ValueError("domain mismatch in matrix product")
        dom = self.domain
        out = Matrix(self.nrows, other.ncols, dom)
        for j, bcol in other._cols.items():
            acc = {}
            for k, bv in bcol.items():
                acol = self._cols.get(k)
                if not acol:
                    continue
                for i, av in acol.items():
                    w = acc.get(i, dom.zero)
                    w = dom.add(w, dom.mul(av, bv))
                    if w == dom.zero:
                        acc.pop(i, None)
                    else:
                        acc[i] = w
            if acc:
                out._cols[j] = acc
        return out

    def mat_vec(self, vec):
        """Apply to a sparse column vector {index: value}."""
        dom = self.domain
        acc = {}
        for k, bv in vec.items():
            acol = self._cols.get(k)
            if not acol:
                continue
            bv = dom.coerce(bv)
            for i, av in acol.items():
                w = dom.add(acc.get(i, dom.zero), dom.mul(av, bv))
                if w == dom.zero:
                    acc.pop(i, None)
                else:
                    acc[i] = w
        return acc

    def to_dense(self):
        rows = [[self.domain.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in self._cols.items():
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        if self.domain is not other.domain:
            return False
        keys = set(self._cols) | set(other._cols)
        for j in keys:
            if self._cols.get(j, {}) != other._cols.get(j, {}):
                return False
        return True

    def __hash__(self):
        raise TypeError("matrices are mutable, not hashable")

    def __repr__(self):
        return f"<Matrix {self.nrows}x{self.ncols} over {self.domain.name}, nnz={self.nnz}>"

    def _check_same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        if self.domain is not other.domain:
            raise ValueError("domain mismatch")


@dataclass(frozen=True)
class HomologyResult:
    """Homology in one degree: a betti number and, over Z, torsion factors."""

    degree: int
    betti: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.betti < 0:
            raise ValueError("negative betti number")

    def describe(self):
        parts = [f"betti {self.betti}"]
        if self.torsion:
            parts.append("torsion " + " + ".join(f"Z/{t}" for t in self.torsion))
        return f"H_{self.degree}: " + ", ".join(parts)


def _integer_rows(matrix):
    """Rows of `matrix` as integer dicts: denominators cleared, content 1."""
    rows = [dict() for _ in range(matrix.nrows)]
    for j, col in matrix._cols.items():
        for i, v in col.items():
            rows[i][j] = v
    p = matrix.domain.char if matrix.domain.is_field else 0
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        if matrix.domain is QQ:
            den = 1
            for v in row.values():
                den = den * v.denominator // gcd(den, v.denominator)
            ints = {j: int(v * den) for j, v in row.items()}
            g = 0
            for v in ints.values():
                g = gcd(g, v)
            out.append({j: v // g for j, v in ints.items()})
        elif p:
            out.append({j: v % p for j, v in row.items() if v % p})
        else:
            g = 0
            for v in row.values():
                g = gcd(g, v)
            out.append({j: v // g for j, v in row.items()})
    return out


def _normalize_content(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for j in row:
            row[j] //= g
    return row


def _echelon(rows, ncols, p, reduce):
    """In-place sparse elimination.  Returns the pivot list [(row, col), ...].

    Over Z (p = 0) the updates are fraction-free with content normalization;
    over F_p everything is reduced mod p.  Columns are consumed left to
    right, so the pivot columns are the standard echelon ones and, with
    reduce=True, the row span ends in reduced echelon form up to row scaling.
    """
    col_rows = {}
    for r, row in enumerate(rows):
        for j in row:
            col_rows.setdefault(j, set()).add(r)

    def retouch(r, before, after):
        for j in before - after:
            s = col_rows.get(j)
            if s is not None:
                s.discard(r)
                if not s:
                    del col_rows[j]
        for j in after - before:
            col_rows.setdefault(j, set()).add(r)

    pivots = []
    in_pivot = set()
    for col in range(ncols):
        holders = col_rows.get(col)
        if not holders:
            continue
        candidates = [r for r in holders if r not in in_pivot]
        if not candidates:
            continue
        if p:
            piv = min(candidates, key=lambda r: (len(rows[r]), r))
        else:
            piv = min(candidates, key=lambda r: (abs(rows[r][col]) != 1, len(rows[r]), r))
        pivots.append((piv, col))
        in_pivot.add(piv)
        prow = rows[piv]
        b = prow[col]
        targets = (holders - {piv}) if reduce else {r for r in candidates if r != piv}
        for r in sorted(targets):
            trow = rows[r]
            a = trow[col]
            before = set(trow)
            if p:
                factor = a * pow(b, p - 2, p) % p
                for j, pv in prow.items():
                    w = (trow.get(j, 0) - factor * pv) % p
                    if w:
                        trow[j] = w
                    else:
                        trow.pop(j, None)
            else:
                g = gcd(a, b)
                ca, cb = b // g, a // g
                if ca < 0:
                    ca, cb = -ca, -cb
                for j in set(trow) | set(prow):
                    w = ca * trow.get(j, 0) - cb * prow.get(j, 0)
                    if w:
                        trow[j] = w
                    else:
                        trow.pop(j, None)
                _normalize_content(trow)
            retouch(r, before, set(trow))
    return pivots


def _echelon_data(matrix, reduce):
    rows = _integer_rows(matrix)
    p = matrix.domain.char if matrix.domain.is_field else 0
    pivots = _echelon(rows, matrix.ncols, p, reduce)
    return rows, pivots


def rank(matrix):
    """Rank over the matrix's own domain (over Z this is the rank over Q)."""
    if matrix.nrows == 0 or matrix.ncols == 0 or matrix.is_zero():
        return 0
    dom = matrix.domain
    if dom.is_field and dom.char and matrix.nrows * matrix.ncols <= _DENSE_RANK_CAP:
        dense = [[0] * matrix.ncols for _ in range(matrix.nrows)]
        for j, col in matrix._cols.items():
            for i, v in col.items():
                dense[i][j] = v
        return _modp.rank_mod(dense, dom.char)
    _, pivots = _echelon_data(matrix, reduce=False)
    return len(pivots)


def kernel_data(matrix):
    """Kernel basis together with the free column owned by each vector.

    Returns (basis, free_columns) where basis[i] has value 1 at
    free_columns[i] and every other basis vector vanishes there.
    """
    dom = matrix.domain
    if not dom.is_field:
        raise ValueError("kernel_basis needs a field domain")
    if matrix.ncols == 0:
        return [], []
    rows, pivots = _echelon_data(matrix, reduce=True)
    p = dom.char
    pivot_cols = {c for _, c in pivots}
    norm_rows = []
    for r, c in pivots:
        row = rows[r]
        lead = row[c]
        if p:
            inv = pow(lead, p - 2, p)
            norm_rows.append((c, {j: v * inv % p for j, v in row.items() if j != c}))
        else:
            norm_rows.append((c, {j: Fraction(v, lead) for j, v in row.items() if j != c}))
    basis = []
    free = []
    for f in range(matrix.ncols):
        if f in pivot_cols:
            continue
        vec = {f: dom.one}
        for c, row in norm_rows:
            v = row.get(f)
            if v:
                vec[c] = dom.neg(dom.coerce(v))
        basis.append(vec)
        free.append(f)
    return basis, free


def kernel_basis(matrix):
    """Deterministic basis of the right kernel {v : Mv = 0}, over a field.

    One basis vector per free column, ordered by free column index; the
    vector sits over the reduced echelon form, with value 1 at its free
    column.  This is the unique RREF kernel basis.
    """
    return kernel_data(matrix)[0]


def _symmetric_divmod(a, b):
    # a == q * b + r with |r| <= |b| / 2; the adjustment r -> r - b always
    # pairs with q -> q + 1, whatever the sign of b
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
        r -= b
    return q, r


class _SnfWork:
    """Mutable integer matrix with tracked elementary row/column operations."""

    def __init__(self, matrix, with_transforms):
        self.m = matrix.nrows
        self.n = matrix.ncols
        self.rows = [dict() for _ in range(self.m)]
        self.col_rows = {}
        for j, col in matrix._cols.items():
            for i, v in col.items():
                self.rows[i][j] = v
                self.col_rows.setdefault(j, set()).add(i)
        self.track = with_transforms
        if with_transforms:
            self.u = [{i: 1} for i in range(self.m)]
            self.v_cols = [{j: 1} for j in range(self.n)]

    def _set(self, i, j, v):
        if v:
            self.rows[i][j] = v
            self.col_rows.setdefault(j, set()).add(i)
        else:
            self.rows[i].pop(j, None)
            s = self.col_rows.get(j)
            if s is not None:
                s.discard(i)
                if not s:
                    del self.col_rows[j]

    def swap_rows(self, a, b):
        if a == b:
            return
        for j in set(self.rows[a]) | set(self.rows[b]):
            s = self.col_rows.setdefault(j, set())
            ja, jb = self.rows[a].get(j), self.rows[b].get(j)
            s.discard(a)
            s.discard(b)
            if ja is not None:
                s.add(b)
            if jb is not None:
                s.add(a)
            if not s:
                del self.col_rows[j]
        self.rows[a], self.rows[b] = self.rows[b], self.rows[a]
        if self.track:
            self.u[a], self.u[b] = self.u[b], self.u[a]

    def swap_cols(self, a, b):
        if a == b:
            return
        holders = self.col_rows.get(a, set()) | self.col_rows.get(b, set())
        for i in holders:
            va, vb = self.rows[i].get(a), self.rows[i].get(b)
            if va is None and vb is None:
                continue
            if vb is None:
                self.rows[i].pop(a)
                self.rows[i][b] = va
            elif va is None:
                self.rows[i].pop(b)
                self.rows[i][a] = vb
            else:
                self.rows[i][a], self.rows[i][b] = vb, va
        ca = self.col_rows.pop(a, None)
        cb = self.col_rows.pop(b, None)
        if cb is not None:
            self.col_rows[a] = cb
        if ca is not None:
            self.col_rows[b] = ca
        if self.track:
            self.v_cols[a], self.v_cols[b] = self.v_cols[b], self.v_cols[a]

    def add_row(self, dst, src, q):
        """Row_dst += q * Row_src."""
        if not q:
            return
        for j, v in list(self.rows[src].items()):
            self._set(dst, j, self.rows[dst].get(j, 0) + q * v)
        if self.track:
            u = self.u[dst]
            for j, v in self.u[src].items():
                w = u.get(j, 0) + q * v
                if w:
                    u[j] = w
                else:
                    u.pop(j, None)

    def add_col(self, dst, src, q):
        """Col_dst += q * Col_src."""
        if not q:
            return
        for i in list(self.col_rows.get(src, set())):
            self._set(i, dst, self.rows[i].get(dst, 0) + q * self.rows[i][src])
        if self.track:
            vc = self.v_cols[dst]
            for i, v in self.v_cols[src].items():
                w = vc.get(i, 0) + q * v
                if w:
                    vc[i] = w
                else:
                    vc.pop(i, None)

    def negate_row(self, r):
        for j in self.rows[r]:
            self.rows[r][j] = -self.rows[r][j]
        if self.track:
            self.u[r] = {j: -v for j, v in self.u[r].items()}


def smith_normal_form(matrix, with_transforms=True):
    """Smith normal form over Z.

    Returns (s, u, v) with u @ matrix @ v == s, where u and v are unimodular
    and s is diagonal with each diagonal entry dividing the next.  With
    with_transforms=False, u and v are returned as None (faster; used by the
    homology routines, which only need the invariant factors).
    """
    if matrix.domain is not ZZ:
        raise ValueError("smith_normal_form is defined over Z")
    work = _SnfWork(matrix, with_transforms)
    m, n = work.m, work.n
    k = 0
    limit = min(m, n)
    while k < limit:
        best = None
        for j, holders in work.col_rows.items():
            if j < k:
                continue
            for i in holders:
                if i < k:
                    continue
                v = abs(work.rows[i][j])
                key = (v, i, j)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, bi, bj = best
        work.swap_rows(k, bi)
        work.swap_cols(k, bj)
        while True:
            # clear column k with row operations, Euclid-stepping as needed
            dirty = False
            while True:
                holders = [i for i in work.col_rows.get(k, set()) if i > k]
                if not holders:
                    break
                b = work.rows[k][k]
                i = min(holders)
                a = work.rows[i][k]
                q, r = _symmetric_divmod(a, b)
                work.add_row(i, k, -q)
                if r:
                    work.swap_rows(k, i)
            while True:
                cols = [j for j in work.rows[k] if j > k]
                if not cols:
                    break
                dirty = True
                b = work.rows[k][k]
                j = min(cols)
                a = work.rows[k][j]
                q, r = _symmetric_divmod(a, b)
                work.add_col(j, k, -q)
                if r:
                    work.swap_cols(k, j)
            if not dirty and not any(i > k for i in work.col_rows.get(k, set())):
                pivot = work.rows[k].get(k, 0)
                offender = None
                if pivot:
                    for j, holders in work.col_rows.items():
                        if j <= k:
                            continue
                        for i in holders:
                            if i > k and work.rows[i][j] % pivot:
                                offender = i
                                break
                        if offender is not None:
                            break
                if offender is None:
                    break
                work.add_row(k, offender, 1)
        if work.rows[k].get(k, 0) < 0:
            work.negate_row(k)
        k += 1
    s = Matrix(m, n, ZZ)
    for i in range(limit):
        v = work.rows[i].get(i, 0)
        if v:
            s.set(i, i, v)
    if not with_transforms:
        return s, None, None
    u = Matrix(m, m, ZZ)
    for i, row in enumerate(work.u):
        for j, v in row.items():
            u.set(i, j, v)
    v = Matrix(n, n, ZZ)
    for j, col in enumerate(work.v_cols):
        for i, val in col.items():
            v.set(i, j, val)
    return s, u, v


def invariant_factors(matrix):
    """Diagonal of the Smith form, nonzero entries only, divisibility order."""
    s, _, _ = smith_normal_form(matrix, with_transforms=False)
    out = [s.get(i, i) for i in range(min(s.nrows, s.ncols))]
    return [v for v in out if v]


def homology_at(d_out, d_in, degree=0):
    """Homology ker(d_out) / im(d_in) of  C_in --d_in--> C --d_out--> C_out.

    Over a field: a betti number.  Over Z: betti plus the invariant factors
    of d_in that exceed 1 (the kernel of a map of free abelian groups is a
    direct summand, so those factors are exactly the torsion of the
    quotient).  The composability requirement d_out @ d_in = 0 is asserted.
    """
    if d_out.ncols != d_in.nrows:
        raise ValueError(f"degree mismatch: d_out has {d_out.ncols} columns, d_in has {d_in.nrows} rows")
    if d_out.domain is not d_in.domain:
        raise ValueError("domain mismatch between boundaries")
    if not (d_out @ d_in).is_zero():
        raise ValueError("boundaries do not compose to zero")
    dim = d_out.ncols
    r_out = rank(d_out)
    r_in = rank(d_in)
    betti = dim - r_out - r_in
    torsion = ()
    if d_in.domain is ZZ:
        torsion = tuple(f for f in invariant_factors(d_in) if f > 1)
    return HomologyResult(degree=degree, betti=betti, torsion=torsion)
