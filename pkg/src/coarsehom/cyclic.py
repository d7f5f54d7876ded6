"""Cyclic modules, mixed complexes, and Hochschild/cyclic homology.

The additive cyclic nerve of a list of controlled objects and the cyclic
module of a finite algebra are built by one routine over a small "category
data" interface: basis dimensions per hom space, composition coordinates,
and unit coordinates.  Degree n of the nerve is the direct sum, over
(n+1)-tuples of objects, of Hom(P_{o1},P_{o0}) x ... x Hom(P_{o0},P_{on});
basis elements are pairs (object tuple, morphism index tuple), enumerated
lexicographically so every matrix is reproducible bit for bit.

Sign conventions (pinned by the identity suite below):
    d_i  composes adjacent factors, d_n wraps unsigned,
    t    = (-1)^n  x  cyclic rotation,
    b    = sum of (-1)^i d_i,
    B    = (1 - t) . (insert identity at the front) . N,   N = sum of t^i.
Every constructed mixed complex has b^2 = 0, B^2 = 0, bB + Bb = 0 verified
at construction; a failure raises with a convention diagnostic.
"""

from __future__ import annotations

from itertools import product

from .controlled import HomSpace, compose, identity_morphism
from .linalg import Matrix, homology_at

DEFAULT_MAX_DEGREE = 4
DEFAULT_BASIS_CAP = 200_000


class _NerveData:
    """Hom-space dimensions, composition and unit coordinates for a nerve."""

    def __init__(self, objects):
        if not objects:
            raise ValueError("need at least one object")
        space = objects[0].space
        domain = objects[0].domain
        for ob in objects:
            if ob.space is not space or ob.domain is not domain:
                raise ValueError("all nerve objects must share one space and field")
        if not domain.is_field:
            raise ValueError("the cyclic nerve needs field coefficients")
        self.objects = list(objects)
        self.domain = domain
        r = len(objects)
        self.hom = [[HomSpace(objects[s], objects[t]) for t in range(r)] for s in range(r)]
        self._comp = {}
        self._unit = {}

    @property
    def count(self):
        return len(self.objects)

    def dim(self, s, t):
        return self.hom[s][t].dim

    def comp(self, s, mid, t, i, j):
        """Coordinates of basis_i . basis_j, basis_i in Hom(mid,t), basis_j in Hom(s,mid)."""
        key = (s, mid, t, i, j)
        out = self._comp.get(key)
        if out is None:
            left = self.hom[mid][t].basis[i]
            right = self.hom[s][mid].basis[j]
            out = self.hom[s][t].coordinates(compose(left, right))
            self._comp[key] = out
        return out

    def unit(self, a):
        out = self._unit.get(a)
        if out is None:
            out = self.hom[a][a].coordinates(identity_morphism(self.objects[a]))
            self._unit[a] = out
        return out


class _ZeroData:
    """Category data of the empty object list (the zero module)."""

    count = 0

    def __init__(self, domain):
        self.domain = domain
        self.objects = []

    def dim(self, s, t):
        raise IndexError("zero module has no hom spaces")

    comp = unit = dim


class _AlgebraData:
    """One-object category data straight from structure constants."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.domain = algebra.domain
        self.objects = None

    @property
    def count(self):
        return 1

    def dim(self, s, t):
        return self.algebra.dimension

    def comp(self, s, mid, t, i, j):
        return self.algebra.struct[i][j]

    def unit(self, a):
        return self.algebra.unit


def _degree_basis(data, n, cap):
    """Lexicographic (object tuple, morphism tuple) basis of nerve degree n."""
    r = data.count
    total = 0
    for o in product(range(r), repeat=n + 1):
        size = 1
        for j in range(n + 1):
            size *= data.dim(o[(j + 1) % (n + 1)], o[j])
            if not size:
                break
        total += size
        if total > cap:
            raise ValueError(
                f"cyclic nerve degree {n} needs more than {cap} basis elements"
            )
    basis = []
    for o in product(range(r), repeat=n + 1):
        ranges = [range(data.dim(o[(j + 1) % (n + 1)], o[j])) for j in range(n + 1)]
        if any(len(rg) == 0 for rg in ranges):
            continue
        for m in product(*ranges):
            basis.append((o, m))
    index = {key: i for i, key in enumerate(basis)}
    return basis, index


def _face_matrix(data, n, i, basis_n, index_prev, nrows):
    dom = data.domain
    cols = []
    for o, m in basis_n:
        col = {}
        if i < n:
            s = o[(i + 2) % (n + 1)]
            mid, t = o[i + 1], o[i]
            table = data.comp(s, mid, t, m[i], m[i + 1])
            o2 = o[: i + 1] + o[i + 2 :]
            for k, coeff in table.items():
                m2 = m[:i] + (k,) + m[i + 2 :]
                col[index_prev[(o2, m2)]] = coeff
        else:
            table = data.comp(o[1], o[0], o[n], m[n], m[0])
            o2 = (o[n],) + o[1:n]
            for k, coeff in table.items():
                m2 = (k,) + m[1:n]
                col[index_prev[(o2, m2)]] = coeff
        cols.append(col)
    return Matrix.from_columns(cols, nrows, dom)


def _cyclic_matrix(data, n, basis_n, index_n):
    dom = data.domain
    sign = dom.one if n % 2 == 0 else dom.neg(dom.one)
    cols = []
    for o, m in basis_n:
        o2 = (o[n],) + o[:n]
        m2 = (m[n],) + m[:n]
        cols.append({index_n[(o2, m2)]: sign})
    return Matrix.from_columns(cols, len(basis_n), dom)


def _degeneracy_matrix(data, n, i, basis_n, index_next, nrows):
    dom = data.domain
    cols = []
    for o, m in basis_n:
        a = o[(i + 1) % (n + 1)]
        o2 = o[: i + 1] + (a,) + o[i + 1 :]
        col = {}
        for k, coeff in data.unit(a).items():
            m2 = m[: i + 1] + (k,) + m[i + 1 :]
            col[index_next[(o2, m2)]] = coeff
        cols.append(col)
    return Matrix.from_columns(cols, nrows, dom)


def _front_insert_matrix(data, n, basis_n, index_next, nrows):
    """Insert the identity of the first object in front (the extra degeneracy)."""
    dom = data.domain
    cols = []
    for o, m in basis_n:
        o2 = (o[0],) + o
        col = {}
        for k, coeff in data.unit(o[0]).items():
            col[index_next[((o2), (k,) + m)]] = coeff
        cols.append(col)
    return Matrix.from_columns(cols, nrows, dom)


class CyclicModule:
    """Face, degeneracy, and cyclic matrices of a cyclic k-module, degrees <= N."""

    def __init__(self, max_degree, domain, dims, basis, index, faces, degens, cyc, data=None):
        self.max_degree = max_degree
        self.domain = domain
        self.dims = dims
        self.basis = basis
        self.index = index
        self._faces = faces
        self._degens = degens
        self._cyc = cyc
        self.data = data

    def face(self, n, i):
        if not (1 <= n <= self.max_degree and 0 <= i <= n):
            raise ValueError(f"face d_{i} undefined in degree {n}")
        return self._faces[n][i]

    def degeneracy(self, n, i):
        if not (0 <= n < self.max_degree and 0 <= i <= n):
            raise ValueError(f"degeneracy s_{i} undefined in degree {n}")
        return self._degens[n][i]

    def cyclic(self, n):
        if not (0 <= n <= self.max_degree):
            raise ValueError(f"cyclic operator undefined in degree {n}")
        return self._cyc[n]

    def check_identities(self):
        """Simplicial identities, t^(n+1) = 1, and d_i t = -t d_(i-1)."""
        for n in range(2, self.max_degree + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face(n - 1, i) @ self.face(n, j)
                    rhs = self.face(n - 1, j - 1) @ self.face(n, i)
                    if lhs != rhs:
                        raise ValueError(f"simplicial identity d_{i} d_{j} fails in degree {n}")
        for n in range(self.max_degree + 1):
            t = self.cyclic(n)
            acc = Matrix.identity(self.dims[n], self.domain)
            for _ in range(n + 1):
                acc = t @ acc
            if acc != Matrix.identity(self.dims[n], self.domain):
                raise ValueError(f"t^{n + 1} is not the identity in degree {n}")
        for n in range(1, self.max_degree + 1):
            t_n = self.cyclic(n)
            t_prev = self.cyclic(n - 1)
            for i in range(1, n + 1):
                lhs = self.face(n, i) @ t_n
                rhs = (t_prev @ self.face(n, i - 1)).scale(self.domain.neg(self.domain.one))
                if lhs != rhs:
                    raise ValueError(
                        f"cyclic compatibility d_{i} t = -t d_{i - 1} fails in degree {n}"
                    )
        return True


def _build(data, max_degree, cap):
    dims = []
    basis = []
    index = []
    for n in range(max_degree + 1):
        b, ix = _degree_basis(data, n, cap)
        basis.append(b)
        index.append(ix)
        dims.append(len(b))
    faces = [[]]
    for n in range(1, max_degree + 1):
        faces.append(
            [_face_matrix(data, n, i, basis[n], index[n - 1], dims[n - 1]) for i in range(n + 1)]
        )
    degens = []
    for n in range(max_degree):
        degens.append(
            [_degeneracy_matrix(data, n, i, basis[n], index[n + 1], dims[n + 1]) for i in range(n + 1)]
        )
    cyc = [_cyclic_matrix(data, n, basis[n], index[n]) for n in range(max_degree + 1)]
    mod = CyclicModule(max_degree, data.domain, dims, basis, index, faces, degens, cyc, data=data)
    mod.check_identities()
    return mod


def additive_cyclic_nerve(objects, max_degree=DEFAULT_MAX_DEGREE, cap=DEFAULT_BASIS_CAP, domain=None):
    """The cyclic module of the additive category spanned by the objects.

    An empty object list gives the zero module over `domain` (default Q).
    """
    if not objects:
        from .linalg import QQ

        return _build(_ZeroData(domain if domain is not None else QQ), max_degree, cap)
    return _build(_NerveData(objects), max_degree, cap)


def algebra_cyclic_module(algebra, max_degree=DEFAULT_MAX_DEGREE, cap=DEFAULT_BASIS_CAP):
    """The cyclic module with degree n equal to the (n+1)-fold tensor power."""
    return _build(_AlgebraData(algebra), max_degree, cap)


class MixedComplex:
    """(C, b, B) with b^2 = 0, B^2 = 0, bB + Bb = 0 checked at construction."""

    def __init__(self, max_degree, domain, dims, b, big_b, source=None):
        self.max_degree = max_degree
        self.domain = domain
        self.dims = dims
        self._b = b
        self._B = big_b
        self.source = source
        self._tot = None
        self._verify()

    def b(self, n):
        if not (0 <= n <= self.max_degree):
            raise ValueError(f"b undefined in degree {n}")
        return self._b[n]

    def B(self, n):
        if not (0 <= n < self.max_degree):
            raise ValueError(f"B undefined in degree {n}")
        return self._B[n]

    def _verify(self):
        bad = []
        for n in range(2, self.max_degree + 1):
            if not (self._b[n - 1] @ self._b[n]).is_zero():
                bad.append(f"b^2 != 0 at degree {n}")
        for n in range(self.max_degree - 1):
            if not (self._B[n + 1] @ self._B[n]).is_zero():
                bad.append(f"B^2 != 0 at degree {n}")
        for n in range(self.max_degree):
            anti = self._b[n + 1] @ self._B[n]
            if n >= 1:
                anti = anti + self._B[n - 1] @ self._b[n]
            if not anti.is_zero():
                bad.append(f"bB + Bb != 0 at degree {n}")
        if bad:
            raise ValueError(
                "mixed-complex identities fail (sign-convention bug): " + "; ".join(bad)
            )


def to_mixed(module, extra_outer_sign=False):
    """Mixed complex (C, b, B) of a cyclic module.

    b is the alternating face sum; B composes the cyclic norm, the front
    identity insertion, and (1 - t).  With extra_outer_sign=True an extra
    (-1)^(n+1) multiplies B; that tempting variant breaks bB + Bb = 0 and
    exists so the failure stays demonstrable.
    """
    N = module.max_degree
    dom = module.domain
    dims = module.dims
    b = [Matrix(0, dims[0], dom)]
    for n in range(1, N + 1):
        acc = module.face(n, 0)
        for i in range(1, n + 1):
            term = module.face(n, i)
            acc = acc + (term.scale(dom.neg(dom.one)) if i % 2 else term)
        b.append(acc)
    big = []
    for n in range(N):
        t_n = module.cyclic(n)
        norm = Matrix.identity(dims[n], dom)
        power = Matrix.identity(dims[n], dom)
        for _ in range(n):
            power = power @ t_n
            norm = norm + power
        front = _front_insert_matrix(
            module.data, n, module.basis[n], module.index[n + 1], dims[n + 1]
        )
        one_minus_t = Matrix.identity(dims[n + 1], dom) - module.cyclic(n + 1)
        mat = one_minus_t @ front @ norm
        if extra_outer_sign and n % 2 == 0:
            mat = mat.scale(dom.neg(dom.one))
        big.append(mat)
    return MixedComplex(N, dom, dims, b, big, source=module)


class TotComplex:
    """Total complex of the (B, b)-bicomplex: Tot_n = C_n + C_(n-2) + ..."""

    def __init__(self, mixed):
        N = mixed.max_degree
        dom = mixed.domain
        self.max_degree = N
        self.domain = dom
        self.dims = []
        self.offsets = []
        for n in range(N + 1):
            offs = []
            total = 0
            k = n
            while k >= 0:
                offs.append(total)
                total += mixed.dims[k]
                k -= 2
            self.dims.append(total)
            self.offsets.append(offs)
        self.d = [Matrix(0, self.dims[0], dom)]
        for n in range(1, N + 1):
            mat = Matrix(self.dims[n - 1], self.dims[n], dom)
            for j, off_in in enumerate(self.offsets[n]):
                deg = n - 2 * j
                if deg >= 1:
                    blk = mixed.b(deg)
                    off_out = self.offsets[n - 1][j]
                    for r, c, v in blk.entries():
                        mat.set(off_out + r, off_in + c, v)
            for j, off_in in enumerate(self.offsets[n]):
                deg = n - 2 * j
                if deg <= n - 2:
                    blk = mixed.B(deg)
                    off_out = self.offsets[n - 1][j - 1]
                    for r, c, v in blk.entries():
                        mat.set(off_out + r, off_in + c, v)
            self.d.append(mat)
        for n in range(2, N + 1):
            if not (self.d[n - 1] @ self.d[n]).is_zero():
                raise AssertionError(f"total differential fails d^2 = 0 at degree {n}")


def tot_B(mixed):
    """The total complex with d^2 = 0 verified."""
    if mixed._tot is None:
        mixed._tot = TotComplex(mixed)
    return mixed._tot


def hh(mixed, n):
    """Hochschild homology of the mixed complex at degree n <= N - 1."""
    if not (0 <= n <= mixed.max_degree - 1):
        raise ValueError(f"hh degree {n} out of range (need n + 1 <= {mixed.max_degree})")
    return homology_at(mixed.b(n), mixed.b(n + 1), degree=n)


def hc(mixed, n):
    """Cyclic homology: homology of the total complex at degree n <= N - 1."""
    if not (0 <= n <= mixed.max_degree - 1):
        raise ValueError(f"hc degree {n} out of range (need n + 1 <= {mixed.max_degree})")
    tot = tot_B(mixed)
    return homology_at(tot.d[n], tot.d[n + 1], degree=n)
