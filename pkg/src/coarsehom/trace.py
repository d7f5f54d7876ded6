"""The trace from the additive cyclic nerve to invariant controlled chains.

phi sends A_0 x ... x A_n to the chain whose coefficient at a controlled
tuple (x_0, ..., x_n) is the trace of the composite

    M_0(x_n) --A_n--> M_n(x_{n-1}) --> ... --> M_1(x_0) --A_0--> M_0(x_n),

walking the block supports only, so the cost tracks the sparsity of the
morphisms.  The image is an invariant chain; phi_matrix expresses it in
orbit-sum coordinates.

phi is a map of cyclic structures: it intertwines faces with coordinate
deletion, the cyclic operator with signed tuple rotation, and the front
identity insertion with duplicating the last coordinate up front.  The
chain-level operators live here as xc_cyclic_operator / xc_connes_operator
so that phi . B_nerve = B_chain . phi can be checked as a matrix identity.
Note what that implies: phi . B_nerve is NOT zero in even degrees (already
on the point, phi(B(1)) = 2 (pt,pt)), so a mixed-complex map onto chains
with zero B does not exist; the honest statement is the intertwining one.
"""

from __future__ import annotations

from itertools import product

from .chains import (
    ControlledChain,
    _collect_on_orbits,
    _tuple_orbit,
    boundary,
    controlled_tuple_basis,
)
from .controlled import (
    ControlledMorphism,
    orbit_objects,
    pushforward_morphism,
    require_nerve_admissible,
)
from .cyclic import DEFAULT_BASIS_CAP, DEFAULT_MAX_DEGREE, additive_cyclic_nerve, to_mixed
from .linalg import Matrix, QQ


def _trace_of(mat, dom):
    out = dom.zero
    for i, j, v in mat.entries():
        if i == j:
            out = dom.add(out, v)
    return out


class TraceContext:
    """Nerve of the orbit-regular objects plus chain bases, with phi cached."""

    def __init__(self, space, domain=QQ, objects=None, max_degree=DEFAULT_MAX_DEGREE,
                 cap=DEFAULT_BASIS_CAP):
        require_nerve_admissible(space, domain)
        self.space = space
        self.domain = domain
        self.objects = list(objects) if objects is not None else orbit_objects(space, domain)
        self.max_degree = max_degree
        self.nerve = additive_cyclic_nerve(self.objects, max_degree, cap)
        self.mixed = to_mixed(self.nerve)
        self.chain_bases = [
            controlled_tuple_basis(space, n, invariant=True) for n in range(max_degree + 1)
        ]
        self.chain_index = [{t: i for i, t in enumerate(b)} for b in self.chain_bases]
        self._phi_cols = [None] * (max_degree + 1)

    # -- phi ---------------------------------------------------------------

    def _factors(self, n, key):
        o, m = key
        hom = self.nerve.data.hom
        return [hom[o[(j + 1) % (n + 1)]][o[j]].basis[m[j]] for j in range(n + 1)]

    def _phi_of_basis(self, n, key):
        """Plain coefficients of phi on one nerve basis element."""
        dom = self.domain
        factors = self._factors(n, key)
        out = {}

        def put(tup, val):
            if val == dom.zero:
                return
            w = dom.add(out.get(tup, dom.zero), val)
            if w == dom.zero:
                out.pop(tup, None)
            else:
                out[tup] = w

        if n == 0:
            for (x, y), blk in factors[0].blocks.items():
                if x == y:
                    put((x,), _trace_of(blk, dom))
            return out
        closer = factors[0]
        # adjacency[j - 1]: source point -> [(target point, block)] for factor j
        adjacency = []
        for j in range(1, n + 1):
            adj = {}
            for (src, tgt), blk in factors[j].blocks.items():
                adj.setdefault(src, []).append((tgt, blk))
            adjacency.append(adj)

        def walk(j, partial, trail):
            # trail = [x_n, x_{n-1}, ..., x_{j-1}]; partial: M_0(x_n) -> M_j(x_{j-1})
            cur = trail[-1]
            if j == 1:
                blk = closer.blocks.get((cur, trail[0]))
                if blk is not None:
                    put(tuple(reversed(trail)), _trace_of(blk @ partial, dom))
                return
            for tgt, blk in adjacency[j - 2].get(cur, ()):
                walk(j - 1, blk @ partial, trail + [tgt])

        for (xn, xnm1), blk in factors[n].blocks.items():
            walk(n, blk, [xn, xnm1])
        return out

    def phi_matrix(self, n):
        """Matrix of phi_n from the nerve basis to invariant chain coordinates."""
        if not (0 <= n <= self.max_degree):
            raise ValueError(f"phi undefined in degree {n}")
        if self._phi_cols[n] is None:
            index = self.chain_index[n]
            cols = []
            for key in self.nerve.basis[n]:
                plain = self._phi_of_basis(n, key)
                cols.append(_collect_on_orbits(self.space, plain, index, self.domain))
            self._phi_cols[n] = Matrix.from_columns(
                cols, len(self.chain_bases[n]), self.domain
            )
        return self._phi_cols[n]

    def phi(self, n, vector):
        """phi of a nerve vector (sparse dict over the degree-n basis)."""
        if not (0 <= n <= self.max_degree):
            raise ValueError(f"phi undefined in degree {n}")
        dom = self.domain
        plain = {}
        for idx, coeff in vector.items():
            part = self._phi_of_basis(n, self.nerve.basis[n][idx])
            for tup, val in part.items():
                w = dom.add(plain.get(tup, dom.zero), dom.mul(coeff, val))
                if w == dom.zero:
                    plain.pop(tup, None)
                else:
                    plain[tup] = w
        return ControlledChain(self.space, n, plain, dom, check=False)

    def boundary_matrix(self, n):
        return boundary(self.space, n, invariant=True, domain=self.domain)

    # -- the point section ---------------------------------------------------

    def iota(self, n, c):
        """Coordinates of (.c) x (.1) x ... x (.1) on the one-point space."""
        if self.space.n != 1 or len(self.space.group) != 1:
            raise ValueError("iota is defined on the one-point space with trivial group")
        if not (0 <= n <= self.max_degree):
            raise ValueError(f"iota undefined in degree {n}")
        c = self.domain.coerce(c)
        if c == self.domain.zero:
            return {}
        return {0: c}


def dennis_trace_k0(ctx, m):
    """K_0-level Dennis trace: the HH_0 vector of id_m and its phi image.

    The object decomposes over the orbit-regular list with multiplicity
    equal to its fiber dimension on each orbit (the action is free, so
    every cocycle on an orbit trivializes); [id_m] is the matching
    combination of the identity classes, and phi sends it to the dimension
    chain sum over x of dim m(x) . (x,).
    """
    if m.space is not ctx.space or m.domain is not ctx.domain:
        raise ValueError("object lives outside the trace context")
    if ctx.objects != orbit_objects(ctx.space, ctx.domain):
        raise ValueError("dennis_trace_k0 needs the orbit-regular object list")
    dom = ctx.domain
    vec = {}
    for i, orb in enumerate(ctx.space.orbits()):
        mult = m.dims[orb[0]]
        if not mult:
            continue
        unit = ctx.nerve.data.unit(i)
        for k, coeff in unit.items():
            idx = ctx.nerve.index[0][((i,), (k,))]
            w = dom.add(vec.get(idx, dom.zero), dom.mul(dom.coerce(mult), coeff))
            if w == dom.zero:
                vec.pop(idx, None)
            else:
                vec[idx] = w
    image = ctx.phi(0, vec)
    expected = {
        (x,): dom.coerce(m.dims[x]) for x in range(ctx.space.n) if m.dims[x]
    }
    if image.coefficients != expected:
        raise AssertionError("phi of the identity class is not the dimension chain")
    return vec, image


# -- chain-level cyclic structure -------------------------------------------


def xc_cyclic_operator(space, n, domain, invariant=True):
    """Signed rotation (x_0..x_n) -> (-1)^n (x_n, x_0, ..., x_{n-1})."""
    basis = controlled_tuple_basis(space, n, invariant)
    index = {t: i for i, t in enumerate(basis)}
    sign = domain.one if n % 2 == 0 else domain.neg(domain.one)
    cols = []
    for tup in basis:
        if invariant:
            plain = {}
            for member in _tuple_orbit(space, tup):
                rot = (member[-1],) + member[:-1]
                plain[rot] = domain.add(plain.get(rot, domain.zero), sign)
            cols.append(_collect_on_orbits(space, plain, index, domain))
        else:
            rot = (tup[-1],) + tup[:-1]
            cols.append({index[rot]: sign})
    return Matrix.from_columns(cols, len(basis), domain)


def _xc_front_insert(space, n, domain, invariant=True):
    """(x_0..x_n) -> (x_n, x_0, ..., x_n): what phi makes of the extra degeneracy."""
    basis = controlled_tuple_basis(space, n, invariant)
    basis_up = controlled_tuple_basis(space, n + 1, invariant)
    index_up = {t: i for i, t in enumerate(basis_up)}
    cols = []
    for tup in basis:
        if invariant:
            plain = {}
            for member in _tuple_orbit(space, tup):
                ins = (member[-1],) + member
                plain[ins] = domain.add(plain.get(ins, domain.zero), domain.one)
            cols.append(_collect_on_orbits(space, plain, index_up, domain))
        else:
            cols.append({index_up[(tup[-1],) + tup]: domain.one})
    return Matrix.from_columns(cols, len(basis_up), domain)


def xc_connes_operator(space, n, domain, invariant=True):
    """The chain-level (1 - t) s N operator matching the nerve's B under phi."""
    t_n = xc_cyclic_operator(space, n, domain, invariant)
    dim_n = t_n.ncols
    norm = Matrix.identity(dim_n, domain)
    power = Matrix.identity(dim_n, domain)
    for _ in range(n):
        power = power @ t_n
        norm = norm + power
    front = _xc_front_insert(space, n, domain, invariant)
    t_up = xc_cyclic_operator(space, n + 1, domain, invariant)
    one_minus = Matrix.identity(t_up.nrows, domain) - t_up
    return one_minus @ front @ norm


# -- naturality --------------------------------------------------------------


def nerve_pushforward_matrix(ctx_src, ctx_tgt, f, n):
    """Matrix of CN(f_*) in degree n between orbit-regular nerve bases.

    On free actions the pushforward of an orbit-regular object along an
    equivariant controlled map is literally the orbit-regular object of the
    image orbit, so each factor's image expands in the target hom bases.
    """
    if f.source is not ctx_src.space or f.target is not ctx_tgt.space:
        raise ValueError("map endpoints do not match the contexts")
    src_orbits = ctx_src.space.orbits()
    tgt_orbits = ctx_tgt.space.orbits()
    orbit_map = []
    for orb in src_orbits:
        y = f(orb[0])
        orbit_map.append(next(i for i, t in enumerate(tgt_orbits) if y in t))
    dom = ctx_src.domain
    cols = []
    coord_cache = {}
    for o, m in ctx_src.nerve.basis[n]:
        o2 = tuple(orbit_map[i] for i in o)
        factor_coords = []
        for j in range(n + 1):
            s_obj, t_obj = o[(j + 1) % (n + 1)], o[j]
            key = (s_obj, t_obj, m[j])
            got = coord_cache.get(key)
            if got is None:
                mor = ctx_src.nerve.data.hom[s_obj][t_obj].basis[m[j]]
                pushed = pushforward_morphism(
                    f,
                    mor,
                    pushed_source=ctx_tgt.objects[orbit_map[s_obj]],
                    pushed_target=ctx_tgt.objects[orbit_map[t_obj]],
                )
                got = ctx_tgt.nerve.data.hom[orbit_map[s_obj]][orbit_map[t_obj]].coordinates(pushed)
                coord_cache[key] = got
            factor_coords.append(got)
        col = {}
        for combo in product(*(sorted(fc.items()) for fc in factor_coords)):
            coeff = dom.one
            ks = []
            for k, v in combo:
                ks.append(k)
                coeff = dom.mul(coeff, v)
            idx = ctx_tgt.nerve.index[n][(o2, tuple(ks))]
            w = dom.add(col.get(idx, dom.zero), coeff)
            if w == dom.zero:
                col.pop(idx, None)
            else:
                col[idx] = w
        cols.append(col)
    return Matrix.from_columns(cols, ctx_tgt.nerve.dims[n], dom)
