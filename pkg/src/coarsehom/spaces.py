"""Finite models of equivariant bornological coarse spaces.

On a finite carrier the whole filtered coarse structure is captured by its
maximal entourage: the reflexive-symmetric-transitive closure of the
generating pairs and all their group translates.  That closure is an
equivalence relation, so a space stores the partition of its points into
coarse components and answers entourage-membership queries from it.  The
bornology on a finite carrier closes up to the full power set; generators
are kept only for display and for the product construction.

All predicates from the structural layer live here: morphism validation,
closeness, coarse equivalence (by exhaustive search for a controlled
equivariant inverse), flasqueness, and complementary pairs.
"""

from __future__ import annotations

from itertools import product


class GBornCoarseSpace:
    """Immutable finite G-bornological coarse space.

    points: list of hashable labels (index order is the canonical order).
    entourage_generators: iterable of (label, label) pairs.
    bornology_generators: iterable of label collections; default singletons.
    group: FiniteGroup.
    action: |G| x |X| matrix of point indices, action[g][x] = g.x.
    """

    def __init__(self, points, entourage_generators, group, action, bornology_generators=None):
        self.points = list(points)
        self.n = len(self.points)
        if len(set(self.points)) != self.n:
            raise ValueError("duplicate point labels")
        self.index = {p: i for i, p in enumerate(self.points)}
        self.group = group
        self.action = [list(row) for row in action]
        if len(self.action) != len(group):
            raise ValueError("action needs one row per group element")
        for g, row in enumerate(self.action):
            if len(row) != self.n:
                raise ValueError("action rows must cover all points")
            if sorted(row) != list(range(self.n)):
                raise ValueError(f"group element {group.label(g)!r} does not act by a bijection")
        e = group.identity
        if self.action and self.action[e] != list(range(self.n)):
            raise ValueError("identity element must act as the identity")
        for g in range(len(group)):
            for h in range(len(group)):
                gh = group.mul(g, h)
                for x in range(self.n):
                    if self.action[g][self.action[h][x]] != self.action[gh][x]:
                        raise ValueError("action is not a left group action")

        self.entourage_generators = tuple(
            (self._as_index(a), self._as_index(b)) for a, b in entourage_generators
        )
        self._comp_of = close_coarse_structure(self.entourage_generators, self.n, self.action)

        if bornology_generators is None:
            bornology_generators = [[p] for p in self.points]
        self.bornology_generators = tuple(
            frozenset(self._as_index(p) for p in gen) for gen in bornology_generators
        )
        covered = set().union(*self.bornology_generators) if self.bornology_generators else set()
        if covered != set(range(self.n)):
            raise ValueError("bornology generators must cover the carrier")

        # u_star is G-invariant: group elements permute the components
        for g in range(len(group)):
            for x in range(self.n):
                for y in range(self.n):
                    if (self._comp_of[x] == self._comp_of[y]) != (
                        self._comp_of[self.action[g][x]] == self._comp_of[self.action[g][y]]
                    ):
                        raise AssertionError("closure lost G-invariance (internal bug)")

        self._orbits = self._compute_orbits()
        self._components = self._compute_components()

    def _as_index(self, p):
        if isinstance(p, int) and not isinstance(p, bool):
            if not 0 <= p < self.n:
                raise ValueError(f"point index {p} out of range")
            return p
        if p in self.index:
            return self.index[p]
        raise ValueError(f"unknown point {p!r}")

    def _compute_orbits(self):
        seen = set()
        orbits = []
        for x in range(self.n):
            if x in seen:
                continue
            orb = tuple(sorted({self.action[g][x] for g in range(len(self.group))}))
            seen |= set(orb)
            orbits.append(orb)
        return tuple(orbits)

    def _compute_components(self):
        buckets = {}
        for x in range(self.n):
            buckets.setdefault(self._comp_of[x], []).append(x)
        return tuple(tuple(sorted(v)) for _, v in sorted(buckets.items(), key=lambda kv: min(kv[1])))

    # -- queries ---------------------------------------------------------

    def related(self, x, y):
        """(x, y) in u_star?"""
        return self._comp_of[x] == self._comp_of[y]

    def u_star_pairs(self):
        """The maximal entourage as an explicit pair set."""
        return frozenset((x, y) for x in range(self.n) for y in range(self.n) if self.related(x, y))

    def components(self):
        return self._components

    def orbits(self):
        return self._orbits

    def orbit_of(self, x):
        for orb in self._orbits:
            if x in orb:
                return orb
        raise ValueError(f"point index {x} out of range")

    def stabilizer(self, x):
        return tuple(g for g in range(len(self.group)) if self.action[g][x] == x)

    def is_invariant_set(self, pts):
        s = {self._as_index(p) for p in pts}
        return all(self.action[g][x] in s for g in range(len(self.group)) for x in s)

    def act(self, g, x):
        return self.action[g][x]

    def label(self, x):
        return self.points[x]

    def __repr__(self):
        return (
            f"<GBornCoarseSpace |X|={self.n} |G|={len(self.group)} "
            f"components={len(self._components)} orbits={len(self._orbits)}>"
        )


def close_coarse_structure(generators, n, action):
    """Component labels of the closure of `generators` and their G-translates.

    Returns a list comp_of with comp_of[x] == comp_of[y] iff (x, y) lies in
    the generated maximal entourage.  Union-find over the G-saturated
    generator pairs is exactly the reflexive-symmetric-transitive closure.
    """
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra

    for a, b in generators:
        for row in action:
            union(row[a], row[b])
    return [find(x) for x in range(n)]


def closure_pairs(generators, n, action):
    """The closed maximal entourage as a frozenset of ordered pairs."""
    comp_of = close_coarse_structure(generators, n, action)
    return frozenset((x, y) for x in range(n) for y in range(n) if comp_of[x] == comp_of[y])


def thickening(u, b):
    """U[B] = {x : exists b in B with (x, b) in U}."""
    bs = set(b)
    return {x for x, y in u if y in bs}


class SpaceMap:
    """A set map between space carriers; validity is checked by is_morphism."""

    def __init__(self, source, target, assignment):
        self.source = source
        self.target = target
        if len(assignment) != source.n:
            raise ValueError("assignment must cover every source point")
        self.assignment = tuple(target._as_index(v) for v in assignment)

    @classmethod
    def identity(cls, space):
        return cls(space, space, tuple(range(space.n)))

    @classmethod
    def from_labels(cls, source, target, mapping):
        return cls(source, target, tuple(mapping[p] for p in source.points))

    def __call__(self, x):
        return self.assignment[x]

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            raise ValueError("composition mismatch")
        return SpaceMap(other.source, self.target, tuple(self.assignment[v] for v in other.assignment))

    def __eq__(self, other):
        return (
            isinstance(other, SpaceMap)
            and self.source is other.source
            and self.target is other.target
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.assignment))

    def __repr__(self):
        pairs = ", ".join(f"{self.source.label(x)}->{self.target.label(self(x))}" for x in range(self.source.n))
        return f"<SpaceMap {pairs}>"


class MorphismReport:
    def __init__(self, violations):
        self.violations = tuple(violations)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "<MorphismReport ok>"
        return "<MorphismReport " + "; ".join(self.violations) + ">"


def is_morphism(f):
    """Equivariant + controlled + proper, with a violation report.

    Properness (preimages of bounded sets are bounded) holds for any set map
    between finite carriers because every subset is bounded; the check is
    retained structurally so the report documents it.
    """
    violations = []
    src, tgt = f.source, f.target
    if src.group is not tgt.group and (
        src.group.elements != tgt.group.elements or src.group.table != tgt.group.table
    ):
        violations.append("source and target groups differ")
    else:
        for g in range(len(src.group)):
            for x in range(src.n):
                if f(src.act(g, x)) != tgt.act(g, f(x)):
                    violations.append(
                        f"not equivariant at g={src.group.label(g)!r}, x={src.label(x)!r}"
                    )
                    break
            else:
                continue
            break
    for x in range(src.n):
        for y in range(src.n):
            if src.related(x, y) and not tgt.related(f(x), f(y)):
                violations.append(
                    f"not controlled: ({src.label(x)!r}, {src.label(y)!r}) maps across components"
                )
                break
        else:
            continue
        break
    for gen in tgt.bornology_generators:
        preimage = {x for x in range(src.n) if f(x) in gen}
        if not preimage <= set(range(src.n)):  # structural properness record
            violations.append("improper preimage")
    return MorphismReport(violations)


def are_close(f, g):
    """Do f and g agree up to the maximal entourage of the target?"""
    if f.source is not g.source or f.target is not g.target:
        raise ValueError("closeness needs a common source and target")
    return all(f.target.related(f(x), g(x)) for x in range(f.source.n))


def _equivariant_maps(source, target, bound):
    """All equivariant set maps source -> target, built orbitwise.

    A map is fixed by choosing, for each source orbit representative, an
    image point whose stabilizer contains the representative's stabilizer.
    """
    reps = [orb[0] for orb in source.orbits()]
    choices = []
    for r in reps:
        stab = set(source.stabilizer(r))
        cands = [y for y in range(target.n) if stab <= set(target.stabilizer(y))]
        choices.append(cands)
        if not cands:
            return
    total = 1
    for c in choices:
        total *= len(c)
        if total > bound:
            raise ValueError(f"equivariant map search exceeds bound ({total} > {bound})")
    for picks in product(*choices):
        assignment = [None] * source.n
        ok = True
        for r, y in zip(reps, picks):
            for g in range(len(source.group)):
                gx = source.act(g, r)
                gy = target.act(g, y)
                if assignment[gx] is None:
                    assignment[gx] = gy
                elif assignment[gx] != gy:
                    ok = False
                    break
            if not ok:
                break
        if ok and all(v is not None for v in assignment):
            yield SpaceMap(source, target, tuple(assignment))


def is_coarse_equivalence(f, search_bound=200_000):
    """Exhaustive search for a controlled equivariant inverse up to closeness."""
    if not is_morphism(f).ok:
        return False
    src, tgt = f.source, f.target
    if src.n == 0 or tgt.n == 0:
        return src.n == tgt.n
    id_src = SpaceMap.identity(src)
    id_tgt = SpaceMap.identity(tgt)
    for g in _equivariant_maps(tgt, src, search_bound):
        if not is_morphism(g).ok:
            continue
        if are_close(g.compose(f), id_src) and are_close(f.compose(g), id_tgt):
            return True
    return False


def _iterate_assignment(assignment):
    """f, f^2, f^3, ... until the iterate sequence enters a cycle."""
    seen = set()
    cur = tuple(assignment)
    while cur not in seen:
        seen.add(cur)
        yield cur
        cur = tuple(cur[v] for v in assignment)


def is_flasqueness_witness(x, f):
    """Check the three flasqueness conditions for a candidate shift f: X -> X.

    (i) f is a morphism close to the identity; (ii) for every bounded B the
    iterates eventually avoid G.B -- on a finite carrier the carrier itself
    is bounded, so it is enough (and necessary) to test B = X; (iii) the
    union of (f^k x f^k)(u_star) over all k stays an entourage, i.e. stays
    inside u_star.
    """
    if f.source is not x or f.target is not x:
        raise ValueError("witness must be a self-map")
    if not is_morphism(f).ok:
        return False
    if not are_close(f, SpaceMap.identity(x)):
        return False
    # condition (iii): iterates remain uniformly controlled
    for it in _iterate_assignment(f.assignment):
        for a in range(x.n):
            for b in range(x.n):
                if x.related(a, b) and not x.related(it[a], it[b]):
                    return False
    # condition (ii) with B = X: some iterate image must miss G.X = X entirely
    for it in _iterate_assignment(f.assignment):
        if not set(it):
            break
    else:
        return False
    return True


def has_flasqueness_witness(x, search_bound=200_000):
    """Exhaustive search over all self-maps; only feasible for tiny carriers."""
    if x.n == 0:
        return True
    if x.n**x.n > search_bound:
        raise ValueError("self-map search exceeds bound")
    for assignment in product(range(x.n), repeat=x.n):
        if is_flasqueness_witness(x, SpaceMap(x, x, assignment)):
            return True
    return False


def is_flasque(x):
    """No nonempty finite space is flasque; the empty space is.

    For nonempty X the carrier itself is bounded, and no iterate of a self
    map has empty image, so the escape condition fails at B = X.  The
    exhaustive witness search (has_flasqueness_witness) cross-checks this on
    small carriers.
    """
    return x.n == 0


def is_complementary_pair(x, z, ys):
    """z together with the big family generated by ys covers X.

    ys must be an increasing chain of invariant subsets; it generates a big
    family iff thickenings stay inside the chain, which on a finite carrier
    pins the largest member to be closed under u_star-thickening (component
    closed).  The pair condition is z union max(ys) = X.
    """
    z_idx = {x._as_index(p) for p in z}
    if not x.is_invariant_set(z_idx):
        raise ValueError("z is not G-invariant")
    ys_idx = [frozenset(x._as_index(p) for p in y) for y in ys]
    if not ys_idx:
        return False
    for y in ys_idx:
        if not x.is_invariant_set(y):
            raise ValueError("a member of ys is not G-invariant")
    for a, b in zip(ys_idx, ys_idx[1:]):
        if not a <= b:
            return False
    top = ys_idx[-1]
    thick = {p for p in range(x.n) for q in top if x.related(p, q)}
    if not thick <= top:
        return False
    return z_idx | top == set(range(x.n))


# -- constructors --------------------------------------------------------


def point_space(group=None):
    """One point with the trivial action of `group` (default: trivial group)."""
    from .groups import trivial_group

    if group is None:
        group = trivial_group()
    return GBornCoarseSpace(
        points=["pt"],
        entourage_generators=[],
        group=group,
        action=[[0]] * len(group),
    )


def empty_space(group=None):
    from .groups import trivial_group

    if group is None:
        group = trivial_group()
    return GBornCoarseSpace(points=[], entourage_generators=[], group=group, action=[[] for _ in range(len(group))], bornology_generators=[])


def g_can_min(group):
    """The group as a space over itself: left action, one coarse component.

    The canonical structure is generated by the orbits of bounded squares;
    with the whole finite carrier bounded that closes up to G x G.
    """
    n = len(group)
    points = [group.label(g) for g in range(n)]
    action = [[group.mul(g, x) for x in range(n)] for g in range(n)]
    generators = [(points[group.identity], points[g]) for g in range(n)]
    return GBornCoarseSpace(points, generators, group, action)


def subspace(x, z):
    """The induced structure on an invariant subset z."""
    z_idx = sorted({x._as_index(p) for p in z})
    if not x.is_invariant_set(z_idx):
        raise ValueError("subspace carrier must be G-invariant")
    old_to_new = {old: new for new, old in enumerate(z_idx)}
    points = [x.points[i] for i in z_idx]
    gens = [(x.points[a], x.points[b]) for a in z_idx for b in z_idx if x.related(a, b)]
    action = [[old_to_new[x.act(g, i)] for i in z_idx] for g in range(len(x.group))]
    borno = []
    for gen in x.bornology_generators:
        trace = [x.points[i] for i in sorted(gen) if i in old_to_new]
        if trace:
            borno.append(trace)
    if not z_idx:
        borno = []
    return GBornCoarseSpace(points, gens, x.group, action, borno or None)


def restrict_entourage(x, u):
    """X_U: same carrier and bornology, coarse structure generated by u alone."""
    pairs = [(x._as_index(a), x._as_index(b)) for a, b in u]
    for a, b in pairs:
        if not x.related(a, b):
            raise ValueError(f"pair ({x.label(a)!r}, {x.label(b)!r}) is not in u_star")
    pair_set = set(pairs)
    for g in range(len(x.group)):
        for a, b in pairs:
            if (x.act(g, a), x.act(g, b)) not in pair_set:
                raise ValueError("entourage restriction must be G-invariant")
    return GBornCoarseSpace(
        points=list(x.points),
        entourage_generators=[(x.points[a], x.points[b]) for a, b in pairs],
        group=x.group,
        action=[row[:] for row in x.action],
        bornology_generators=[[x.points[i] for i in sorted(gen)] for gen in x.bornology_generators],
    )


def tensor(x, y):
    """Product carrier, diagonal action, product-generated coarse structure."""
    if x.group is not y.group and (
        x.group.elements != y.group.elements or x.group.table != y.group.table
    ):
        raise ValueError("tensor factors must share the group")
    points = [f"({x.points[i]},{y.points[j]})" for i in range(x.n) for j in range(y.n)]

    def pid(i, j):
        return i * y.n + j

    gens = []
    for i in range(x.n):
        for i2 in range(x.n):
            if not x.related(i, i2):
                continue
            for j in range(y.n):
                for j2 in range(y.n):
                    if y.related(j, j2):
                        gens.append((points[pid(i, j)], points[pid(i2, j2)]))
    action = [
        [pid(x.act(g, i), y.act(g, j)) for i in range(x.n) for j in range(y.n)]
        for g in range(len(x.group))
    ]
    borno = []
    for bx in x.bornology_generators:
        for by in y.bornology_generators:
            borno.append([points[pid(i, j)] for i in sorted(bx) for j in sorted(by)])
    return GBornCoarseSpace(points, gens, x.group, action, borno or None)


def min_max_space(group, action, labels=None):
    """Minimal coarse structure (diagonal), maximal bornology (whole carrier)."""
    npts = len(action[0]) if action else 0
    if labels is None:
        labels = [f"x{i}" for i in range(npts)]
    borno = [list(labels)] if npts else []
    return GBornCoarseSpace(labels, [], group, action, borno or None)


def coset_space(group, subgroup):
    """The G-set G/H as a min-max space with the left translation action."""
    cosets = group.left_cosets(subgroup)
    labels = ["+".join(group.label(m) for m in c) for c in cosets]
    coset_of = {}
    for idx, c in enumerate(cosets):
        for m in c:
            coset_of[m] = idx
    action = [[coset_of[group.mul(g, c[0])] for c in cosets] for g in range(len(group))]
    return min_max_space(group, action, labels)


def orbits(x):
    return x.orbits()
