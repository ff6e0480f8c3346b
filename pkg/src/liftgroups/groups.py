"""Finite groups as dense multiplication tables, with subgroup/quotient algebra.

Elements are the indices ``0..order-1``; ``table[a][b]`` is the index of ``a*b``.
Constructors put the identity at index 0, but nothing downstream relies on that
(see :func:`relabel`).
"""
from __future__ import annotations

import hashlib
import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidSpec, NotNormal, OrderBoundExceeded

DEFAULT_MAX_ORDER = 200
_max_order = DEFAULT_MAX_ORDER


def set_max_order(n: int) -> None:
    global _max_order
    _max_order = int(n)


def get_max_order() -> int:
    return _max_order


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Instances are treated as immutable and compare by identity, so they can be
    used as cache keys. Use :func:`is_isomorphic` for structural comparison.
    """

    def __init__(self, table, name: str = "G", identity: int | None = None,
                 generators: Sequence[int] | None = None, check: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidSpec("multiplication table must be a non-empty square")
        if identity is None:
            identity = next((e for e in range(n) if rows[e] == tuple(range(n))), None)
            if identity is None:
                raise InvalidSpec("table has no identity element")
        self.order = n
        self.mul = rows
        self.identity = int(identity)
        self.name = name
        if any(self.identity not in r for r in rows):
            raise InvalidSpec("some element has no inverse")
        self.inverse = tuple(rows[a].index(self.identity) for a in range(n))
        if check:
            verify_axioms(self)
        if generators is None:
            self.generators = _greedy_generators(self)
        else:
            self.generators = tuple(int(x) for x in generators)
            if check and len(_closure(self, self.generators)) != n:
                raise InvalidSpec("generators do not generate the group")

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    @cached_property
    def table(self) -> np.ndarray:
        t = np.array(self.mul, dtype=np.int16)
        t.setflags(write=False)
        return t

    @cached_property
    def inverse_array(self) -> np.ndarray:
        return np.array(self.inverse, dtype=np.int16)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.mul[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def conjugacy_classes(self) -> tuple[frozenset, ...]:
        seen: set[int] = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = frozenset(self.mul[self.mul[g][a]][self.inverse[g]] for g in range(self.order))
            seen |= cls
            classes.append(cls)
        return tuple(classes)

    @cached_property
    def class_size(self) -> tuple[int, ...]:
        size = [0] * self.order
        for cls in self.conjugacy_classes:
            for a in cls:
                size[a] = len(cls)
        return tuple(size)

    @cached_property
    def is_abelian(self) -> bool:
        return all(len(c) == 1 for c in self.conjugacy_classes)

    @cached_property
    def center(self) -> frozenset:
        return frozenset(a for a in range(self.order) if self.class_size[a] == 1)

    @cached_property
    def invariants(self) -> tuple:
        """Isomorphism invariants, ordered so that tuples sort canonically."""
        hist = Counter(zip(self.element_orders, self.class_size))
        return (self.order, int(self.is_abelian), len(self.center),
                len(commutator_subgroup(self)), len(self.conjugacy_classes),
                tuple(sorted(hist.items())))

    @cached_property
    def words(self) -> tuple[tuple[int, ...], ...]:
        """A shortest word (0-based generator indices) for every element."""
        words: list = [None] * self.order
        words[self.identity] = ()
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for i, s in enumerate(self.generators):
                b = self.mul[a][s]
                if words[b] is None:
                    words[b] = words[a] + (i,)
                    queue.append(b)
        return tuple(words)

    @cached_property
    def hom_plan(self) -> tuple:
        """Per-generator BFS steps used to extend generator images to a full map.

        Level ``t`` holds ``(new_edges, checks)``: ``new_edges`` are
        ``(child, parent, gen)`` with ``child = parent * gens[gen]`` defining
        the map on the subgroup generated by the first ``t+1`` generators,
        ``checks`` are ``(a, gen, a*gens[gen])`` consistency conditions.
        """
        mul, gens = self.mul, self.generators
        defined = {self.identity}
        members = [self.identity]
        levels = []
        for t in range(len(gens)):
            new_edges, checks = [], []
            queue = deque((a, t) for a in members)
            while queue:
                a, i = queue.popleft()
                b = mul[a][gens[i]]
                if b in defined:
                    checks.append((a, i, b))
                else:
                    defined.add(b)
                    members.append(b)
                    new_edges.append((b, a, i))
                    queue.extend((b, i2) for i2 in range(t + 1))
            levels.append((tuple(new_edges), tuple(checks)))
        return tuple(levels)

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.table).tobytes())
        h.update(repr((self.identity, self.generators)).encode())
        return h.hexdigest()[:16]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        x = self.identity
        for _ in range(k):
            x = self.mul[x][a]
        return x


def verify_axioms(g: FiniteGroup) -> None:
    """Raise ``InvalidSpec`` unless the table is a group table."""
    t = np.array(g.mul, dtype=np.int64)
    n = g.order
    ref = np.arange(n)
    if not (np.sort(t, axis=1) == ref).all() or not (np.sort(t, axis=0) == ref[:, None]).all():
        raise InvalidSpec(f"{g.name}: table is not a Latin square")
    if not (t[g.identity] == ref).all() or not (t[:, g.identity] == ref).all():
        raise InvalidSpec(f"{g.name}: identity is not two-sided")
    if (t[ref, np.array(g.inverse)] != g.identity).any():
        raise InvalidSpec(f"{g.name}: inverse table is wrong")
    if not (t[t] == t[:, t]).all():
        raise InvalidSpec(f"{g.name}: multiplication is not associative")


def _closure(g: FiniteGroup, seed: Iterable[int]) -> set[int]:
    gens = list(dict.fromkeys(seed))
    elems = {g.identity}
    queue = deque(elems)
    mul = g.mul
    while queue:
        a = queue.popleft()
        for s in gens:
            b = mul[a][s]
            if b not in elems:
                elems.add(b)
                queue.append(b)
    return elems


def _greedy_generators(g: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    current = {g.identity}
    while len(current) < g.order:
        best, best_size = -1, -1
        for x in range(g.order):
            if x in current:
                continue
            size = len(_closure(g, gens + [x]))
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        current = _closure(g, gens)
    return tuple(gens)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: frozenset

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __le__(self, other: "Subgroup"):
        return self.elements <= other.elements

    def __lt__(self, other: "Subgroup"):
        return self.elements < other.elements

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @property
    def is_whole(self) -> bool:
        return len(self.elements) == self.parent.order

    @property
    def mask(self) -> int:
        return sum(1 << a for a in self.elements)

    def sort_key(self):
        return (len(self.elements), tuple(sorted(self.elements)))

    def is_normal(self, within: "Subgroup | None" = None) -> bool:
        return is_normal(self.parent, self.elements, within)


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, frozenset(range(g.order)))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, frozenset([g.identity]))


def _elements(x) -> frozenset:
    if isinstance(x, Subgroup):
        return x.elements
    return frozenset(x)


def subgroup_generated(g: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    return Subgroup(g, frozenset(_closure(g, sorted(set(seed)))))


def is_normal(g: FiniteGroup, elems, within=None) -> bool:
    elems = _elements(elems)
    conj = range(g.order) if within is None else sorted(_elements(within))
    mul, inv = g.mul, g.inverse
    return all(mul[mul[x][a]][inv[x]] in elems for x in conj for a in elems)


def normal_closure(g: FiniteGroup, seed: Iterable[int], within=None) -> Subgroup:
    """Smallest subgroup containing ``seed`` that is normalized by ``within`` (default all of g)."""
    conj = range(g.order) if within is None else sorted(_elements(within))
    mul, inv = g.mul, g.inverse
    gens = sorted(set(seed))
    elems = _closure(g, gens)
    while True:
        extra = [c for c in (mul[mul[x][a]][inv[x]] for x in conj for a in gens) if c not in elems]
        if not extra:
            return Subgroup(g, frozenset(elems))
        gens = sorted(set(gens) | set(extra))
        elems = _closure(g, gens)


def commutator_subgroup(g: FiniteGroup, left=None, right=None) -> Subgroup:
    """``[left, right]`` (default ``[G, G]``), the normal closure of all commutators."""
    mul, inv = g.mul, g.inverse
    left = range(g.order) if left is None else sorted(_elements(left))
    right = range(g.order) if right is None else sorted(_elements(right))
    comms = {mul[mul[a][b]][mul[inv[a]][inv[b]]] for a in left for b in right}
    return normal_closure(g, comms)


def subgroup_as_group(sub: Subgroup, name: str | None = None) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Materialize a subgroup; returns the group and its local-to-parent element map."""
    g = sub.parent
    elems = sorted(sub.elements, key=lambda a: (a != g.identity, a))
    index = {a: i for i, a in enumerate(elems)}
    table = [[index[g.mul[a][b]] for b in elems] for a in elems]
    h = FiniteGroup(table, name=name or f"sub({g.name})", identity=0, check=False)
    return h, tuple(elems)


def relabel(g: FiniteGroup, perm: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Isomorphic copy in which element ``a`` of ``g`` is renamed ``perm[a]``."""
    n = g.order
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            table[perm[a]][perm[b]] = perm[g.mul[a][b]]
    return FiniteGroup(table, name=name or g.name, identity=perm[g.identity],
                       generators=[perm[s] for s in g.generators], check=False)


def all_subgroups(g: FiniteGroup, max_generators: int | None = 3) -> list[Subgroup]:
    """Subgroups generated by at most ``max_generators`` elements, plus g itself.

    Sorted by (order, element indices).
    """
    cyclic: dict[frozenset, int] = {}
    for x in range(g.order):
        c = frozenset(_closure(g, [x]))
        cyclic.setdefault(c, x)
    found: dict[frozenset, tuple] = {c: (x,) for c, x in cyclic.items()}
    frontier = dict(found)
    level = 1
    while frontier and (max_generators is None or level < max_generators):
        nxt: dict[frozenset, tuple] = {}
        for h, gens in frontier.items():
            for c, x in cyclic.items():
                if c <= h:
                    continue
                j = frozenset(_closure(g, gens + (x,)))
                if j not in found and j not in nxt:
                    nxt[j] = gens + (x,)
        found.update(nxt)
        frontier = nxt
        level += 1
    found.setdefault(frozenset(range(g.order)), g.generators)
    subs = [Subgroup(g, s) for s in found]
    subs.sort(key=Subgroup.sort_key)
    return subs


def normal_subgroups(g: FiniteGroup, max_generators: int | None = 3) -> list[Subgroup]:
    return [s for s in all_subgroups(g, max_generators) if s.is_normal()]


# -- isomorphism ---------------------------------------------------------------

def iter_extensions(src: FiniteGroup, tgt: FiniteGroup, candidates: Sequence[Sequence[int]],
                    tick=None) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Depth-first search over generator images of ``src`` in ``tgt``.

    Yields ``(gen_images, elem_map)`` for every assignment (drawn from
    ``candidates[t]`` for generator ``t``) that extends to a homomorphism.
    ``tick`` is called once per candidate tried.
    """
    plan = src.hom_plan
    k = len(plan)
    tmul = tgt.mul
    phi = [0] * src.order
    phi[src.identity] = tgt.identity
    imgs = [0] * k

    def rec(t):
        if t == k:
            yield tuple(imgs), tuple(phi)
            return
        new_edges, checks = plan[t]
        for c in candidates[t]:
            if tick is not None:
                tick()
            imgs[t] = c
            for b, a, i in new_edges:
                phi[b] = tmul[phi[a]][imgs[i]]
            if all(phi[b] == tmul[phi[a]][imgs[i]] for a, i, b in checks):
                yield from rec(t + 1)

    yield from rec(0)


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> tuple[int, ...] | None:
    """An element map g -> h that is a group isomorphism, or None."""
    if g.order != h.order or g.invariants != h.invariants:
        return None
    sig_h = list(zip(h.element_orders, h.class_size))
    cands = []
    for s in g.generators:
        want = (g.element_orders[s], g.class_size[s])
        cands.append([x for x in range(h.order) if sig_h[x] == want])
    for _, phi in iter_extensions(g, h, cands):
        if len(set(phi)) == h.order:
            return phi
    return None


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    if g is h:
        return True
    return find_isomorphism(g, h) is not None


# -- products and quotients ------------------------------------------------------

@dataclass(frozen=True)
class ProductGroup:
    group: FiniteGroup
    proj_left: object
    proj_right: object
    diagonal: object | None


def _product_table(g: FiniteGroup, h: FiniteGroup) -> list[list[int]]:
    m = h.order
    gm, hm = g.mul, h.mul
    return [[gm[a // m][b // m] * m + hm[a % m][b % m] for b in range(g.order * m)]
            for a in range(g.order * m)]


def product_group(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    n = g.order * h.order
    if n > _max_order:
        raise OrderBoundExceeded(f"{g.name}x{h.name} has order {n} > {_max_order}")
    return FiniteGroup(_product_table(g, h), name=name or f"{g.name}x{h.name}",
                       identity=g.identity * h.order + h.identity, check=False)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> ProductGroup:
    """g x h with its projections, and the diagonal when ``g is h``.

    Element ``(a, b)`` has index ``a * |h| + b``.
    """
    from .homs import Morphism

    gh = product_group(g, h)
    m = h.order
    p1 = Morphism(gh, g, tuple(s // m for s in gh.generators), label="proj1")
    p2 = Morphism(gh, h, tuple(s % m for s in gh.generators), label="proj2")
    diag = None
    if g is h:
        diag = Morphism(g, gh, tuple(s * m + s for s in g.generators), label="diag")
    return ProductGroup(gh, p1, p2, diag)


def cosets(g: FiniteGroup, n) -> list[frozenset]:
    elems = _elements(n)
    seen: set[int] = set()
    out = []
    for a in range(g.order):
        if a in seen:
            continue
        c = frozenset(g.mul[a][x] for x in elems)
        seen |= c
        out.append(c)
    return out


def quotient(g: FiniteGroup, n, name: str | None = None):
    """``(g/n, projection)``; cosets are numbered by their smallest element."""
    from .homs import Morphism

    elems = _elements(n)
    if not is_normal(g, elems):
        raise NotNormal(f"subgroup of order {len(elems)} is not normal in {g.name}")
    cs = cosets(g, elems)
    which = [0] * g.order
    for i, c in enumerate(cs):
        for a in c:
            which[a] = i
    reps = [min(c) for c in cs]
    table = [[which[g.mul[r][s]] for s in reps] for r in reps]
    q = FiniteGroup(table, name=name or f"{g.name}/{len(elems)}", identity=which[g.identity],
                    check=False)
    proj = Morphism(g, q, tuple(which[s] for s in g.generators), label="quotient")
    return q, proj


# -- named constructors --------------------------------------------------------

class GroupSpec:
    """Abstract syntax of the supported group constructors."""

    order: int
    name: str

    def _table(self) -> list[list[int]]:
        raise NotImplementedError


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec("Cyclic(n) needs n >= 1")

    @property
    def order(self):
        return self.n

    @property
    def name(self):
        return f"C{self.n}"

    def _table(self):
        n = self.n
        return [[(a + b) % n for b in range(n)] for a in range(n)]


def _perm_table(perms: list[tuple[int, ...]]) -> list[list[int]]:
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    return [[index[tuple(p[x] for x in q)] for q in perms] for p in perms]


def _parity(p: Sequence[int]) -> int:
    seen, sign = set(), 0
    for i in range(len(p)):
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length:
            sign ^= (length - 1) & 1
    return sign


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidSpec("Symmetric(n) needs n >= 2")

    @property
    def order(self):
        return math.factorial(self.n)

    @property
    def name(self):
        return f"S{self.n}"

    def _table(self):
        return _perm_table(list(itertools.permutations(range(self.n))))


@dataclass(frozen=True)
class Alternating(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidSpec("Alternating(n) needs n >= 2")

    @property
    def order(self):
        return max(1, math.factorial(self.n) // 2)

    @property
    def name(self):
        return f"A{self.n}"

    def _table(self):
        perms = [p for p in itertools.permutations(range(self.n)) if _parity(p) == 0]
        return _perm_table(perms)


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Symmetries of a regular n-gon (order 2n); element ``r^k s^e`` has index ``k + n*e``."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec("Dihedral(n) needs n >= 1")

    @property
    def order(self):
        return 2 * self.n

    @property
    def name(self):
        return f"D{self.n}"

    def _table(self):
        n = self.n

        def mul(x, y):
            a, e = x % n, x // n
            b, f = y % n, y // n
            return (a + (b if e == 0 else -b)) % n + n * ((e + f) % 2)

        return [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]


@dataclass(frozen=True)
class Quaternion8(GroupSpec):
    @property
    def order(self):
        return 8

    @property
    def name(self):
        return "Q8"

    def _table(self):
        # x^a y^b with x^4 = 1, y^2 = x^2, y x y^-1 = x^-1
        def mul(u, v):
            a, b = u % 4, u // 4
            c, d = v % 4, v // 4
            e = a + (c if b == 0 else -c)
            if b + d == 2:
                e += 2
            return e % 4 + 4 * ((b + d) % 2)

        return [[mul(u, v) for v in range(8)] for u in range(8)]


@dataclass(frozen=True)
class Metacyclic(GroupSpec):
    """Split metacyclic group ``C_m : C_n`` with ``y x y^-1 = x^r``; element ``x^a y^b`` is ``a + m*b``."""

    m: int
    n: int
    r: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidSpec("Metacyclic(m, n, r) needs m, n >= 1")
        if math.gcd(self.r, self.m) != 1 or pow(self.r, self.n, self.m) != 1 % self.m:
            raise InvalidSpec(f"r={self.r} does not define an action of C{self.n} on C{self.m}")

    @property
    def order(self):
        return self.m * self.n

    @property
    def name(self):
        return f"M({self.m},{self.n},{self.r % self.m})"

    def _table(self):
        m, n, r = self.m, self.n, self.r
        rp = [pow(r, b, m) for b in range(n)]

        def mul(u, v):
            a, b = u % m, u // m
            c, d = v % m, v // m
            return (a + rp[b] * c) % m + m * ((b + d) % n)

        return [[mul(u, v) for v in range(m * n)] for u in range(m * n)]


@dataclass(frozen=True)
class Product(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    @property
    def order(self):
        return self.left.order * self.right.order

    @property
    def name(self):
        return f"{self.left.name}x{self.right.name}"


def build_group(spec: GroupSpec, max_order: int | None = None) -> FiniteGroup:
    bound = _max_order if max_order is None else max_order
    if spec.order > bound:
        raise OrderBoundExceeded(f"{spec.name} has order {spec.order} > {bound}")
    if isinstance(spec, Product):
        left, right = build_group(spec.left, bound), build_group(spec.right, bound)
        return FiniteGroup(_product_table(left, right), name=spec.name,
                           identity=left.identity * right.order + right.identity, check=False)
    return FiniteGroup(spec._table(), name=spec.name, identity=0, check=False)


def sign_map(n: int) -> tuple[int, ...]:
    """Parity (0 even, 1 odd) of every element of ``build_group(Symmetric(n))``."""
    return tuple(_parity(p) for p in itertools.permutations(range(n)))
