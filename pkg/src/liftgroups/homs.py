"""Homomorphisms between group objects and exhaustive enumeration of hom-sets.

Two enumerators share the same pruning (order divisibility, relator checks,
incremental extension along the source's Cayley graph):

* :func:`iter_homs` is a lazy depth-first search, used for early-exit queries;
* :func:`hom_table` is a breadth-first, numpy-vectorized enumeration whose
  results are cached per (source, target) pair and feed the lifting engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import ArityMismatch, NotAHomomorphism, SearchBudgetExceeded, SourceTargetMismatch
from .groups import FiniteGroup, Subgroup, iter_extensions, subgroup_generated
from .presented import GroupObject, PresentedGroup, arity, eval_word, substitute

DEFAULT_BUDGET = 10**8
_budget = DEFAULT_BUDGET


def set_search_budget(n: int) -> None:
    global _budget
    _budget = int(n)
    hom_table.cache_clear()


def get_search_budget() -> int:
    return _budget


class _Counter:
    __slots__ = ("n", "limit", "what")

    def __init__(self, what, limit=None):
        self.n = 0
        self.limit = _budget if limit is None else limit
        self.what = what

    def add(self, k=1):
        self.n += k
        if self.n > self.limit:
            raise SearchBudgetExceeded(f"search budget of {self.limit} candidates exceeded in {self.what}")


def same_object(a: GroupObject, b: GroupObject) -> bool:
    if a is b:
        return True
    return isinstance(a, PresentedGroup) and isinstance(b, PresentedGroup) and a == b


def _obj_name(obj: GroupObject) -> str:
    return obj.name or repr(obj)


class Morphism:
    """A homomorphism stored by the images of the source's generators.

    For a finite target the images are element indices, for a presented target
    they are words. ``elem_map`` is the full element map when both ends are
    finite.
    """

    __slots__ = ("source", "target", "gen_images", "elem_map", "label")

    def __init__(self, source: GroupObject, target: GroupObject, gen_images: Sequence,
                 label: str = "", check: bool = True, elem_map: Sequence[int] | None = None):
        k = arity(source)
        if len(gen_images) != k:
            raise ArityMismatch(f"{k} generator images expected, got {len(gen_images)}")
        if isinstance(target, FiniteGroup):
            imgs = tuple(int(x) for x in gen_images)
        else:
            imgs = tuple(tuple(int(x) for x in w) for w in gen_images)
        self.source, self.target, self.gen_images, self.label = source, target, imgs, label
        self.elem_map = None
        if isinstance(source, FiniteGroup) and isinstance(target, FiniteGroup):
            if elem_map is None:
                found = next(iter_extensions(source, target, [[c] for c in imgs]), None)
                if found is None:
                    raise NotAHomomorphism(f"images {imgs} do not extend from {source.name} to {target.name}")
                elem_map = found[1]
            self.elem_map = tuple(elem_map)
        elif check and isinstance(source, PresentedGroup) and isinstance(target, FiniteGroup):
            for w in source.relators:
                if eval_word(w, imgs, target) != target.identity:
                    raise NotAHomomorphism(f"relator {w} of {_obj_name(source)} is not killed")

    def __repr__(self):
        tag = f":{self.label}" if self.label else ""
        return f"Morphism({_obj_name(self.source)}->{_obj_name(self.target)}{tag}, {list(self.gen_images)})"

    @property
    def finite(self) -> bool:
        return self.elem_map is not None

    def apply(self, x):
        """Image of an element (finite source) or a word (presented source)."""
        src, tgt = self.source, self.target
        if isinstance(src, FiniteGroup):
            if self.elem_map is not None:
                return self.elem_map[x]
            return substitute([i + 1 for i in src.words[x]], self.gen_images)
        if isinstance(tgt, FiniteGroup):
            return eval_word(x, self.gen_images, tgt)
        return substitute(x, self.gen_images)

    def same_map(self, other: "Morphism") -> bool:
        if not (same_object(self.source, other.source) and same_object(self.target, other.target)):
            return False
        if not isinstance(self.target, FiniteGroup):
            raise NotImplementedError("equality of words in a presented group is undecidable here")
        return self.gen_images == other.gen_images

    def image(self) -> Subgroup:
        return subgroup_generated(self.target, self.gen_images)

    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source, frozenset(a for a, b in enumerate(self.elem_map) if b == e))

    @property
    def is_trivial(self) -> bool:
        if isinstance(self.target, FiniteGroup):
            return all(x == self.target.identity for x in self.gen_images)
        return all(len(w) == 0 for w in self.gen_images)


def identity(g: FiniteGroup) -> Morphism:
    return Morphism(g, g, g.generators, label="id", elem_map=range(g.order))


def from_map(source: FiniteGroup, target: FiniteGroup, elem_map: Sequence[int], label: str = "") -> Morphism:
    """Morphism from a full element map (validated)."""
    return Morphism(source, target, [elem_map[s] for s in source.generators], label=label)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The morphism ``f`` followed by ``g``."""
    if not same_object(f.target, g.source):
        raise SourceTargetMismatch(f"cannot compose {f} with {g}")
    imgs = [g.apply(x) for x in f.gen_images]
    emap = None
    if f.elem_map is not None and g.elem_map is not None:
        emap = [g.elem_map[x] for x in f.elem_map]
    return Morphism(f.source, g.target, imgs, label="", check=False, elem_map=emap)


def classify_hom(f: Morphism) -> dict:
    if f.elem_map is None:
        raise ArityMismatch("classify_hom needs finite source and target")
    e = f.target.identity
    image = set(f.elem_map)
    kernel = sum(1 for b in f.elem_map if b == e)
    return {"injective": kernel == 1, "surjective": len(image) == f.target.order,
            "trivial": image == {e}}


# -- enumeration -----------------------------------------------------------------

def _default_candidates(a: GroupObject, x: FiniteGroup) -> list[list[int]]:
    xo = x.element_orders
    if isinstance(a, FiniteGroup):
        ao = a.element_orders
        return [[c for c in range(x.order) if ao[s] % xo[c] == 0] for s in a.generators]
    cands = []
    for gen in range(1, a.arity + 1):
        # a relator x^n in this generator alone forces the image order to divide n
        n = 0
        for w in a.relators:
            if w and all(abs(l) == gen for l in w):
                n = math.gcd(n, abs(sum(1 if l > 0 else -1 for l in w)))
        cands.append([c for c in range(x.order) if n == 0 or n % xo[c] == 0])
    return cands


def _relators_by_level(a: PresentedGroup) -> list[list[tuple]]:
    levels: list[list[tuple]] = [[] for _ in range(a.arity)]
    for w in a.relators:
        if w:
            levels[max(abs(l) for l in w) - 1].append(w)
    return levels


def iter_homs(a: GroupObject, x: FiniteGroup, candidates=None, limit=None) -> Iterator[tuple]:
    """Lazily yield ``(gen_images, elem_map_or_None)`` for every hom ``a -> x``.

    ``candidates[t]`` restricts the image of generator ``t``; the order of
    each candidate list fixes the output order.
    """
    cands = _default_candidates(a, x) if candidates is None else candidates
    counter = _Counter(f"Hom({_obj_name(a)}, {x.name})", limit)
    if isinstance(a, FiniteGroup):
        yield from iter_extensions(a, x, cands, counter.add)
        return
    levels = _relators_by_level(a)
    k = a.arity
    imgs = [0] * k

    def rec(t):
        if t == k:
            yield tuple(imgs), None
            return
        for c in cands[t]:
            counter.add()
            imgs[t] = c
            if all(eval_word(w, imgs, x) == x.identity for w in levels[t]):
                yield from rec(t + 1)

    yield from rec(0)


@dataclass(frozen=True, eq=False)
class HomSet:
    """All homs ``source -> target`` as arrays: ``gens`` (n x k) and ``maps`` (n x |source|)."""

    source: GroupObject
    target: FiniteGroup
    gens: np.ndarray
    maps: np.ndarray | None

    def __len__(self):
        return self.gens.shape[0]

    def morphism(self, i: int) -> Morphism:
        emap = None if self.maps is None else self.maps[i].tolist()
        return Morphism(self.source, self.target, self.gens[i].tolist(), check=False, elem_map=emap)

    def images_of(self, imgs: Sequence) -> np.ndarray:
        """Column ``c`` is the image, under each hom, of source element/word ``imgs[c]``."""
        n = len(self)
        if not imgs:
            return np.zeros((n, 0), dtype=np.int16)
        if isinstance(self.source, FiniteGroup):
            return self.maps[:, list(imgs)]
        t, inv = self.target.table, self.target.inverse_array
        cols = []
        for w in imgs:
            cur = np.full(n, self.target.identity, dtype=np.int16)
            for letter in w:
                col = self.gens[:, letter - 1] if letter > 0 else inv[self.gens[:, -letter - 1]]
                cur = t[cur, col]
            cols.append(cur)
        return np.stack(cols, axis=1)


def _enumerate_table(a: GroupObject, x: FiniteGroup, cands) -> HomSet:
    counter = _Counter(f"Hom({_obj_name(a)}, {x.name})")
    t = x.table
    k = len(cands)
    gens = np.zeros((1, 0), dtype=np.int16)
    if isinstance(a, FiniteGroup):
        maps = np.zeros((1, a.order), dtype=np.int16)
        maps[:, a.identity] = x.identity
        plan = a.hom_plan
    else:
        maps = None
        levels = _relators_by_level(a)
    for lvl in range(k):
        c = np.asarray(cands[lvl], dtype=np.int16)
        m = gens.shape[0]
        counter.add(m * len(c))
        gens = np.hstack([np.repeat(gens, len(c), axis=0), np.tile(c, m)[:, None]])
        mask = np.ones(gens.shape[0], dtype=bool)
        if maps is not None:
            maps = np.repeat(maps, len(c), axis=0)
            new_edges, checks = plan[lvl]
            for b, p, i in new_edges:
                maps[:, b] = t[maps[:, p], gens[:, i]]
            for p, i, b in checks:
                mask &= maps[:, b] == t[maps[:, p], gens[:, i]]
        else:
            inv = x.inverse_array
            for w in levels[lvl]:
                cur = np.full(gens.shape[0], x.identity, dtype=np.int16)
                for letter in w:
                    col = gens[:, letter - 1] if letter > 0 else inv[gens[:, -letter - 1]]
                    cur = t[cur, col]
                mask &= cur == x.identity
        if not mask.all():
            gens = gens[mask]
            if maps is not None:
                maps = maps[mask]
    gens.setflags(write=False)
    if maps is not None:
        maps.setflags(write=False)
    return HomSet(a, x, gens, maps)


@lru_cache(maxsize=8192)
def _cached_table(a: GroupObject, x: FiniteGroup) -> HomSet:
    return _enumerate_table(a, x, _default_candidates(a, x))


def hom_table(a: GroupObject, x: FiniteGroup, candidates=None) -> HomSet:
    """Every hom ``a -> x`` in lexicographic order of generator images."""
    if not isinstance(x, FiniteGroup):
        raise TypeError("hom targets must be finite groups")
    if candidates is None:
        return _cached_table(a, x)
    return _enumerate_table(a, x, candidates)


hom_table.cache_clear = _cached_table.cache_clear
hom_table.cache_info = _cached_table.cache_info


def enumerate_homs(a: GroupObject, x: FiniteGroup) -> list[Morphism]:
    table = hom_table(a, x)
    return [table.morphism(i) for i in range(len(table))]


def count_homs(a: GroupObject, x: FiniteGroup) -> int:
    return len(hom_table(a, x))


def exists_nontrivial_hom(a: GroupObject, x: FiniteGroup) -> bool:
    e = x.identity
    return any(any(c != e for c in imgs) for imgs, _ in iter_homs(a, x))
