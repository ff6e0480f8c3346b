"""The lifting property f ⋔ g and Quillen negation restricted to a finite pool.

For ``f: A -> B`` and ``g: X -> Y`` a square is a pair ``(i: A -> X, j: B -> Y)``
with ``g∘i = j∘f``; a lift is ``h: B -> X`` with ``h∘f = i`` and ``g∘h = j``.
Every ``h`` in Hom(B, X) is a lift of exactly one square, namely
``(h∘f, g∘h)``, so f ⋔ g holds iff the number of commuting squares equals the
number of distinct pairs ``(h∘f, g∘h)``. Both counts come from cached hom
tables; the square-by-square walk (j outer, i inner) only runs to locate the
first failing square.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import SearchBudgetExceeded, UnsupportedSquare
from .groups import FiniteGroup
from .homs import HomSet, Morphism, compose, hom_table, iter_homs
from .presented import is_trivial_object


@dataclass(frozen=True)
class LiftingSquare:
    f: Morphism
    g: Morphism
    i: Morphism
    j: Morphism

    def commutes(self) -> bool:
        return compose(self.f, self.j).gen_images == compose(self.i, self.g).gen_images


@dataclass(frozen=True)
class LiftResult:
    holds: bool
    counterexample: LiftingSquare | None = None
    witness_lift: Morphism | None = None
    squares: int = 0

    def __bool__(self):
        return self.holds


def _require_finite_right(g: Morphism):
    if not (isinstance(g.source, FiniteGroup) and isinstance(g.target, FiniteGroup)):
        raise UnsupportedSquare(f"right morphism {g} must have finite source and target")


def _keys(arr: np.ndarray) -> np.ndarray:
    """One opaque, sortable key per row."""
    a = np.ascontiguousarray(np.hstack([np.zeros((arr.shape[0], 1), dtype=np.int16),
                                        arr.astype(np.int16, copy=False)]))
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def _counts_for(query: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """For each query key, how many times it occurs in ``keys``."""
    if keys.size == 0:
        return np.zeros(query.size, dtype=np.int64)
    uniq, counts = np.unique(keys, return_counts=True)
    pos = np.searchsorted(uniq, query)
    pos_c = np.minimum(pos, uniq.size - 1)
    hit = uniq[pos_c] == query
    return np.where(hit, counts[pos_c], 0)


def find_lift(sq: LiftingSquare) -> Morphism | None:
    """A diagonal for the square, searched over Hom(B, X) fibre by fibre."""
    f, g, i, j = sq.f, sq.g, sq.i, sq.j
    _require_finite_right(g)
    B, X = f.target, g.source
    fibres = [[x for x in range(X.order) if g.elem_map[x] == y] for y in j.gen_images]
    for imgs, emap in iter_homs(B, X, candidates=fibres):
        h = Morphism(B, X, imgs, check=False, elem_map=emap)
        if all(h.apply(w) == c for w, c in zip(f.gen_images, i.gen_images)):
            return h
    return None


def lifts(f: Morphism, g: Morphism) -> LiftResult:
    """Decide f ⋔ g exhaustively; on failure report the canonically first bad square."""
    _require_finite_right(g)
    A, B, X, Y = f.source, f.target, g.source, g.target
    HAX, HBY, HBX = hom_table(A, X), hom_table(B, Y), hom_table(B, X)
    gmap = np.asarray(g.elem_map, dtype=np.int16)

    ka = _keys(gmap[HAX.gens])                  # g∘i on A's generators
    kj = _keys(HBY.images_of(f.gen_images))     # j∘f on A's generators
    per_j = _counts_for(kj, ka)                 # commuting i for each j
    n_squares = int(per_j.sum())

    im = np.unique(_keys(np.hstack([HBX.images_of(f.gen_images), gmap[HBX.gens]])))
    if im.size == n_squares:
        witness = _last_witness(f, g, HAX, HBY, HBX, ka, kj, per_j) if n_squares else None
        return LiftResult(True, None, witness, n_squares)

    # distinct lifted pairs per j, compared to commuting squares per j
    gj_of_im = _keys(np.unique(np.hstack([HBX.images_of(f.gen_images), gmap[HBX.gens]]),
                               axis=0)[:, len(f.gen_images):])
    lifted = _counts_for(_keys(HBY.gens), gj_of_im)
    jn = int(np.flatnonzero(per_j > lifted)[0])
    im_set = set(im.tolist())
    for i_idx in np.flatnonzero(ka == kj[jn]):
        pair = _keys(np.concatenate([HAX.gens[i_idx], HBY.gens[jn]])[None, :])[0]
        if pair.tobytes() not in im_set:
            sq = LiftingSquare(f, g, HAX.morphism(int(i_idx)), HBY.morphism(jn))
            return LiftResult(False, sq, None, n_squares)
    raise AssertionError("square count mismatch without a failing square")  # pragma: no cover


def _last_witness(f, g, HAX: HomSet, HBY: HomSet, HBX: HomSet, ka, kj, per_j) -> Morphism:
    jn = int(np.flatnonzero(per_j)[-1])
    i_idx = int(np.flatnonzero(ka == kj[jn])[-1])
    gmap = np.asarray(g.elem_map, dtype=np.int16)
    ok = (HBX.images_of(f.gen_images) == HAX.gens[i_idx]).all(axis=1) & \
         (gmap[HBX.gens] == HBY.gens[jn]).all(axis=1)
    return HBX.morphism(int(np.flatnonzero(ok)[0]))


def lifts_all(left: Iterable[Morphism], g: Morphism) -> LiftResult:
    """``f ⋔ g`` for every ``f`` in ``left``; stops at the first failure."""
    last = LiftResult(True)
    for f in left:
        r = lifts(f, g)
        if not r.holds:
            return r
        last = r
    return last


# -- restricted Quillen negation ----------------------------------------------------

def negation_class(p: Iterable[int], side: str, universe: Iterable[int], pool: Mapping) -> set[int]:
    """Members of ``universe`` lifting against every member of ``p``.

    ``side='right'``: ``{u : q ⋔ u for all q in p}``;
    ``side='left'``: ``{u : u ⋔ q for all q in p}``. Ids index ``pool``.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    p = sorted(set(p))
    out = set()
    for u in sorted(set(universe)):
        ok = True
        for q in p:
            pair = (q, u) if side == "right" else (u, q)
            try:
                if not lifts(pool[pair[0]], pool[pair[1]]).holds:
                    ok = False
                    break
            except (SearchBudgetExceeded, UnsupportedSquare) as exc:
                exc.pair = pair
                raise
        if ok:
            out.add(u)
    return out


def restrict_to_terminal(p: Iterable[int], mode: str, pool: Mapping) -> set[int]:
    """Morphisms of ``p`` out of the trivial group (``from_zero``) or into it (``to_zero``)."""
    if mode == "from_zero":
        return {m for m in p if is_trivial_object(pool[m].source)}
    if mode == "to_zero":
        return {m for m in p if is_trivial_object(pool[m].target)}
    raise ValueError("mode must be 'from_zero' or 'to_zero'")

