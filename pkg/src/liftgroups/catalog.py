"""The finite universe: a deduplicated catalog of groups plus a morphism pool."""
from __future__ import annotations

import hashlib
import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field

from .errors import OrderBoundExceeded
from .groups import (Alternating, Cyclic, Dihedral, FiniteGroup, GroupSpec, Metacyclic, Product,
                     Quaternion8, Subgroup, Symmetric, all_subgroups, build_group, find_isomorphism,
                     get_max_order, product_group, quotient, subgroup_as_group)
from .homs import Morphism, hom_table
from .oracles import primes_up_to
from .presented import F2, TRIVIAL, Z, Z2, PresentedGroup, cyclic_presentation, from_zero, to_zero
from .presented import standard_objects as _standard_objects

FORMAT_VERSION = 1

# Number of isomorphism classes of groups of each order n <= 63.
KNOWN_GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2,
    15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15, 25: 2, 26: 2,
    27: 5, 28: 4, 29: 1, 30: 4, 31: 1, 32: 51, 33: 1, 34: 2, 35: 1, 36: 14, 37: 1, 38: 2,
    39: 2, 40: 14, 41: 1, 42: 6, 43: 1, 44: 4, 45: 2, 46: 2, 47: 1, 48: 52, 49: 2, 50: 5,
    51: 1, 52: 5, 53: 1, 54: 15, 55: 2, 56: 13, 57: 2, 58: 2, 59: 1, 60: 13, 61: 1, 62: 2,
    63: 4,
}


@dataclass
class UniverseConfig:
    max_order: int = 16
    seeds: list | None = None
    closure_depth: int = 2
    max_subgroup_generators: int | None = 3

    def echo(self) -> dict:
        d = asdict(self)
        d["seeds"] = None if self.seeds is None else \
            [s if isinstance(s, str) else s.name for s in self.seeds]
        return d


@dataclass
class PoolConfig:
    include_inclusions: bool = True
    include_quotients: bool = True
    include_diagonals: bool = True
    include_standard: bool = True
    sample_homs_per_pair: int = 0


@dataclass
class PoolEntry:
    kind: str
    note: str = ""
    group: int | None = None        # catalog group the entry was derived from
    subgroup: Subgroup | None = None


@dataclass
class Universe:
    groups: list
    provenance: list
    config: UniverseConfig
    morphisms: list = field(default_factory=list)
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self._buckets = defaultdict(list)
        for gid, g in enumerate(self.groups):
            self._buckets[g.invariants].append(gid)
        self._subgroups: dict = {}
        self._mkeys = {self._morphism_key(m): i for i, m in enumerate(self.morphisms)}
        self.standard = _standard_objects(tuple(primes_up_to(max(2, self.config.max_order))))

    def __getitem__(self, mid: int) -> Morphism:
        return self.morphisms[mid]

    def __len__(self):
        return len(self.morphisms)

    @property
    def trivial(self) -> FiniteGroup:
        return self.groups[0]

    def group_id(self, g: FiniteGroup) -> int | None:
        for gid, h in enumerate(self.groups):
            if h is g:
                return gid
        return None

    def find(self, h: FiniteGroup):
        """``(gid, iso h -> groups[gid])`` for the catalog entry isomorphic to h, or None."""
        for gid in self._buckets.get(h.invariants, ()):
            if self.groups[gid] is h:
                return gid, tuple(range(h.order))
            iso = find_isomorphism(h, self.groups[gid])
            if iso is not None:
                return gid, iso
        return None

    def subgroups(self, gid: int) -> list[Subgroup]:
        if gid not in self._subgroups:
            self._subgroups[gid] = all_subgroups(self.groups[gid], self.config.max_subgroup_generators)
        return self._subgroups[gid]

    def by_name(self, name: str) -> FiniteGroup | None:
        return next((g for g in self.groups if g.name == name), None)

    def add_morphism(self, m: Morphism, entry: PoolEntry) -> int:
        key = self._morphism_key(m)
        if key in self._mkeys:
            return self._mkeys[key]
        self._mkeys[key] = len(self.morphisms)
        self.morphisms.append(m)
        self.entries.append(entry)
        return len(self.morphisms) - 1

    def object_ref(self, obj) -> str:
        if isinstance(obj, PresentedGroup):
            return "std:" + obj.name
        gid = self.group_id(obj)
        if gid is None:
            raise ValueError(f"{obj} is not a catalog object")
        return f"g{gid}"

    def _morphism_key(self, m: Morphism):
        return (self.object_ref(m.source), self.object_ref(m.target), m.gen_images)

    def describe_morphism(self, mid: int) -> str:
        m, e = self.morphisms[mid], self.entries[mid]
        return f"m{mid}:{e.kind} {_name(m.source)}->{_name(m.target)}"

    def coverage(self) -> dict:
        counts = defaultdict(int)
        for g in self.groups:
            counts[g.order] += 1
        return {n: {"found": counts.get(n, 0), "known": KNOWN_GROUP_COUNTS.get(n)}
                for n in range(1, self.config.max_order + 1)}

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format": "liftgroups-universe",
            "version": FORMAT_VERSION,
            "config": self.config.echo(),
            "groups": [{"id": gid, "name": g.name, "provenance": self.provenance[gid],
                        "identity": g.identity, "generators": list(g.generators),
                        "table": [list(r) for r in g.mul]}
                       for gid, g in enumerate(self.groups)],
            "morphisms": [{"id": mid, "kind": e.kind, "source": self.object_ref(m.source),
                           "target": self.object_ref(m.target),
                           "gen_images": [list(x) if isinstance(x, tuple) else x for x in m.gen_images],
                           "label": m.label, "note": e.note, "group": e.group,
                           "subgroup": None if e.subgroup is None else sorted(e.subgroup.elements)}
                          for mid, (m, e) in enumerate(zip(self.morphisms, self.entries))],
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_dict(cls, d: dict) -> "Universe":
        if d.get("format") != "liftgroups-universe" or d.get("version") != FORMAT_VERSION:
            raise ValueError("not a liftgroups universe file of a supported version")
        config = UniverseConfig(**d["config"])
        groups = [FiniteGroup(e["table"], name=e["name"], identity=e["identity"],
                              generators=e["generators"], check=False) for e in d["groups"]]
        u = cls(groups, [e["provenance"] for e in d["groups"]], config, notes=list(d["notes"]))
        std = {o.name: o for o in (TRIVIAL, Z, Z2, F2)}

        def ref(r):
            if r.startswith("std:"):
                name = r[4:]
                return std[name] if name in std else cyclic_presentation(int(name.split("/")[1]))
            return groups[int(r[1:])]

        for e in d["morphisms"]:
            src, tgt = ref(e["source"]), ref(e["target"])
            imgs = [tuple(x) if isinstance(x, list) else x for x in e["gen_images"]]
            sub = None
            if e["subgroup"] is not None:
                sub = Subgroup(groups[e["group"]], frozenset(e["subgroup"]))
            u.add_morphism(Morphism(src, tgt, imgs, label=e["label"]),
                           PoolEntry(e["kind"], e["note"], e["group"], sub))
        return u

    @classmethod
    def load(cls, path) -> "Universe":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _name(obj) -> str:
    return obj.name


# -- construction --------------------------------------------------------------------

def default_seeds(max_order: int) -> list[GroupSpec]:
    seeds: list[GroupSpec] = [Cyclic(n) for n in range(1, max_order + 1)]
    seeds += [Dihedral(n) for n in range(2, max_order // 2 + 1)]
    for spec in (Symmetric(3), Symmetric(4), Alternating(4), Alternating(5), Quaternion8()):
        if spec.order <= max_order:
            seeds.append(spec)
    seen = set()
    for m in range(3, max_order // 2 + 1):
        for n in range(2, max_order // m + 1):
            for r in range(2, m):
                if math.gcd(r, m) != 1 or pow(r, n, m) != 1:
                    continue
                # r and any generator of <r> give isomorphic groups
                key = (m, n, frozenset(pow(r, k, m) for k in range(n)))
                if key not in seen:
                    seen.add(key)
                    seeds.append(Metacyclic(m, n, r))
    base = list(seeds)
    for a in range(len(base)):
        for b in range(a, len(base)):
            s, t = base[a], base[b]
            if s.order > 1 and t.order > 1 and s.order * t.order <= max_order:
                seeds.append(Product(s, t))
    return seeds


class _Catalog:
    """Isomorphism-deduplicating accumulator used while building a universe."""

    def __init__(self):
        self.groups: list[FiniteGroup] = []
        self.provenance: list[str] = []
        self.buckets = defaultdict(list)

    def add(self, g: FiniteGroup, prov: str) -> bool:
        for idx in self.buckets[g.invariants]:
            if find_isomorphism(g, self.groups[idx]) is not None:
                return False
        self.buckets[g.invariants].append(len(self.groups))
        self.groups.append(g)
        self.provenance.append(prov)
        return True


def build_universe(config: UniverseConfig | None = None) -> Universe:
    config = config or UniverseConfig()
    if config.max_order > get_max_order():
        raise OrderBoundExceeded(f"universe bound {config.max_order} > {get_max_order()}")
    seeds = default_seeds(config.max_order) if config.seeds is None else list(config.seeds)
    cat = _Catalog()
    cat.add(build_group(Cyclic(1)), "seed:C1")
    frontier = []
    for spec in seeds:
        if spec.order > config.max_order:
            raise OrderBoundExceeded(f"seed {spec.name} has order {spec.order} > {config.max_order}")
        if cat.add(build_group(spec), f"seed:{spec.name}"):
            frontier.append(len(cat.groups) - 1)
    for depth in range(config.closure_depth):
        new = []
        for idx in frontier:
            g = cat.groups[idx]
            for sub in all_subgroups(g, config.max_subgroup_generators):
                if sub.is_trivial or sub.is_whole:
                    continue
                h, _ = subgroup_as_group(sub, name=f"sub{len(sub)}({g.name})")
                if cat.add(h, f"sub:{cat.provenance[idx]}"):
                    new.append(len(cat.groups) - 1)
                if sub.is_normal():
                    q, _ = quotient(g, sub, name=f"{g.name}/{len(sub)}")
                    if cat.add(q, f"quot:{cat.provenance[idx]}"):
                        new.append(len(cat.groups) - 1)
        frontier = new
    order = sorted(range(len(cat.groups)),
                   key=lambda i: (cat.groups[i].invariants, cat.provenance[i]))
    groups = [cat.groups[i] for i in order]
    provenance = [cat.provenance[i] for i in order]
    return Universe(groups, provenance, config)


def morphism_pool(u: Universe, config: PoolConfig | None = None) -> Universe:
    """Add the distinguished morphisms to ``u`` (in place) and return it."""
    config = config or PoolConfig()
    zero = u.trivial
    if config.include_standard:
        std = u.standard
        u.add_morphism(std.abelianization, PoolEntry("standard", "F2->Z2ab"))
        u.add_morphism(std.zero_to_Z, PoolEntry("standard", "0->Z"))
        u.add_morphism(to_zero(Z, zero), PoolEntry("standard", "Z->0"))
        for p, zp in std.cyclic.items():
            u.add_morphism(from_zero(zp), PoolEntry("standard", f"0->Z/{p}"))
            u.add_morphism(to_zero(zp, zero), PoolEntry("standard", f"Z/{p}->0"))
    for gid, g in enumerate(u.groups):
        subs = u.subgroups(gid)
        if config.include_inclusions:
            for sub in subs:
                m = inclusion_morphism(u, gid, sub)
                if m is None:
                    u.notes.append(f"g{gid}: subgroup of order {len(sub)} has no catalog representative")
                    continue
                u.add_morphism(m, PoolEntry("inclusion", "", gid, sub))
        if config.include_quotients:
            for sub in subs:
                if not sub.is_normal():
                    continue
                m = quotient_morphism(u, gid, sub)
                if m is None:
                    u.notes.append(f"g{gid}: quotient by order {len(sub)} has no catalog representative")
                    continue
                u.add_morphism(m, PoolEntry("quotient", "", gid, sub))
        if config.include_diagonals:
            if g.order ** 2 <= u.config.max_order:
                m = diagonal_morphism(u, gid)
                if m is not None:
                    u.add_morphism(m, PoolEntry("diagonal", "", gid))
            elif g.order > 1:
                u.notes.append(f"g{gid}: diagonal skipped, product order {g.order ** 2} out of bound")
        u.add_morphism(Morphism(zero, g, (), label="0->"), PoolEntry("zero_in", "", gid))
        u.add_morphism(to_zero(g, zero), PoolEntry("zero_out", "", gid))
    if config.sample_homs_per_pair:
        k = config.sample_homs_per_pair
        for a, ga in enumerate(u.groups):
            for b, gb in enumerate(u.groups):
                if ga.order == 1 or gb.order == 1:
                    continue
                table = hom_table(ga, gb)
                picks = sorted({(len(table) - 1) * t // max(1, k) for t in range(1, k + 1)}) if len(table) > 1 else []
                for idx in picks:
                    u.add_morphism(table.morphism(idx), PoolEntry("sample", f"hom #{idx}", a))
    return u


def inclusion_morphism(u: Universe, gid: int, sub: Subgroup) -> Morphism | None:
    g = u.groups[gid]
    if sub.is_whole:
        return Morphism(g, g, g.generators, label="id", elem_map=range(g.order))
    h, local = subgroup_as_group(sub)
    found = u.find(h)
    if found is None:
        return None
    rid, iso = found
    rep = u.groups[rid]
    back = [0] * rep.order
    for a, b in enumerate(iso):
        back[b] = local[a]
    return Morphism(rep, g, [back[s] for s in rep.generators], label="incl")


def quotient_morphism(u: Universe, gid: int, sub: Subgroup) -> Morphism | None:
    g = u.groups[gid]
    if sub.is_trivial:
        return Morphism(g, g, g.generators, label="id", elem_map=range(g.order))
    q, proj = quotient(g, sub)
    found = u.find(q)
    if found is None:
        return None
    rid, iso = found
    return Morphism(g, u.groups[rid], [iso[proj.gen_images[t]] for t in range(len(g.generators))],
                    label="quot")


def diagonal_morphism(u: Universe, gid: int) -> Morphism | None:
    g = u.groups[gid]
    gg = product_group(g, g)
    found = u.find(gg)
    if found is None:
        u.notes.append(f"g{gid}: {g.name}x{g.name} has no catalog representative")
        return None
    rid, iso = found
    m = g.order
    return Morphism(g, u.groups[rid], [iso[s * m + s] for s in g.generators], label="diag")


def default_universe(max_order: int = 16, closure_depth: int = 2, pool: PoolConfig | None = None) -> Universe:
    u = build_universe(UniverseConfig(max_order=max_order, closure_depth=closure_depth))
    return morphism_pool(u, pool)
