"""Each lifting-property characterization as a predicate, checked against its oracle.

Every check evaluates the diagram's lifting condition over a witness class
drawn from the universe, plus (where needed) one exact witness that makes the
finite check agree with a quantifier over all finite groups:

* solvable: the last derived term H^(∞) of the subject H,
* p-group: Z/q for each prime q != p dividing |G|,
* normal closure: the quotient H / ncl(image),
* subnormal / nilpotent: D -> D', D' the smallest subnormal subgroup over D.
"""
from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from functools import cached_property

from .catalog import Universe
from .errors import ArityMismatch, LiftGroupsError
from .groups import (FiniteGroup, Subgroup, commutator_subgroup, direct_product, get_max_order,
                     normal_closure, quotient, subgroup_as_group, whole)
from .homs import Morphism, classify_hom
from .lifting import LiftingSquare, LiftResult, lifts
from .oracles import (is_abelian, is_nilpotent, is_p_group, is_perfect, is_solvable, is_subnormal,
                      order_coprime_to, perfect_core, primes_dividing, primes_up_to, has_odd_order)
from .presented import PresentedGroup, cyclic_presentation, from_zero, to_zero

DIAGRAMS = ("a_surjective", "b_injective", "c_abelian", "d_perfect", "e_solvable", "f_coprime",
            "g_pgroup", "h_odd", "i_feit_thompson", "k_normal_closure", "l_subnormal",
            "m_nilpotent")
VALIDITY_ONLY = ("i_feit_thompson",)
DEFINITIONAL = tuple(d for d in DIAGRAMS if d not in VALIDITY_ONLY)


@dataclass
class Verdict:
    diagram: str
    subject: str
    via_lifting: bool
    via_oracle: bool
    agree: bool
    witnesses: list = field(default_factory=list)
    counterexample: LiftingSquare | None = None
    details: dict = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict:
        d = {"diagram": self.diagram, "subject": self.subject, "via_lifting": self.via_lifting,
             "via_oracle": self.via_oracle, "agree": self.agree, "witnesses": list(self.witnesses)}
        if self.counterexample is not None:
            d["counterexample"] = square_to_dict(self.counterexample)
        if self.details:
            d["details"] = self.details
        if self.error:
            d["error"] = self.error
        return d


def morphism_to_dict(m: Morphism) -> dict:
    return {"source": m.source.name, "target": m.target.name,
            "gen_images": [list(x) if isinstance(x, tuple) else x for x in m.gen_images]}


def square_to_dict(sq: LiftingSquare) -> dict:
    return {k: morphism_to_dict(getattr(sq, k)) for k in ("f", "g", "i", "j")}


def _verdict(diagram, subject, lifting, oracle, witnesses, result: LiftResult | None = None,
             **details) -> Verdict:
    forms = details.get("forms")
    agree = lifting == oracle and (forms is None or all(v == lifting for v in forms.values()))
    cex = None if result is None or result.holds else result.counterexample
    return Verdict(diagram, subject, lifting, oracle, agree, witnesses, cex, details)


class Checker:
    """Per-universe caches behind :func:`check_diagram`."""

    def __init__(self, u: Universe):
        self.u = u
        self.zero = u.trivial
        self.std = u.standard
        self._zp: dict = {}
        self._incl: dict = {}
        self._diag: dict = {}

    # -- building blocks -----------------------------------------------------------

    def zero_in(self, g: FiniteGroup) -> Morphism:
        return Morphism(self.zero, g, (), label="0->")

    def zero_out(self, g) -> Morphism:
        return to_zero(g, self.zero)

    def cyclic(self, p: int) -> PresentedGroup:
        if p not in self._zp:
            self._zp[p] = cyclic_presentation(p)
        return self._zp[p]

    def subgroup_inclusion(self, sub: Subgroup) -> Morphism:
        key = (id(sub.parent), sub.elements)
        if key not in self._incl:
            h, local = subgroup_as_group(sub, name=f"sub{len(sub)}({sub.parent.name})")
            self._incl[key] = Morphism(h, sub.parent, [local[s] for s in h.generators],
                                       label="incl", elem_map=local)
        return self._incl[key]

    def diagonal(self, g: FiniteGroup) -> Morphism:
        if id(g) not in self._diag:
            self._diag[id(g)] = direct_product(g, g).diagonal
        return self._diag[id(g)]

    def gname(self, gid: int) -> str:
        return f"g{gid}:{self.u.groups[gid].name}"

    @cached_property
    def abelian_ids(self) -> list[int]:
        return [gid for gid, g in enumerate(self.u.groups) if is_abelian(g)]

    @cached_property
    def perfect_ids(self) -> list[int]:
        return [gid for gid, g in enumerate(self.u.groups) if is_perfect(g)]

    @cached_property
    def commutator_inclusions(self) -> list[Morphism]:
        return [self.subgroup_inclusion(commutator_subgroup(g)) for g in self.u.groups]

    @cached_property
    def normal_closure_ids(self) -> list[int]:
        return normal_closure_morphisms(self.u)

    # -- subjects --------------------------------------------------------------------

    def subjects(self, diagram: str, nilpotent_max_product: int | None = None) -> list:
        u = self.u
        finite = [mid for mid, m in enumerate(u.morphisms) if m.finite]
        if diagram in ("a_surjective", "b_injective", "k_normal_closure"):
            return finite
        if diagram == "l_subnormal":
            return [mid for mid in finite if u.entries[mid].kind == "inclusion"]
        if diagram in ("c_abelian", "d_perfect", "e_solvable", "h_odd"):
            return list(range(len(u.groups)))
        if diagram in ("f_coprime", "g_pgroup"):
            primes = primes_up_to(max(2, u.config.max_order))
            return [(gid, p) for gid in range(len(u.groups)) for p in primes]
        if diagram == "m_nilpotent":
            bound = get_max_order() if nilpotent_max_product is None else nilpotent_max_product
            return [gid for gid, g in enumerate(u.groups) if g.order ** 2 <= bound]
        if diagram == "i_feit_thompson":
            return [None]
        raise ArityMismatch(f"unknown diagram {diagram}")

    # -- one check per diagram -------------------------------------------------------

    def _morphism_subject(self, subject) -> tuple[Morphism, str]:
        if isinstance(subject, Morphism):
            return subject, repr(subject)
        if isinstance(subject, int):
            return self.u.morphisms[subject], self.u.describe_morphism(subject)
        raise ArityMismatch("this diagram takes a morphism subject")

    def _group_subject(self, subject) -> tuple[FiniteGroup, str]:
        if isinstance(subject, FiniteGroup):
            return subject, subject.name
        if isinstance(subject, int):
            return self.u.groups[subject], self.gname(subject)
        raise ArityMismatch("this diagram takes a group subject")

    def _prime_subject(self, subject) -> tuple[FiniteGroup, int, str]:
        if not (isinstance(subject, tuple) and len(subject) == 2):
            raise ArityMismatch("this diagram takes a (group, prime) subject")
        g, name = self._group_subject(subject[0])
        return g, subject[1], f"{name} p={subject[1]}"

    def a_surjective(self, subject) -> Verdict:
        g, name = self._morphism_subject(subject)
        r = lifts(self.std.zero_to_Z, g)
        return _verdict("a_surjective", name, r.holds, classify_hom(g)["surjective"], ["std:0->Z"], r)

    def b_injective(self, subject) -> Verdict:
        g, name = self._morphism_subject(subject)
        r = lifts(self.zero_out(self.std.Z), g)
        return _verdict("b_injective", name, r.holds, classify_hom(g)["injective"], ["std:Z->0"], r)

    def c_abelian(self, subject) -> Verdict:
        a, name = self._group_subject(subject)
        r = lifts(self.std.abelianization, self.zero_out(a))
        return _verdict("c_abelian", name, r.holds, is_abelian(a), ["std:F2->Z2ab"], r)

    def d_perfect(self, subject) -> Verdict:
        g, name = self._group_subject(subject)
        left = self.zero_out(g)
        first = None
        for gid in self.abelian_ids:
            r = lifts(left, self.zero_out(self.u.groups[gid]))
            if not r.holds:
                first = r
                break
        second = None
        for incl in self.commutator_inclusions:
            r = lifts(self.zero_in(g), incl)
            if not r.holds:
                second = r
                break
        forms = {"abelian_targets": first is None, "commutator_inclusions": second is None,
                 "with_abelianization": self._perfect_exact(g)}
        witnesses = [f"g{gid}->0" for gid in self.abelian_ids] + \
                    [f"[g{gid},g{gid}]->g{gid}" for gid in range(len(self.u.groups))]
        return _verdict("d_perfect", name, first is None, is_perfect(g), witnesses, first,
                        forms=forms)

    def _perfect_exact(self, g: FiniteGroup) -> bool:
        q, _ = quotient(g, commutator_subgroup(g))
        return lifts(self.zero_out(g), self.zero_out(q)).holds

    def e_solvable(self, subject, witnesses: str = "all") -> Verdict:
        h, name = self._group_subject(subject)
        right = self.zero_out(h)
        left, labels = [], []
        if witnesses in ("all", "universe"):
            for gid in self.perfect_ids:
                left.append(self.zero_out(self.u.groups[gid]))
                labels.append(f"g{gid}->0")
        if witnesses in ("all", "exact"):
            core, _ = subgroup_as_group(perfect_core(h), name=f"{h.name}^(inf)")
            left.append(self.zero_out(core))
            labels.append("exact:H^(inf)->0")
        res = _first_failure(left, right)
        return _verdict("e_solvable", name, res.holds, is_solvable(h), labels, res)

    def f_coprime(self, subject, diagram: str = "f_coprime") -> Verdict:
        if diagram == "h_odd":
            g, name = self._group_subject(subject)
            p = 2
        else:
            g, p, name = self._prime_subject(subject)
        zp = self.cyclic(p)
        r = lifts(from_zero(zp), self.zero_in(g))
        alt = lifts(self.zero_out(zp), self.zero_out(g))
        oracle = has_odd_order(g) if diagram == "h_odd" else order_coprime_to(g, p)
        return _verdict(diagram, name, r.holds, oracle, [f"std:0->Z/{p}"], r,
                        forms={"from_zero": r.holds, "to_zero": alt.holds})

    def h_odd(self, subject) -> Verdict:
        return self.f_coprime(subject, "h_odd")

    def g_pgroup(self, subject, witnesses: str = "all") -> Verdict:
        g, p, name = self._prime_subject(subject)
        right = self.zero_in(g)
        left, labels = [], []
        if witnesses in ("all", "universe"):
            for gid, h in enumerate(self.u.groups):
                if h.order % p:
                    left.append(self.zero_in(h))
                    labels.append(f"0->g{gid}")
        if witnesses in ("all", "exact"):
            for q in primes_dividing(g.order):
                if q != p:
                    left.append(from_zero(self.cyclic(q)))
                    labels.append(f"exact:0->Z/{q}")
        res = _first_failure(left, right)
        return _verdict("g_pgroup", name, res.holds, is_p_group(g, p), labels, res)

    def k_normal_closure(self, subject, witnesses: str = "all") -> Verdict:
        f, name = self._morphism_subject(subject)
        h = f.target
        rights, labels = [], []
        if witnesses in ("all", "universe"):
            for gid, g in enumerate(self.u.groups):
                rights.append(self.zero_in(g))
                labels.append(f"0->g{gid}")
        closure = normal_closure(h, f.gen_images)
        if witnesses in ("all", "exact"):
            q, _ = quotient(h, closure)
            rights.append(self.zero_in(q))
            labels.append("exact:0->H/ncl")
        res = LiftResult(True)
        for g in rights:
            res = lifts(f, g)
            if not res.holds:
                break
        return _verdict("k_normal_closure", name, res.holds, closure.is_whole, labels, res)

    def _subnormal_witness(self, g: Morphism) -> tuple[Morphism, LiftingSquare] | None:
        """The square D -> D' ⋔ D -> G with D' the smallest subnormal subgroup over the image."""
        if not classify_hom(g)["injective"]:
            return None
        target = g.target
        image = g.image()
        chain = [whole(target)]
        while True:
            nxt = normal_closure(target, image.elements, within=chain[-1])
            if nxt.elements == chain[-1].elements:
                break
            chain.append(nxt)
        dprime = chain[-1]
        incl = self.subgroup_inclusion(dprime)
        back = {b: a for a, b in enumerate(incl.elem_map)}
        d = g.source
        f = Morphism(d, incl.source, [back[x] for x in g.gen_images], label="D->D'")
        ident = Morphism(d, d, d.generators, label="id", elem_map=range(d.order))
        return f, LiftingSquare(f, g, ident, incl)

    def l_subnormal(self, subject, witnesses: str = "all", diagram: str = "l_subnormal",
                    oracle=None) -> Verdict:
        if diagram == "m_nilpotent":
            grp, name = self._group_subject(subject)
            g = self.diagonal(grp)
        else:
            g, name = self._morphism_subject(subject)
        left, labels, details = [], [], {}
        exact = self._subnormal_witness(g)
        if exact is not None and witnesses in ("all", "exact"):
            f_w, _ = exact
            left.append(f_w)
            labels.append("exact:D->D'")
            details["witness_normal_closure"] = normal_closure(
                f_w.target, f_w.gen_images).is_whole
        if witnesses in ("all", "universe"):
            for mid in self.normal_closure_ids:
                left.append(self.u.morphisms[mid])
                labels.append(f"m{mid}")
        res = _first_failure(left, g)
        if oracle is None:
            oracle = classify_hom(g)["injective"] and is_subnormal(g.image(), g.target)
        if res.holds:
            details["injective"] = classify_hom(g)["injective"]
        return _verdict(diagram, name, res.holds, oracle, labels, res, **details)

    def m_nilpotent(self, subject, witnesses: str = "all") -> Verdict:
        grp, _ = self._group_subject(subject)
        return self.l_subnormal(subject, witnesses, "m_nilpotent", oracle=is_nilpotent(grp))

    def i_feit_thompson(self, subject=None) -> Verdict:
        odd = bad = nonabelian = 0
        checked = []
        oracle_ok = True
        for gid, g in enumerate(self.u.groups):
            if has_odd_order(g) and not is_solvable(g):
                oracle_ok = False
            if not self.h_odd(gid).via_lifting:
                continue
            odd += 1
            checked.append(g.order)
            if not is_abelian(g):
                nonabelian += 1
            if not self.e_solvable(gid).via_lifting:
                bad += 1
        status = "corroborated" if bad == 0 else "refuted"
        return Verdict("i_feit_thompson", "universe", bad == 0, oracle_ok, (bad == 0) == oracle_ok,
                       ["h_odd", "e_solvable"], None,
                       {"status": status, "odd_order_groups": odd, "nonabelian_odd": nonabelian,
                        "orders": sorted(checked), "counterexamples": bad})


def _first_failure(left, right: Morphism) -> LiftResult:
    last = LiftResult(True)
    for f in left:
        last = lifts(f, right)
        if not last.holds:
            return last
    return last


def normal_closure_morphisms(u: Universe) -> list[int]:
    """Pool morphisms N -> H (H finite) whose image normally generates H."""
    out = []
    for mid, m in enumerate(u.morphisms):
        if not isinstance(m.target, FiniteGroup):
            continue
        if normal_closure(m.target, m.gen_images).is_whole:
            out.append(mid)
    return out


def checker(u: Universe) -> Checker:
    c = getattr(u, "_checker", None)
    if c is None:
        c = Checker(u)
        u._checker = c
    return c


def check_diagram(diagram: str, subject, universe: Universe, **kw) -> Verdict:
    if diagram not in DIAGRAMS:
        raise ArityMismatch(f"unknown diagram {diagram}")
    return getattr(checker(universe), diagram)(subject, **kw)


# -- sweep ---------------------------------------------------------------------------

_WORKER_UNIVERSE: Universe | None = None


def _run_task(task) -> Verdict:
    diagram, subject = task
    try:
        return check_diagram(diagram, subject, _WORKER_UNIVERSE)
    except LiftGroupsError as exc:
        return Verdict(diagram, str(subject), False, False, False, [], None, {},
                       f"{type(exc).__name__}: {exc}")


def sweep_tasks(universe: Universe, diagrams=DIAGRAMS, nilpotent_max_product=None) -> list:
    c = checker(universe)
    return [(d, s) for d in DIAGRAMS if d in diagrams
            for s in c.subjects(d, nilpotent_max_product)]


def verify_universe(universe: Universe, diagrams=DIAGRAMS, jobs: int = 1,
                    nilpotent_max_product: int | None = None, timing: dict | None = None) -> list[Verdict]:
    """One verdict per (diagram, subject) pair, in canonical order."""
    global _WORKER_UNIVERSE
    tasks = sweep_tasks(universe, diagrams, nilpotent_max_product)
    _WORKER_UNIVERSE = universe
    start = time.perf_counter()
    if jobs <= 1 or len(tasks) < 2:
        verdicts = [_run_task(t) for t in tasks]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            verdicts = pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (8 * jobs)))
    if timing is not None:
        timing["verify"] = time.perf_counter() - start
    return verdicts


def overall_pass(verdicts: list[Verdict]) -> bool:
    return all(v.error is None for v in verdicts) and \
        all(v.agree for v in verdicts if v.diagram in DEFINITIONAL)
