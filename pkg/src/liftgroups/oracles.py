"""Definition-level decision procedures for the group properties under test.

Nothing here touches the lifting engine; these are the ground truth the
diagram checks are compared against.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AlreadySubnormal
from .groups import FiniteGroup, Subgroup, commutator_subgroup, is_normal, normal_closure, whole


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "derived" | "lower_central" | "subnormal_chain"
    terms: tuple
    stabilized: bool

    @property
    def orders(self) -> list[int]:
        return [len(t) for t in self.terms]


def _iterate(g: FiniteGroup, step, kind: str) -> SeriesReport:
    terms = [whole(g)]
    while not terms[-1].is_trivial:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.elements == terms[-2].elements:
            return SeriesReport(kind, tuple(terms), True)
    return SeriesReport(kind, tuple(terms), False)


def derived_series(g: FiniteGroup) -> SeriesReport:
    """G ⊇ [G,G] ⊇ ... ; ``stabilized`` means it stalled at a non-trivial term."""
    def step(h: Subgroup) -> Subgroup:
        return commutator_subgroup(g, h, h)

    return _iterate(g, step, "derived")


def lower_central_series(g: FiniteGroup) -> SeriesReport:
    def step(h: Subgroup) -> Subgroup:
        return commutator_subgroup(g, None, h)

    return _iterate(g, step, "lower_central")


def perfect_core(g: FiniteGroup) -> Subgroup:
    """The last term of the derived series."""
    return derived_series(g).terms[-1]


def is_solvable(g: FiniteGroup) -> bool:
    return derived_series(g).terms[-1].is_trivial


def is_perfect(g: FiniteGroup) -> bool:
    return len(commutator_subgroup(g)) == g.order


def is_nilpotent(g: FiniteGroup) -> bool:
    return lower_central_series(g).terms[-1].is_trivial


def is_abelian(g: FiniteGroup) -> bool:
    mul = g.mul
    return all(mul[a][b] == mul[b][a] for a in range(g.order) for b in range(a))


def is_prime_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def is_p_group(g: FiniteGroup, p: int) -> bool:
    return is_prime_power(g.order, p)


def order_coprime_to(g: FiniteGroup, p: int) -> bool:
    return g.order % p != 0


def has_odd_order(g: FiniteGroup) -> bool:
    return g.order % 2 == 1


def has_element_of_order(g: FiniteGroup, p: int) -> bool:
    return p in g.element_orders


def all_orders_powers_of(g: FiniteGroup, p: int) -> bool:
    return all(is_prime_power(o, p) for o in g.element_orders)


def primes_dividing(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


# -- subnormality -------------------------------------------------------------------

def _descent(d: Subgroup, g: FiniteGroup) -> list[Subgroup]:
    """G = H0 ⊇ H1 ⊇ ... with H(i+1) the normal closure of d in H(i), until it stops."""
    chain = [whole(g)]
    while chain[-1].elements != d.elements:
        nxt = normal_closure(g, d.elements, within=chain[-1])
        if nxt.elements == chain[-1].elements:
            break
        chain.append(nxt)
    return chain


def subnormal_oracle(d: Subgroup, g: FiniteGroup) -> SeriesReport | None:
    """An ascending chain d = G0 ◁ G1 ◁ ... ◁ Gn = g, or None if d is not subnormal."""
    chain = _descent(d, g)
    if chain[-1].elements != d.elements:
        return None
    terms = list(reversed(chain))
    if len(terms) == 1:
        terms = [d, whole(g)]
    return SeriesReport("subnormal_chain", tuple(terms), True)


def is_subnormal(d: Subgroup, g: FiniteGroup) -> bool:
    return subnormal_oracle(d, g) is not None


def minimal_subnormal_over(d: Subgroup, g: FiniteGroup) -> Subgroup:
    """The smallest subnormal subgroup of g containing d, when d itself is not subnormal."""
    chain = _descent(d, g)
    if chain[-1].elements == d.elements:
        raise AlreadySubnormal("subgroup is already subnormal")
    return chain[-1]


def chain_is_normal_series(report: SeriesReport) -> bool:
    g = report.terms[0].parent
    return all(is_normal(g, a.elements, within=b.elements) and a.elements <= b.elements
               for a, b in zip(report.terms, report.terms[1:]))
