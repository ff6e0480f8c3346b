"""Finitely presented groups, used only as homomorphism sources.

A word is a tuple of signed 1-based generator indices: ``(1, 2, -1, -2)`` is
the commutator ``a b a^-1 b^-1``. Presented groups are never materialized;
a homomorphism out of one is an assignment of generator images that kills
every relator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .groups import FiniteGroup

Word = tuple


@dataclass(frozen=True)
class PresentedGroup:
    arity: int
    relators: tuple = ()
    name: str = ""

    def __post_init__(self):
        rel = tuple(tuple(int(x) for x in w) for w in self.relators)
        for w in rel:
            if any(x == 0 or abs(x) > self.arity for x in w):
                raise ValueError(f"relator {w} is not a word in {self.arity} generators")
        object.__setattr__(self, "relators", rel)

    def __repr__(self):
        return f"PresentedGroup({self.name or self.arity})"

    @property
    def is_trivial_presentation(self) -> bool:
        return self.arity == 0


GroupObject = Union[FiniteGroup, PresentedGroup]


def arity(obj: GroupObject) -> int:
    if isinstance(obj, PresentedGroup):
        return obj.arity
    return len(obj.generators)


def is_trivial_object(obj: GroupObject) -> bool:
    if isinstance(obj, PresentedGroup):
        return obj.arity == 0
    return obj.order == 1


def eval_word(w: Sequence[int], images: Sequence[int], g: FiniteGroup) -> int:
    x = g.identity
    mul, inv = g.mul, g.inverse
    for letter in w:
        y = images[letter - 1] if letter > 0 else inv[images[-letter - 1]]
        x = mul[x][y]
    return x


def substitute(w: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Image of ``w`` when generator ``i`` is sent to the word ``images[i-1]``."""
    out: list[int] = []
    for letter in w:
        piece = images[abs(letter) - 1]
        out.extend(piece if letter > 0 else [-x for x in reversed(piece)])
    return tuple(out)


def power_word(gen: int, k: int) -> Word:
    return tuple([gen] * k) if k >= 0 else tuple([-gen] * -k)


COMMUTATOR = (1, 2, -1, -2)

TRIVIAL = PresentedGroup(0, (), "0")
Z = PresentedGroup(1, (), "Z")
Z2 = PresentedGroup(2, (COMMUTATOR,), "Z2ab")
F2 = PresentedGroup(2, (), "F2")


def cyclic_presentation(p: int) -> PresentedGroup:
    return PresentedGroup(1, (power_word(1, p),), f"Z/{p}")


@dataclass
class StandardObjects:
    """The fixed objects and morphisms every diagram is built from."""

    trivial: PresentedGroup
    Z: PresentedGroup
    Z2: PresentedGroup
    F2: PresentedGroup
    cyclic: dict = field(default_factory=dict)
    abelianization: object = None
    zero_to_Z: object = None
    Z_to_zero: object = None
    zero_to_cyclic: dict = field(default_factory=dict)
    cyclic_to_zero: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.objects()[name]

    def objects(self) -> dict:
        out = {"0": self.trivial, "Z": self.Z, "Z2ab": self.Z2, "F2": self.F2}
        out.update({f"Z/{p}": o for p, o in self.cyclic.items()})
        return out

    def morphisms(self) -> dict:
        out = {"F2->Z2ab": self.abelianization, "0->Z": self.zero_to_Z, "Z->0": self.Z_to_zero}
        for p in self.cyclic:
            out[f"0->Z/{p}"] = self.zero_to_cyclic[p]
            out[f"Z/{p}->0"] = self.cyclic_to_zero[p]
        return out


_trivial_finite = None


def trivial_finite() -> FiniteGroup:
    """The finite trivial group used as the target of every ``G -> 0``."""
    global _trivial_finite
    if _trivial_finite is None:
        _trivial_finite = FiniteGroup([[0]], name="0", identity=0, generators=())
    return _trivial_finite


def from_zero(g: GroupObject):
    from .homs import Morphism

    return Morphism(TRIVIAL, g, (), label="0->")


def to_zero(g: GroupObject, zero: FiniteGroup | None = None):
    from .homs import Morphism

    zero = zero or trivial_finite()
    return Morphism(g, zero, tuple(zero.identity for _ in range(arity(g))), label="->0")


def standard_objects(primes: Sequence[int] = (2,)) -> StandardObjects:
    from .homs import Morphism

    std = StandardObjects(TRIVIAL, Z, Z2, F2)
    std.abelianization = Morphism(F2, Z2, ((1,), (2,)), label="abelianization")
    std.zero_to_Z = from_zero(Z)
    std.Z_to_zero = to_zero(Z)
    for p in primes:
        zp = cyclic_presentation(p)
        std.cyclic[p] = zp
        std.zero_to_cyclic[p] = from_zero(zp)
        std.cyclic_to_zero[p] = to_zero(zp)
    return std
