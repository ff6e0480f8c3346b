"""One-line surface syntax for groups and morphisms.

Groups::

    group  := factor ("x" factor)*
    factor := "C"n | "S"n | "A"n | "D"n | "Q8" | "V4" | "Dic3" | "M(" m "," n "," r ")"
            | "0" | "Z" | "Z2ab" | "F2" | "Z/"p | "g"id | NAME
            | "<" gens "|" relators ">" | "(" group ")"

``Dn`` is the symmetry group of the n-gon (order 2n); ``g12`` and bare names
refer to universe entries. Relators are words in the generator letters with
integer exponents, brackets ``[u,v]`` for commutators and ``u = v`` for
relations.

Morphisms::

    G->H[:label]   identity when G and H are the same text; label "k" picks the
                   k-th hom in enumeration order, "sign" the sign of S_n, "triv"
                   the trivial hom
    G->>H[:label]  the first quotient map onto H (or the labelled one)
    G>->H          the first inclusion of G into H
    0->G, G->0     maps out of and into the trivial group
    F2->Z2ab       abelianization
    diag:G         the diagonal G -> GxG
"""
from __future__ import annotations

import re

from .errors import InvalidSpec, ParseError
from .groups import (Alternating, Cyclic, Dihedral, FiniteGroup, GroupSpec, Metacyclic, Product, Quaternion8,
                     Symmetric, all_subgroups, build_group, direct_product, find_isomorphism,
                     normal_subgroups, product_group, quotient, sign_map, subgroup_as_group)
from .homs import Morphism, classify_hom, hom_table
from .presented import F2, TRIVIAL, Z, Z2, PresentedGroup, arity, cyclic_presentation, from_zero, to_zero

_NAMED = {"Q8": Quaternion8(), "V4": Product(Cyclic(2), Cyclic(2)), "Dic3": Metacyclic(3, 4, 2)}
_PRESENTED = {"0": TRIVIAL, "Z": Z, "Z2ab": Z2, "F2": F2}


class Parser:
    """Parses expressions; repeated text yields the very same group object."""

    def __init__(self, universe=None):
        self.universe = universe
        self._memo: dict = {}

    # -- groups ----------------------------------------------------------------------

    def group(self, text: str):
        key = re.sub(r"\s+", "", text)
        if not key:
            raise ParseError("empty group expression")
        if key not in self._memo:
            self._memo[key] = self._parse_group(key)
        return self._memo[key]

    def _parse_group(self, text: str):
        factors, depth, start = [], 0, 0
        i = 0
        while i < len(text):
            c = text[i]
            if c in "(<[":
                depth += 1
            elif c in ")>]":
                depth -= 1
            elif c == "x" and depth == 0 and i > start and i + 1 < len(text):
                factors.append(text[start:i])
                start = i + 1
            i += 1
        factors.append(text[start:])
        if len(factors) == 1:
            return self._factor(factors[0])
        parts = [self.group(f) for f in factors]
        if not all(isinstance(p, FiniteGroup) for p in parts):
            raise ParseError(f"products of presented groups are not supported: {text}")
        out = parts[0]
        for p in parts[1:]:
            out = product_group(out, p)
        return out

    def _factor(self, t: str):
        if t.startswith("(") and t.endswith(")"):
            return self.group(t[1:-1])
        if t.startswith("<"):
            return parse_presentation(t)
        if t in _PRESENTED:
            return _PRESENTED[t]
        if m := re.fullmatch(r"Z/(\d+)", t):
            return cyclic_presentation(int(m.group(1)))
        if t in _NAMED:
            return build_group(_NAMED[t])
        try:
            if m := re.fullmatch(r"M\((\d+),(\d+),(\d+)\)", t):
                return build_group(Metacyclic(*map(int, m.groups())))
            if m := re.fullmatch(r"([CSAD])(\d+)", t):
                cls = {"C": Cyclic, "S": Symmetric, "A": Alternating, "D": Dihedral}[m.group(1)]
                return build_group(cls(int(m.group(2))))
        except InvalidSpec as exc:
            raise ParseError(str(exc)) from exc
        if self.universe is not None:
            if m := re.fullmatch(r"g(\d+)", t):
                gid = int(m.group(1))
                if gid < len(self.universe.groups):
                    return self.universe.groups[gid]
            found = self.universe.by_name(t)
            if found is not None:
                return found
        raise ParseError(f"unknown group {t!r}")

    # -- morphisms -------------------------------------------------------------------

    def morphism(self, text: str) -> Morphism:
        t = re.sub(r"\s+", "", text)
        if t.startswith("diag:"):
            g = self._finite(t[5:])
            return direct_product(g, g).diagonal
        left, arrow, right = _split_arrow(t)
        label = None
        if ":" in right:
            right, label = right.rsplit(":", 1)
        a = TRIVIAL if left == "0" else self.group(left)
        if right == "0":
            return to_zero(a, self.universe.trivial if self.universe is not None else None)
        if left == "0":
            return from_zero(self.group(right))
        b = self.group(right)
        if a is F2 and b is Z2:
            return Morphism(F2, Z2, ((1,), (2,)), label="abelianization")
        if arrow == ">->":
            return self._inclusion(a, b, label)
        if arrow == "->>":
            return self._quotient(a, b, label)
        return self._plain(a, b, label)

    def _finite(self, text: str) -> FiniteGroup:
        g = self.group(text)
        if not isinstance(g, FiniteGroup):
            raise ParseError(f"{text} must be a finite group here")
        return g

    def _plain(self, a, b, label):
        if label is None:
            if a is b:
                return Morphism(a, a, a.generators, label="id", elem_map=range(a.order)) \
                    if isinstance(a, FiniteGroup) else Morphism(a, a, [(k + 1,) for k in range(a.arity)])
            raise ParseError("a label (:k, :sign or :triv) is needed between different groups")
        if not isinstance(b, FiniteGroup):
            raise ParseError("labelled homs need a finite target")
        if label == "sign":
            return _sign(a, b)
        if label == "triv":
            return Morphism(a, b, [b.identity] * arity(a), label="triv")
        table = hom_table(a, b)
        return _pick(table.morphism, len(table), label)

    def _quotient(self, a, b, label):
        if not (isinstance(a, FiniteGroup) and isinstance(b, FiniteGroup)):
            raise ParseError("->> needs finite groups")
        if label == "sign":
            return _sign(a, b)
        if label is not None:
            table = hom_table(a, b)
            onto = [i for i in range(len(table)) if classify_hom(table.morphism(i))["surjective"]]
            return _pick(lambda k: table.morphism(onto[k]), len(onto), label)
        for n in normal_subgroups(a, None):
            if len(n) * b.order != a.order:
                continue
            q, proj = quotient(a, n)
            iso = find_isomorphism(q, b)
            if iso is not None:
                return Morphism(a, b, [iso[x] for x in proj.gen_images], label="quot")
        raise ParseError(f"{b.name} is not a quotient of {a.name}")

    def _inclusion(self, a, b, label):
        if not (isinstance(a, FiniteGroup) and isinstance(b, FiniteGroup)):
            raise ParseError(">-> needs finite groups")
        embeddings = []
        for sub in all_subgroups(b, None):
            if len(sub) != a.order:
                continue
            h, local = subgroup_as_group(sub)
            iso = find_isomorphism(a, h)
            if iso is not None:
                embeddings.append(Morphism(a, b, [local[iso[s]] for s in a.generators], label="incl"))
                if label is None:
                    break
        if not embeddings:
            raise ParseError(f"{a.name} does not embed in {b.name}")
        return _pick(embeddings.__getitem__, len(embeddings), label or "0")


def _split_arrow(t: str) -> tuple[str, str, str]:
    """Split at the first arrow outside brackets and presentations."""
    depth = 0
    for i, c in enumerate(t):
        if depth == 0:
            for arrow in (">->", "->>", "->"):
                if t.startswith(arrow, i):
                    return t[:i], arrow, t[i + len(arrow):]
        if c in "([<":
            depth += 1
        elif c in ")]>":
            depth -= 1
    raise ParseError(f"no arrow in morphism {t!r}")


def _pick(get, n: int, label: str) -> Morphism:
    try:
        k = int(label)
    except ValueError:
        raise ParseError(f"unknown morphism label {label!r}") from None
    if not 0 <= k < n:
        raise ParseError(f"hom index {k} out of range (there are {n})")
    return get(k)


def _sign(a, b) -> Morphism:
    if not (isinstance(a, FiniteGroup) and a.name.startswith("S") and a.name[1:].isdigit()):
        raise ParseError("the sign label needs a symmetric group S_n on the left")
    twos = [x for x in range(b.order) if b.element_orders[x] == 2]
    if b.order != 2 or not twos:
        raise ParseError("the sign map lands in a group of order 2")
    par = sign_map(int(a.name[1:]))
    return Morphism(a, b, [twos[0] if par[s] else b.identity for s in a.generators], label="sign")


def parse_spec(text: str) -> GroupSpec:
    """A constructor expression such as ``C3``, ``D4xC2`` or ``M(7,3,2)``."""
    t = re.sub(r"\s+", "", text)
    depth = 0
    for i, c in enumerate(t):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "x" and depth == 0 and 0 < i < len(t) - 1:
            return Product(parse_spec(t[:i]), parse_spec(t[i + 1:]))
    if t.startswith("(") and t.endswith(")"):
        return parse_spec(t[1:-1])
    if t in _NAMED:
        return _NAMED[t]
    try:
        if m := re.fullmatch(r"M\((\d+),(\d+),(\d+)\)", t):
            return Metacyclic(*map(int, m.groups()))
        if m := re.fullmatch(r"([CSAD])(\d+)", t):
            return {"C": Cyclic, "S": Symmetric, "A": Alternating, "D": Dihedral}[m.group(1)](int(m.group(2)))
    except InvalidSpec as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"not a group constructor: {text!r}")


def parse_spec_list(text: str) -> list[GroupSpec]:
    return [parse_spec(part) for part in _split_top(text) if part]


# -- presentations -------------------------------------------------------------------

def parse_presentation(text: str) -> PresentedGroup:
    """``<a,b | a^2, b^3, (ab)^2>`` as a presented group."""
    body = text.strip()
    if not (body.startswith("<") and body.endswith(">")):
        raise ParseError(f"presentation must be enclosed in <...>: {text!r}")
    body = body[1:-1]
    gens_part, _, rel_part = body.partition("|")
    gens = [g.strip() for g in gens_part.split(",") if g.strip()]
    if len(set(gens)) != len(gens) or not all(re.fullmatch(r"[a-z]", g) for g in gens):
        raise ParseError("generators must be distinct single lower-case letters")
    index = {g: i + 1 for i, g in enumerate(gens)}
    relators = []
    for chunk in _split_top(rel_part):
        if not chunk:
            continue
        if "=" in chunk:
            lhs, rhs = chunk.split("=", 1)
            relators.append(_word(lhs, index) + _inverse(_word(rhs, index)))
        else:
            relators.append(_word(chunk, index))
    return PresentedGroup(len(gens), tuple(relators), re.sub(r"\s+", "", text))


def _split_top(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for c in s:
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        if c == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += c
    out.append(cur.strip())
    return out


def _inverse(w: tuple) -> tuple:
    return tuple(-x for x in reversed(w))


def _word(s: str, index: dict) -> tuple:
    s = re.sub(r"\s+", "", s)
    pos = 0

    def power(w):
        nonlocal pos
        m = re.match(r"\^(-?\d+)", s[pos:])
        if not m:
            return w
        pos += m.end()
        k = int(m.group(1))
        return (w if k >= 0 else _inverse(w)) * abs(k)

    def seq(stop):
        nonlocal pos
        out = ()
        while pos < len(s) and s[pos] not in stop:
            c = s[pos]
            if c == "(":
                pos += 1
                w = seq(")")
                _expect(")")
                out += power(w)
            elif c == "[":
                pos += 1
                u = seq(",")
                _expect(",")
                v = seq("]")
                _expect("]")
                out += power(u + v + _inverse(u) + _inverse(v))
            elif c in index:
                pos += 1
                out += power((index[c],))
            elif c == "1":
                pos += 1
            else:
                raise ParseError(f"unexpected {c!r} in relator {s!r}")
        return out

    def _expect(ch):
        nonlocal pos
        if pos >= len(s) or s[pos] != ch:
            raise ParseError(f"expected {ch!r} in relator {s!r}")
        pos += 1

    w = seq("")
    if pos != len(s):
        raise ParseError(f"trailing input in relator {s!r}")
    return w
