"""Discrete group families with canonical element forms.

Three families are supported:

* ``free_abelian`` -- Z^n with componentwise addition,
* ``product_z_finite`` -- direct products Z x F for a finite group F given
  by an explicit Cayley table,
* ``infinite_dihedral`` -- Z semidirect Z_2 with the sign-flip action.

Elements are canonical named tuples, so structural equality coincides with
group equality and elements can be used as dictionary keys.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import ConfigError, GroupError


class GroupElement(NamedTuple):
    """Canonical group element: integer part plus optional finite-component index."""

    z: tuple[int, ...]
    f: Optional[int] = None


def element_sort_key(el: GroupElement):
    return (el.z, -1 if el.f is None else el.f)


# ---------------------------------------------------------------------------
# finite factor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group as an explicit Cayley table over element indices."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity_index: int
    inverse: tuple[int, ...]

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]]) -> "FiniteGroupTable":
        """Validate a raw table: identity, inverses, and (for order <= 24) associativity."""
        order = len(rows)
        if order < 1:
            raise GroupError("Cayley table is empty")
        table = tuple(tuple(int(x) for x in row) for row in rows)
        for i, row in enumerate(table):
            if len(row) != order or any(not 0 <= x < order for x in row):
                raise GroupError(f"row {i} of the Cayley table is not a map into the group")
        identity = None
        for i in range(order):
            if all(table[i][j] == j and table[j][i] == j for j in range(order)):
                identity = i
                break
        if identity is None:
            raise GroupError("Cayley table has no identity element")
        inverse = []
        for i in range(order):
            cands = [j for j in range(order)
                     if table[i][j] == identity and table[j][i] == identity]
            if not cands:
                raise GroupError(f"element {i} has no inverse in the Cayley table")
            inverse.append(cands[0])
        if order <= 24:
            for i, j, k in itertools.product(range(order), repeat=3):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise GroupError(
                        f"Cayley table is not associative at triple ({i}, {j}, {k})")
        return cls(order, table, identity, tuple(inverse))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupTable":
        return cls.from_table([[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def symmetric(cls, k: int) -> "FiniteGroupTable":
        """Symmetric group S_k, elements ordered lexicographically as permutations."""
        perms = sorted(itertools.permutations(range(k)))
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
        return cls.from_table(table)


def builtin_finite_table(name: str) -> FiniteGroupTable:
    name = name.lower()
    if name == "z2":
        return FiniteGroupTable.cyclic(2)
    if name == "z3":
        return FiniteGroupTable.cyclic(3)
    if name == "s3":
        return FiniteGroupTable.symmetric(3)
    raise ConfigError(f"unknown built-in finite group {name!r} (have: z2, z3, s3)")


# ---------------------------------------------------------------------------
# group handles
# ---------------------------------------------------------------------------

class Group:
    """Immutable group handle exposing identity, generators, mul and inv."""

    family: str = ""

    def __init__(self, identity: GroupElement, generators: Iterable[GroupElement]):
        self.identity = identity
        self.generators = tuple(generators)

    @property
    def shell_bound(self) -> Optional[int]:
        """Analytic bound on shell sizes for the default generators, if one exists."""
        return None

    def check(self, a: GroupElement) -> None:
        raise NotImplementedError

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        raise NotImplementedError

    def inv(self, a: GroupElement) -> GroupElement:
        raise NotImplementedError

    def _validate_generators(self) -> None:
        if not self.generators:
            raise GroupError("generating set is empty")
        gens = set(self.generators)
        for g in self.generators:
            self.check(g)
            if self.inv(g) not in gens:
                raise GroupError(f"generating set is not symmetric: missing inverse of {g}")


class FreeAbelian(Group):
    family = "free_abelian"

    def __init__(self, rank: int, generators: Optional[Iterable[GroupElement]] = None):
        if rank < 1:
            raise GroupError("rank must be >= 1")
        self.rank = rank
        identity = GroupElement((0,) * rank)
        if generators is None:
            gens = []
            for i in range(rank):
                for s in (1, -1):
                    v = [0] * rank
                    v[i] = s
                    gens.append(GroupElement(tuple(v)))
        else:
            gens = list(generators)
        super().__init__(identity, gens)
        self._validate_generators()

    @property
    def shell_bound(self) -> Optional[int]:
        return 2 if self.rank == 1 else None

    def check(self, a: GroupElement) -> None:
        if a.f is not None or len(a.z) != self.rank:
            raise GroupError(f"element {a} does not belong to free_abelian(rank={self.rank})")

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self.check(a)
        self.check(b)
        return GroupElement(tuple(x + y for x, y in zip(a.z, b.z)))

    def inv(self, a: GroupElement) -> GroupElement:
        self.check(a)
        return GroupElement(tuple(-x for x in a.z))


class ProductZFinite(Group):
    """Direct product Z x F with F a finite group given by a Cayley table."""

    family = "product_z_finite"

    def __init__(self, finite: FiniteGroupTable,
                 generators: Optional[Iterable[GroupElement]] = None):
        self.finite = finite
        identity = GroupElement((0,), finite.identity_index)
        if generators is None:
            gens = [GroupElement((1,), f) for f in range(finite.order)]
            gens += [GroupElement((-1,), finite.inverse[f]) for f in range(finite.order)]
        else:
            gens = list(generators)
        super().__init__(identity, gens)
        self._validate_generators()

    @property
    def shell_bound(self) -> Optional[int]:
        return 2 * self.finite.order

    def check(self, a: GroupElement) -> None:
        if a.f is None or len(a.z) != 1 or not 0 <= a.f < self.finite.order:
            raise GroupError(f"element {a} does not belong to Z x F (|F|={self.finite.order})")

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self.check(a)
        self.check(b)
        return GroupElement((a.z[0] + b.z[0],), self.finite.table[a.f][b.f])

    def inv(self, a: GroupElement) -> GroupElement:
        self.check(a)
        return GroupElement((-a.z[0],), self.finite.inverse[a.f])


class InfiniteDihedral(Group):
    """Z semidirect Z_2: (m, s)(m', s') = (m + (-1)^s m', s xor s')."""

    family = "infinite_dihedral"

    def __init__(self, generators: Optional[Iterable[GroupElement]] = None):
        identity = GroupElement((0,), 0)
        if generators is None:
            gens = [GroupElement((1,), 0), GroupElement((-1,), 0), GroupElement((0,), 1)]
        else:
            gens = list(generators)
        super().__init__(identity, gens)
        self._validate_generators()

    @property
    def shell_bound(self) -> Optional[int]:
        return 4

    def check(self, a: GroupElement) -> None:
        if a.f not in (0, 1) or len(a.z) != 1:
            raise GroupError(f"element {a} does not belong to the infinite dihedral group")

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self.check(a)
        self.check(b)
        m = a.z[0] + (b.z[0] if a.f == 0 else -b.z[0])
        return GroupElement((m,), a.f ^ b.f)

    def inv(self, a: GroupElement) -> GroupElement:
        self.check(a)
        return GroupElement((-a.z[0],), 0) if a.f == 0 else a


# ---------------------------------------------------------------------------
# specs, construction, words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    family: str
    rank: int = 1
    finite: Optional[FiniteGroupTable] = None
    generators: Optional[tuple[GroupElement, ...]] = None


def make_group(spec: GroupSpec) -> Group:
    if spec.family == "free_abelian":
        return FreeAbelian(spec.rank, spec.generators)
    if spec.family == "product_z_finite":
        if spec.finite is None:
            raise GroupError("product_z_finite requires a finite factor")
        return ProductZFinite(spec.finite, spec.generators)
    if spec.family == "infinite_dihedral":
        return InfiniteDihedral(spec.generators)
    raise GroupError(f"unknown family {spec.family!r}")


def word_eval(group: Group, word: Sequence[int]) -> GroupElement:
    """Left-to-right product of generators; the empty word is the identity."""
    out = group.identity
    for idx in word:
        if not 0 <= idx < len(group.generators):
            raise GroupError(
                f"generator index {idx} out of range (have {len(group.generators)})")
        out = group.mul(out, group.generators[idx])
    return out


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def decode_element(group: Group, data) -> GroupElement:
    """Family-specific element encoding: [m1,...,mn] or [m, f_index]."""
    try:
        ints = [int(x) for x in data]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"element {data!r} is not a list of integers") from exc
    if isinstance(group, FreeAbelian):
        el = GroupElement(tuple(ints))
    else:
        if len(ints) != 2:
            raise ConfigError(f"element {data!r}: expected [m, f_index]")
        el = GroupElement((ints[0],), ints[1])
    try:
        group.check(el)
    except GroupError as exc:
        raise ConfigError(str(exc)) from exc
    return el


def encode_element(group: Group, el: GroupElement) -> list[int]:
    if isinstance(group, FreeAbelian):
        return list(el.z)
    return [el.z[0], el.f]


def group_from_json(data) -> Group:
    """Build a group from its JSON specification (dict or JSON text)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON for group spec: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("group spec must be a JSON object")
    family = data.get("family")
    if family == "free_abelian":
        rank = data.get("rank", 1)
        if not isinstance(rank, int) or rank < 1:
            raise ConfigError("free_abelian: rank must be a positive integer")
        group = FreeAbelian(rank)
    elif family == "product_z_finite":
        fin = data.get("finite")
        if isinstance(fin, dict) and "name" in fin:
            table = builtin_finite_table(fin["name"])
        elif isinstance(fin, dict) and "table" in fin:
            try:
                table = FiniteGroupTable.from_table(fin["table"])
            except GroupError as exc:
                raise ConfigError(f"finite.table: {exc}") from exc
        else:
            raise ConfigError("product_z_finite: 'finite' must give a 'name' or a 'table'")
        group = ProductZFinite(table)
    elif family == "infinite_dihedral":
        group = InfiniteDihedral()
    else:
        raise ConfigError(f"unknown group family {family!r}")
    if "generators" in data:
        gens = [decode_element(group, g) for g in data["generators"]]
        try:
            group = type(group)(**_rebuild_kwargs(group), generators=gens)
        except GroupError as exc:
            raise ConfigError(str(exc)) from exc
    return group


def _rebuild_kwargs(group: Group) -> dict:
    if isinstance(group, FreeAbelian):
        return {"rank": group.rank}
    if isinstance(group, ProductZFinite):
        return {"finite": group.finite}
    return {}
