"""Finite abelian groups presented as products of cyclic groups.

Elements are plain tuples of residues, always reduced, so equality and hashing
are structural.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """The group Z_{n1} x ... x Z_{nk}; the empty product is the trivial group."""

    cyclic_orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        return cls((n,))

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        if not self.cyclic_orders:
            return "1"
        return " x ".join(f"Z{n}" for n in self.cyclic_orders)

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, residues: Iterable[int]) -> GroupElement:
        """Reduce an integer vector into a canonical element."""
        residues = tuple(int(r) for r in residues)
        if len(residues) != self.rank:
            raise ValueError(
                f"element {list(residues)} has rank {len(residues)}, group {self} has rank {self.rank}"
            )
        return tuple(r % n for r, n in zip(residues, self.cyclic_orders))

    def generator(self, k: int) -> GroupElement:
        """Unit vector of the k-th cyclic factor."""
        return tuple(1 % n if i == k else 0 for i, n in enumerate(self.cyclic_orders))

    def generators(self) -> list[GroupElement]:
        return [self.generator(k) for k in range(self.rank)]

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic order of residue vectors."""
        return list(itertools.product(*(range(n) for n in self.cyclic_orders)))

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements())

    def __contains__(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == self.rank
            and all(isinstance(r, int) and 0 <= r < n for r, n in zip(g, self.cyclic_orders))
        )

    def _check(self, g: Sequence[int]) -> None:
        if len(g) != self.rank:
            raise ValueError(f"rank mismatch: {list(g)} is not an element of {self}")

    def compose(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a)
        self._check(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_orders))

    def product(self, elements: Iterable[GroupElement]) -> GroupElement:
        result = self.identity
        for g in elements:
            result = self.compose(result, g)
        return result

    def inverse(self, g: GroupElement) -> GroupElement:
        self._check(g)
        return tuple(-x % n for x, n in zip(g, self.cyclic_orders))

    def power(self, g: GroupElement, k: int) -> GroupElement:
        self._check(g)
        return tuple((x * k) % n for x, n in zip(g, self.cyclic_orders))

    def element_order(self, g: GroupElement) -> int:
        self._check(g)
        return math.lcm(*(n // math.gcd(x, n) for x, n in zip(g, self.cyclic_orders)))

    def cyclic_subgroup(self, g: GroupElement) -> list[GroupElement]:
        return [self.power(g, k) for k in range(self.element_order(g))]

    def coset_partition(self, g: GroupElement) -> CosetPartition:
        """Cosets of <g>, ordered by their lexicographically least element."""
        subgroup = self.cyclic_subgroup(g)
        seen: set[GroupElement] = set()
        cosets = []
        for h in self.elements():
            if h in seen:
                continue
            coset = tuple(sorted(self.compose(h, x) for x in subgroup))
            seen.update(coset)
            cosets.append(coset)
        cosets.sort()
        index_of = {h: s for s, coset in enumerate(cosets) for h in coset}
        return CosetPartition(g, tuple(cosets), index_of)

    def format(self, g: GroupElement) -> str:
        return ",".join(str(r) for r in g)

    def parse(self, text: str) -> GroupElement:
        text = text.strip()
        return self.element(int(t) for t in text.split(",")) if text else self.element(())

    def to_json(self) -> dict:
        return {"cyclic_orders": list(self.cyclic_orders)}

    @classmethod
    def from_json(cls, data: dict) -> AbelianGroup:
        return cls(tuple(data["cyclic_orders"]))


def orbit_coordinates(group: AbelianGroup, generators: Sequence[dict], items: Iterable):
    """Orbits of a G-action given by one permutation per cyclic factor.

    Returns ``(coordinate, stabilizers)``: ``coordinate[x] = (rep, h)`` with
    ``x = rep^h`` and ``rep`` the first item of its orbit in ``items``;
    ``stabilizers`` lists ``(x, g)`` with g != identity fixing some x, found
    when the search reaches an item along two different group elements.
    Runs in O(|items| * rank), never enumerating the group.
    """
    units = group.generators()
    coordinate: dict = {}
    stabilizers = []
    for x in items:
        if x in coordinate:
            continue
        coordinate[x] = (x, group.identity)
        queue = [x]
        while queue:
            y = queue.pop()
            h = coordinate[y][1]
            for gen, unit in zip(generators, units):
                z = gen[y]
                hz = group.compose(h, unit)
                if z not in coordinate:
                    coordinate[z] = (x, hz)
                    queue.append(z)
                elif coordinate[z][1] != hz:
                    stabilizers.append((z, group.compose(hz, group.inverse(coordinate[z][1]))))
    return coordinate, stabilizers


@dataclass(frozen=True)
class CosetPartition:
    subgroup_generator: GroupElement
    cosets: tuple[tuple[GroupElement, ...], ...]
    index_of: dict[GroupElement, int] = field(compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.cosets)

    def coset_of(self, g: GroupElement) -> tuple[GroupElement, ...]:
        return self.cosets[self.index_of[g]]
