"""Finite additive abelian groups presented as products of cyclic groups."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterator

from .errors import BadGroupDescriptor, NonPositiveOrder

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n1} x ... x Z_{nk}; elements are coordinate tuples, added componentwise."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        for n in orders:
            if n < 1:
                raise NonPositiveOrder(f"cyclic order must be positive, got {n}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.cyclic_orders, 1)

    @property
    def zero(self) -> GroupElement:
        return tuple(0 for _ in self.cyclic_orders)

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic coordinate order."""
        return itertools.product(*(range(n) for n in self.cyclic_orders))

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_orders))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple((-x) % n for x, n in zip(a, self.cyclic_orders))

    def contains(self, a) -> bool:
        return len(a) == len(self.cyclic_orders) and all(
            0 <= x < n for x, n in zip(a, self.cyclic_orders)
        )

    def label(self, a: GroupElement) -> str:
        if len(a) == 1:
            return str(a[0])
        return "(" + ",".join(str(x) for x in a) + ")"

    @property
    def descriptor(self) -> str:
        return "x".join(f"z{n}" for n in self.cyclic_orders) or "z1"


def cyclic(n: int) -> AbelianGroup:
    return AbelianGroup((n,))


def product(groups) -> AbelianGroup:
    return AbelianGroup(tuple(n for g in groups for n in g.cyclic_orders))


_FACTOR = re.compile(r"z(\d+)")


def parse_group(descriptor: str) -> AbelianGroup:
    """Parse a descriptor such as ``"z5"`` or ``"z3xz3"``."""
    parts = descriptor.strip().lower().split("x")
    orders = []
    for part in parts:
        m = _FACTOR.fullmatch(part)
        if m is None:
            raise BadGroupDescriptor(f"bad group descriptor {descriptor!r}")
        orders.append(int(m.group(1)))
    return AbelianGroup(tuple(orders))


def element_sum(g: AbelianGroup) -> GroupElement:
    total = g.zero
    for a in g.elements():
        total = g.add(total, a)
    return total


def is_neutral_sum(g: AbelianGroup) -> bool:
    return element_sum(g) == g.zero


def has_no_involution(g: AbelianGroup) -> bool:
    zero = g.zero
    return all(a == zero or g.add(a, a) != zero for a in g.elements())
