"""Finite plane point groups with exact element arithmetic.

Three kinds of groups act on the plane by orthogonal maps: a mirror group
of order 2, a k-fold rotation group, and a k-fold dihedral group (rotations
plus k mirrors).  Elements are stored in the normal form ``s^b r^a`` where
``r`` rotates by 2*pi/k and ``s`` reflects across the x-axis, so no
multiplication tables are needed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

REFLECTION = "reflection"
CYCLIC = "cyclic"
DIHEDRAL = "dihedral"

_KINDS = (REFLECTION, CYCLIC, DIHEDRAL)

# Subgroup shapes, as used by the balance counts.  "cyclic" means cyclic of
# order >= 2; the trivial subgroup is reported separately.
TRIVIAL = "trivial"
CYCLIC_NONTRIVIAL = "cyclic"
DIHEDRAL_SUBGROUP = "dihedral"


class GroupMismatchError(ValueError):
    """Combining elements that belong to different groups."""


@dataclass(frozen=True)
class GroupSpec:
    """A plane point group: mirror (order 2), k-fold rotation, or k-fold dihedral.

    The mirror line of the reflection generator is fixed as the x-axis;
    any other choice is conjugate and changes nothing downstream.
    """

    kind: str
    k: int = 1

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.k < 1:
            raise ValueError(f"group parameter k must be >= 1, got {self.k}")
        if self.kind == REFLECTION and self.k != 1:
            raise ValueError("reflection groups have no rotation parameter")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def reflection() -> "GroupSpec":
        return GroupSpec(REFLECTION)

    @staticmethod
    def cyclic(k: int) -> "GroupSpec":
        return GroupSpec(CYCLIC, k)

    @staticmethod
    def dihedral(k: int) -> "GroupSpec":
        return GroupSpec(DIHEDRAL, k)

    # -- basic data -------------------------------------------------------

    @property
    def order(self) -> int:
        if self.kind == CYCLIC:
            return self.k
        if self.kind == REFLECTION:
            return 2
        return 2 * self.k

    @property
    def has_reflections(self) -> bool:
        return self.kind != CYCLIC

    @property
    def name(self) -> str:
        if self.kind == REFLECTION:
            return "Cs"
        if self.kind == CYCLIC:
            return f"C{self.k}"
        return f"C{self.k}v"

    # -- element factories -------------------------------------------------

    def element(self, rot: int, ref: bool = False) -> "GroupElement":
        if ref and not self.has_reflections:
            raise ValueError(f"{self.name} contains no reflections")
        return GroupElement(self, rot % self.k, bool(ref))

    def identity(self) -> "GroupElement":
        return self.element(0)

    def rotation(self, j: int = 1) -> "GroupElement":
        return self.element(j)

    def mirror(self, j: int = 0) -> "GroupElement":
        """The reflection s*r^j (s alone for j = 0)."""
        return self.element(j, ref=True)

    def elements(self) -> tuple["GroupElement", ...]:
        rots = [self.element(a) for a in range(self.k)]
        if self.has_reflections:
            rots += [self.element(a, ref=True) for a in range(self.k)]
        return tuple(rots)

    def parse(self, text: str) -> "GroupElement":
        """Parse the textual encoding: ``id``, ``s``, ``r^j`` or ``s*r^j``."""
        t = text.strip()
        if t == "id":
            return self.identity()
        if t == "s":
            return self.element(0, ref=True)
        m = re.fullmatch(r"s\*r\^(-?\d+)", t)
        if m:
            return self.element(int(m.group(1)), ref=True)
        m = re.fullmatch(r"r\^(-?\d+)", t)
        if m:
            return self.element(int(m.group(1)))
        raise ValueError(f"cannot parse group element {text!r}")

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == REFLECTION:
            return {"kind": REFLECTION}
        return {"kind": self.kind, "k": self.k}

    @staticmethod
    def from_json(data: dict) -> "GroupSpec":
        kind = data.get("kind")
        if kind == REFLECTION:
            return GroupSpec.reflection()
        if kind in (CYCLIC, DIHEDRAL):
            return GroupSpec(kind, int(data["k"]))
        raise ValueError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class GroupElement:
    """Group element ``s^b r^a`` with 0 <= a < k.

    Rotations come first: the orthogonal map is S^b R(2*pi*a/k).
    """

    group: GroupSpec
    rot: int
    ref: bool

    def __post_init__(self) -> None:
        if not 0 <= self.rot < self.group.k:
            raise ValueError(f"rotation index {self.rot} out of range")
        if self.ref and not self.group.has_reflections:
            raise ValueError(f"{self.group.name} contains no reflections")

    @property
    def is_identity(self) -> bool:
        return self.rot == 0 and not self.ref

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of {self.group.name} and {other.group.name} cannot be multiplied"
            )
        k = self.group.k
        if other.ref:
            # r^a s = s r^(-a), so (s^b r^a)(s r^c) = s^(b+1) r^(c-a)
            return GroupElement(self.group, (other.rot - self.rot) % k, not self.ref)
        return GroupElement(self.group, (self.rot + other.rot) % k, self.ref)

    def inverse(self) -> "GroupElement":
        if self.ref:
            return self  # every reflection s r^a is an involution
        return GroupElement(self.group, (-self.rot) % self.group.k, False)

    def order(self) -> int:
        """Smallest m >= 1 with self**m = id."""
        if self.ref:
            return 2
        if self.rot == 0:
            return 1
        return self.group.k // math.gcd(self.group.k, self.rot)

    def __pow__(self, n: int) -> "GroupElement":
        result = self.group.identity()
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    def matrix(self) -> np.ndarray:
        """The 2x2 orthogonal matrix of this element (mirror = x-axis)."""
        theta = 2.0 * math.pi * self.rot / self.group.k
        c, s = math.cos(theta), math.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        if self.ref:
            return np.array([[1.0, 0.0], [0.0, -1.0]]) @ rot
        return rot

    def __str__(self) -> str:
        if self.is_identity:
            return "id"
        if self.ref:
            return "s" if self.rot == 0 else f"s*r^{self.rot}"
        return f"r^{self.rot}"

    def __repr__(self) -> str:
        return f"<{self.group.name}:{self}>"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its element set and the generators that produced it."""

    group: GroupSpec
    elements: frozenset
    generated_by: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def classify(self) -> str:
        """One of ``trivial``, ``cyclic`` (nontrivial) or ``dihedral``.

        A subgroup containing a reflection is cyclic only when it has
        order 2; rotation-only subgroups are always cyclic.
        """
        if self.order == 1:
            return TRIVIAL
        if not any(g.ref for g in self.elements):
            return CYCLIC_NONTRIVIAL
        if self.order == 2:
            return CYCLIC_NONTRIVIAL
        return DIHEDRAL_SUBGROUP

    @property
    def is_cyclic(self) -> bool:
        """Trivial counts as cyclic."""
        return self.classify() != DIHEDRAL_SUBGROUP

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda g: (g.ref, g.rot)))


def subgroup_generated(group: GroupSpec, gens) -> Subgroup:
    """Closure of ``gens`` under multiplication and inverse (empty -> {id})."""
    gens = frozenset(gens)
    for g in gens:
        if g.group != group:
            raise GroupMismatchError("generator from a different group")
    return _closure(group, gens)


@lru_cache(maxsize=None)
def _closure(group: GroupSpec, gens: frozenset) -> Subgroup:
    elements = {group.identity()}
    frontier = list(gens)
    while frontier:
        g = frontier.pop()
        if g in elements:
            continue
        elements.add(g)
        for h in list(elements):
            for prod in (g * h, h * g, g.inverse()):
                if prod not in elements:
                    frontier.append(prod)
    return Subgroup(group, frozenset(elements), gens)
