"""Canonical partitions of a dense vertex set and the refinement order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Partition:
    """A partition of ``{0, ..., n-1}`` in canonical form.

    Classes are ordered by their smallest member and each class lists its
    vertices in increasing order, so two equal partitions are the same
    value (plain ``==`` compares partitions). ``class_of[v]`` is the index
    of the class containing ``v``.

    Instances are immutable and freely shareable. Use the factory
    classmethods; the constructor validates canonical form and rejects
    anything that is not a partition.
    """

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.class_of)
        covered = 0
        previous_min = -1
        for index, members in enumerate(self.classes):
            if not members:
                raise ValueError("partition classes must be nonempty")
            if list(members) != sorted(set(members)):
                raise ValueError("class members must be strictly increasing")
            if members[0] <= previous_min:
                raise ValueError("classes must be ordered by smallest member")
            previous_min = members[0]
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range [0, {n})")
                if self.class_of[v] != index:
                    raise ValueError("class_of disagrees with classes")
            covered += len(members)
        if covered != n:
            raise ValueError("classes must cover every vertex exactly once")

    @classmethod
    def from_class_map(cls, labels: Iterable[int]) -> "Partition":
        """Build a partition from an arbitrary per-vertex label sequence.

        Labels are renumbered by first occurrence, which yields the
        canonical class order directly.
        """
        class_of: list[int] = []
        renumber: dict[int, int] = {}
        for label in labels:
            renumber.setdefault(label, len(renumber))
            class_of.append(renumber[label])
        members: list[list[int]] = [[] for _ in range(len(renumber))]
        for v, index in enumerate(class_of):
            members[index].append(v)
        return cls(tuple(tuple(c) for c in members), tuple(class_of))

    @classmethod
    def from_classes(
        cls, classes: Iterable[Iterable[int]], n: int | None = None
    ) -> "Partition":
        """Build a partition from a family of vertex sets, in any order."""
        groups = [sorted(set(c)) for c in classes]
        total = sum(len(c) for c in groups)
        if n is not None and total != n:
            raise ValueError(f"classes cover {total} vertices, expected {n}")
        labels = [0] * total
        seen: set[int] = set()
        for index, group in enumerate(groups):
            for v in group:
                if not 0 <= v < total or v in seen:
                    raise ValueError("classes must partition a dense vertex range")
                seen.add(v)
                labels[v] = index
        return cls.from_class_map(labels)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_class_map(range(n))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        """The one-class partition of ``{0, ..., n-1}``."""
        return cls.from_class_map([0] * n)

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_containing(self, v: int) -> int:
        """Index of the unique class containing ``v``."""
        return self.class_of[v]

    def members(self, index: int) -> tuple[int, ...]:
        return self.classes[index]

    def refines(self, other: "Partition") -> bool:
        """True if every class of ``self`` is a subset of a class of ``other``."""
        if self.n != other.n:
            raise ValueError("partitions are over different ground sets")
        for members in self.classes:
            target = other.class_of[members[0]]
            if any(other.class_of[v] != target for v in members):
                return False
        return True

    def strictly_refines(self, other: "Partition") -> bool:
        return self != other and self.refines(other)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.classes)

    def __str__(self) -> str:
        body = ", ".join("{" + ", ".join(map(str, c)) + "}" for c in self.classes)
        return "{" + body + "}"
