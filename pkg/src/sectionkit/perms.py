"""Exact permutations of {0, ..., degree-1}.

Composition convention, fixed project-wide: products apply left to right,
``(p * q)(x) == q(p(x))``.  Equivalently points are acted on from the right,
``x^(pq) = (x^p)^q``, so ``p.conjugated_by(b)`` is ``b⁻¹·p·b``.

Permutations of equal degree carry a total order (lexicographic on the image
tuple); it is the deterministic tie-breaker used everywhere in the package.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidPermutation


_IDENTITY_IMAGES: dict[int, tuple[int, ...]] = {}


def _identity_images(degree: int) -> tuple[int, ...]:
    images = _IDENTITY_IMAGES.get(degree)
    if images is None:
        images = tuple(range(degree))
        _IDENTITY_IMAGES[degree] = images
    return images


class Permutation:
    """An immutable bijection on {0, ..., degree-1}, stored as image tuple."""

    __slots__ = ("images", "_inv")

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InvalidPermutation(f"not a bijection on 0..{len(imgs) - 1}: {imgs!r}")
        object.__setattr__(self, "images", imgs)
        object.__setattr__(self, "_inv", None)

    # Internal fast path: trusts that `images` is already a valid bijection.
    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        object.__setattr__(p, "_inv", None)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(_identity_images(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles; repeated or out-of-range points are errors."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for pt in cycle:
                if not 0 <= pt < degree:
                    raise InvalidPermutation(f"point {pt} outside degree {degree}")
                if pt in seen:
                    raise InvalidPermutation(f"point {pt} repeated across cycles")
                seen.add(pt)
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls._raw(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        return self.images[point]

    def is_identity(self) -> bool:
        return self.images == _identity_images(len(self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        qi = other.images
        if len(qi) != len(self.images):
            raise DegreeMismatch(f"degree {len(self.images)} vs {len(qi)}")
        return Permutation._raw(tuple(map(qi.__getitem__, self.images)))

    def inverse(self) -> "Permutation":
        cached = self._inv
        if cached is None:
            inv = [0] * len(self.images)
            for i, j in enumerate(self.images):
                inv[j] = i
            cached = Permutation._raw(tuple(inv))
            object.__setattr__(cached, "_inv", self)
            object.__setattr__(self, "_inv", cached)
        return cached

    def __pow__(self, exponent: int) -> "Permutation":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    def conjugated_by(self, b: "Permutation") -> "Permutation":
        """b⁻¹ · self · b, in one fused pass (sends b(w) ↦ b(self(w)))."""
        a_img, b_img = self.images, b.images
        out = [0] * len(a_img)
        for w, bw in enumerate(b_img):
            out[bw] = b_img[a_img[w]]
        return Permutation._raw(tuple(out))

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images) if i != j)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted."""
        out = []
        seen: set[int] = set()
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            pt = self.images[start]
            while pt != start:
                seen.add(pt)
                cycle.append(pt)
                pt = self.images[pt]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(pt) for pt in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_string()}]"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    # Lexicographic order on image tuples: the package-wide element ordering.
    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __le__(self, other: "Permutation") -> bool:
        return self.images <= other.images

    def __gt__(self, other: "Permutation") -> bool:
        return self.images > other.images

    def __ge__(self, other: "Permutation") -> bool:
        return self.images >= other.images


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()
