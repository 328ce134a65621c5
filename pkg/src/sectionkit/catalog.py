"""Named small-group constructions and the deterministic catalog.

Catalog names are stable across runs and platforms; tests and the sweep CLI
address groups by these names.
"""

from __future__ import annotations

from typing import NamedTuple

from . import numth
from .construct import MetacyclicSpec, construct_metacyclic, direct_product
from .errors import CapExceeded, InvalidSpec
from .groups import PermGroup, generated_by
from .perms import Permutation


class NamedGroup(NamedTuple):
    name: str
    group: PermGroup


def cyclic(k: int) -> PermGroup:
    if k == 1:
        return PermGroup(1, [])
    return generated_by(k, [Permutation(tuple((i + 1) % k for i in range(k)))])


def abelian(parts: list[int]) -> PermGroup:
    """Direct product of cyclic groups, one point block per part."""
    group = cyclic(parts[0])
    for k in parts[1:]:
        group = direct_product(group, cyclic(k)).group
    return group


def dihedral(order: int) -> PermGroup:
    """Dihedral group of the given (even, ≥ 6) order, on order/2 points."""
    if order % 2 or order < 6:
        raise ValueError(f"dihedral order must be even and at least 6, got {order}")
    m = order // 2
    rotation = Permutation(tuple((i + 1) % m for i in range(m)))
    reflection = Permutation(tuple((-i) % m for i in range(m)))
    return generated_by(m, [rotation, reflection])


def symmetric(d: int) -> PermGroup:
    if d < 2:
        return PermGroup(max(d, 1), [])
    gens = [Permutation.from_cycles(d, [(0, 1)]), Permutation.from_cycles(d, [tuple(range(d))])]
    return generated_by(d, gens)


def alternating(d: int) -> PermGroup:
    if d < 3:
        return PermGroup(max(d, 1), [])
    three_cycle = Permutation.from_cycles(d, [(0, 1, 2)])
    if d % 2:
        big = Permutation.from_cycles(d, [tuple(range(d))])
    else:
        big = Permutation.from_cycles(d, [tuple(range(1, d))])
    return generated_by(d, [three_cycle, big])


def quaternion() -> PermGroup:
    """Q8 in its regular representation on the eight unit quaternions."""
    units = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mult(a: str, b: str) -> str:
        sign = -1 if (a.startswith("-") != b.startswith("-")) else 1
        a, b = a.lstrip("-"), b.lstrip("-")
        table = {
            ("1", "1"): (1, "1"),
            ("i", "i"): (-1, "1"),
            ("j", "j"): (-1, "1"),
            ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"),
            ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"),
            ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"),
            ("i", "k"): (-1, "j"),
        }
        if a == "1":
            s, val = 1, b
        elif b == "1":
            s, val = 1, a
        else:
            s, val = table[(a, b)]
        sign *= s
        return val if sign == 1 else "-" + val

    perms = []
    for g in ("i", "j"):
        perms.append(Permutation(tuple(units.index(mult(u, g)) for u in units)))
    return generated_by(8, perms)


def metacyclic_group(p: int, n: int, q: int, r: int | None = None) -> PermGroup:
    spec = MetacyclicSpec(p, n, q, r) if r is not None else MetacyclicSpec.canonical(p, n, q)
    return construct_metacyclic(spec).group


def _abelian_partitions(order: int) -> list[list[int]]:
    """Cyclic-part lists of the non-cyclic abelian groups of the given order.

    A combination is cyclic exactly when every prime contributes a single
    part, so those are skipped (they already appear as C_order).
    """
    factors = numth.factorize(order)
    per_prime: list[list[list[int]]] = []
    for p in sorted(factors):
        per_prime.append([[p**e for e in part] for part in _partitions(factors[p])])
    combos: list[tuple[list[int], bool]] = [([], False)]
    for options in per_prime:
        combos = [
            (base + opt, noncyclic or len(opt) > 1)
            for base, noncyclic in combos
            for opt in options
        ]
    out = [sorted(c, reverse=True) for c, noncyclic in combos if noncyclic]
    out.sort()
    return out


def _partitions(n: int) -> list[list[int]]:
    if n == 0:
        return [[]]
    out = []
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                out.append([first] + rest)
    return out


def generate_catalog(max_order: int) -> list[NamedGroup]:
    """Deterministic list of named groups of order at most `max_order`.

    Families: cyclic, non-cyclic abelian, dihedral, metacyclic targets,
    symmetric and alternating up to degree 5, the quaternion group, and a
    representative set of direct products (small abelian times nonabelian).
    """
    if max_order > 400:
        raise CapExceeded(f"catalog max order {max_order} exceeds 400")
    out: list[NamedGroup] = []
    seen: set[str] = set()

    def add(name: str, group: PermGroup):
        if name not in seen and group.order() <= max_order:
            seen.add(name)
            out.append(NamedGroup(name, group))

    for k in range(1, max_order + 1):
        add(f"C{k}", cyclic(k))
    for order in range(4, max_order + 1):
        for parts in _abelian_partitions(order):
            add("x".join(f"C{k}" for k in parts), abelian(parts))
    for order in range(6, max_order + 1, 2):
        add(f"D{order}", dihedral(order))
    for spec in MetacyclicSpec.all_specs(max_order):
        if spec.q == 2:
            continue  # already present as a dihedral group
        if spec.r != MetacyclicSpec.canonical(spec.p, spec.n, spec.q).r:
            continue
        add(f"C{spec.modulus}:C{spec.q}", construct_metacyclic(spec).group)
    for d in range(3, 6):
        add(f"S{d}", symmetric(d))
    for d in range(4, 6):
        add(f"A{d}", alternating(d))
    add("Q8", quaternion())

    nonabelian_seeds = [
        ("S3", symmetric(3)),
        ("D8", dihedral(8)),
        ("Q8", quaternion()),
        ("D10", dihedral(10)),
        ("A4", alternating(4)),
        ("D18", dihedral(18)),
    ]
    for k in (2, 3, 4, 5):
        for seed_name, seed in nonabelian_seeds:
            if k * seed.order() <= max_order:
                add(f"C{k}x{seed_name}", direct_product(cyclic(k), seed).group)
    return out


def catalog_group(name: str, max_order: int = 400) -> PermGroup:
    for entry in generate_catalog(max_order):
        if entry.name == name:
            return entry.group
    raise KeyError(f"no catalog group named {name!r}")
