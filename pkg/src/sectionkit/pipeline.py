"""The descent pipeline: reduce a section configuration to a one-sided witness.

Input: an ambient product F = X × Y, a subgroup G ≤ F, a normal H ⊴ G with
G/H isomorphic to the metacyclic target D = C_{p^n} ⋊ C_q.  The pipeline
transforms the configuration through a fixed sequence of order-shrinking
reductions, each of which preserves the invariant "G/H ≅ D":

  1. replace the factors by the projections of G and shrink G to two
     generators picked from the cosets mapping onto D's distinguished
     generators;
  2. quotient out the parts of H living entirely inside one factor; after
     that the component kernels K1, K2 of G meet H trivially and are either
     isomorphic to D (early witness) or p-groups;
  3. for each prime r ≠ p dividing |H|: pass to the normalizer of a Sylow
     r-subgroup S of H (a Frattini step, G/H unchanged), then replace the
     ambient product by (G/K2·S) × (G/K1·S) — a subdirect product by the
     Remak argument — removing r from |H| while each new factor remains a
     section of the old one on the same side;
  4. with H now a p-group, find a cyclic subgroup T of the normal Sylow
     p-subgroup P with H·T = P that the order-q Sylow subgroup Q normalizes;
     a counting argument over the cyclic subgroups generated by preimages of
     generators of P/H guarantees T exists;
  5. R = T·Q maps onto D with kernel H∩R, R's normal subgroups form a chain,
     so one of K1∩R, K2∩R is trivial and R embeds into that factor.

Every step records enough data to transport the final witness back through
the reductions into the original X or Y.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from . import numth
from .analysis import (
    is_chain,
    is_isomorphic,
    is_p_group,
    normal_subgroups,
    normalizer_in,
    sylow,
)
from .construct import (
    DirectProduct,
    Metacyclic,
    MetacyclicSpec,
    centralizer_in,
    conjugate_union_size,
    construct_metacyclic,
    direct_product,
    intersection,
    kernel_intersections,
    projection_of_subgroup,
)
from .errors import ConfigError, InternalCheckError
from .groups import PermGroup, from_elements, orbit_partition
from .homs import GroupHom, quotient
from .perms import Permutation


# ---------------------------------------------------------------------------
# targets, configurations, witnesses, traces


@dataclass(frozen=True)
class SectionTarget:
    """The group to be exhibited as a section, with distinguished generators."""

    spec: MetacyclicSpec
    group: PermGroup
    translation: Permutation
    multiplier: Permutation

    @classmethod
    def from_metacyclic(cls, met: Metacyclic) -> "SectionTarget":
        return cls(met.spec, met.group, met.translation, met.multiplier)

    @classmethod
    def from_group(cls, group: PermGroup, spec: MetacyclicSpec) -> "SectionTarget":
        """Adopt an externally supplied copy of the target group."""
        met = construct_metacyclic(spec)
        iso = is_isomorphic(met.group, group)
        if not iso.isomorphic:
            raise ConfigError("supplied group is not isomorphic to the spec's target")
        return cls(spec, group, iso.witness(met.translation), iso.witness(met.multiplier))


@dataclass(frozen=True)
class SectionConfig:
    ambient: DirectProduct
    group: PermGroup
    kernel: PermGroup
    target: SectionTarget
    to_quotient: GroupHom = field(repr=False)
    iso_to_target: GroupHom = field(repr=False)


def section_config(
    ambient: DirectProduct,
    group: PermGroup,
    kernel: PermGroup,
    target: SectionTarget,
) -> SectionConfig:
    """Validate and assemble a configuration; every invariant is checked."""
    if not all(g in ambient.group for g in group.generators):
        raise ConfigError("G is not a subgroup of the ambient product")
    if not kernel.is_normal_in(group):
        raise ConfigError("H is not a normal subgroup of G")
    if group.order() % kernel.order() or group.order() // kernel.order() != target.group.order():
        raise ConfigError("index of H in G does not match the target order")
    Q, pi = quotient(group, kernel)
    iso = is_isomorphic(Q, target.group)
    if not iso.isomorphic:
        raise ConfigError("G/H is not isomorphic to the target")
    return SectionConfig(ambient, group, kernel, target, pi, iso.witness)


@dataclass(frozen=True)
class SectionWitness:
    """An explicit section: kernel ⊴ subgroup ≤ (one factor), quotient ≅ D."""

    side: str
    subgroup: PermGroup
    kernel: PermGroup
    iso: GroupHom = field(repr=False)

    def generator_images(self) -> tuple[Permutation, ...]:
        """Images in D of the subgroup's generators, via the quotient map."""
        pi = self._projection()
        return tuple(self.iso(pi(g)) for g in self.subgroup.generators)

    def _projection(self) -> GroupHom:
        return quotient(self.subgroup, self.kernel).projection


@dataclass
class TraceRecord:
    stage: str
    details: tuple[tuple[str, object], ...]

    def render(self) -> str:
        parts = " ".join(f"{k}={v}" for k, v in self.details)
        return f"{self.stage}: {parts}" if parts else f"{self.stage}:"


@dataclass
class PipelineTrace:
    records: list[TraceRecord] = field(default_factory=list)

    def add(self, stage: str, **details) -> None:
        self.records.append(TraceRecord(stage, tuple(details.items())))

    def render(self) -> str:
        return "".join(r.render() + "\n" for r in self.records)

    def digest(self) -> str:
        return hashlib.sha256(self.render().encode()).hexdigest()


# ---------------------------------------------------------------------------
# witness transport between reduction stages


@dataclass(frozen=True)
class _PreWitness:
    side: str
    subgroup: PermGroup
    kernel: PermGroup


@dataclass(frozen=True)
class _InclusionLift:
    """Stage-1 transport: factors were shrunk to subgroups, so a witness in
    the shrunken factor already lives in the original one."""

    x_parent: PermGroup
    y_parent: PermGroup

    def pull(self, w: _PreWitness) -> _PreWitness:
        parent = self.x_parent if w.side == "X" else self.y_parent
        if not all(g in parent for g in w.subgroup.generators):
            raise InternalCheckError("witness does not lie in the parent factor")
        return w


@dataclass(frozen=True)
class _FactorQuotientLift:
    """Stage-2 transport: each factor was replaced by a quotient of itself;
    pull the witness back as the full preimage."""

    pi_x: GroupHom
    pi_y: GroupHom

    def pull(self, w: _PreWitness) -> _PreWitness:
        pi = self.pi_x if w.side == "X" else self.pi_y
        return _PreWitness(w.side, pi.preimage_subgroup(w.subgroup), pi.preimage_subgroup(w.kernel))


@dataclass(frozen=True)
class _SubdirectLift:
    """Stage-3 transport: the ambient was rebuilt as (G/K2·S) × (G/K1·S).

    A witness in the new X side pulls back through G and projects into the old
    X factor; the projection is injective on the relevant quotient because the
    kernel of the old X-projection is contained in the pulled-back kernel.
    """

    ambient_before: DirectProduct
    pi_x: GroupHom  # G -> G/K2S, the new X coordinate
    pi_y: GroupHom  # G -> G/K1S, the new Y coordinate

    def pull(self, w: _PreWitness) -> _PreWitness:
        pi = self.pi_x if w.side == "X" else self.pi_y
        big_sub = pi.preimage_subgroup(w.subgroup)
        big_ker = pi.preimage_subgroup(w.kernel)
        sub = projection_of_subgroup(self.ambient_before, big_sub, w.side)
        ker = projection_of_subgroup(self.ambient_before, big_ker, w.side)
        return _PreWitness(w.side, sub, ker)


# ---------------------------------------------------------------------------
# target structure checks


@dataclass(frozen=True)
class StructureReport:
    order: int
    normal_orders: tuple[int, ...]
    chain_ok: bool
    proper_normals_are_p_groups: bool
    centralizer_trivial: bool
    conjugate_union_size: int
    expected_union_size: int
    majority_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.chain_ok
            and self.proper_normals_are_p_groups
            and self.centralizer_trivial
            and self.conjugate_union_size == self.expected_union_size
            and self.majority_ok
        )


def chain_report(D: PermGroup, p: int) -> tuple[tuple[int, ...], bool, bool]:
    """Normal-subgroup orders, chain property, and whether all proper normal
    subgroups are p-groups."""
    normals = normal_subgroups(D)
    orders = tuple(N.order() for N in normals)
    proper_ok = all(is_p_group(N, p) for N in normals if N.order() < D.order())
    return orders, is_chain(normals), proper_ok


def check_target_structure(met: Metacyclic) -> StructureReport:
    """Verify the structural facts the descent relies on.

    The complement acts on the cyclic part with trivial centralizer, every
    proper normal subgroup is a p-group (so the normal subgroups form a
    chain), and the union of the complement's conjugates has exactly
    1 + p^n(q-1) elements, which is more than half the group.
    """
    spec = met.spec
    orders, chain_ok, proper_ok = chain_report(met.group, spec.p)
    cz = centralizer_in(met.cyclic_part, met.complement)
    union = conjugate_union_size(met)
    expected = 1 + spec.modulus * (spec.q - 1)
    report = StructureReport(
        order=met.group.order(),
        normal_orders=orders,
        chain_ok=chain_ok,
        proper_normals_are_p_groups=proper_ok,
        centralizer_trivial=cz.is_trivial(),
        conjugate_union_size=union,
        expected_union_size=expected,
        majority_ok=2 * expected > met.group.order(),
    )
    if not report.ok:
        raise InternalCheckError(f"target structure check failed: {report}")
    return report


# ---------------------------------------------------------------------------
# stage 1: projections and two generators


def reduce_projections(cfg: SectionConfig, trace: PipelineTrace) -> tuple[SectionConfig, list]:
    """Shrink the factors to the projections of G and G to two generators.

    The two generators are the least preimages of the cosets that map onto
    the target's translation and multiplier generators.  Shrinking G can
    shrink the projections again, so iterate to a joint fixed point.
    """
    lifts: list = []
    while True:
        gx = projection_of_subgroup(cfg.ambient, cfg.group, "X")
        gy = projection_of_subgroup(cfg.ambient, cfg.group, "Y")
        if gx.order() < cfg.ambient.x.order() or gy.order() < cfg.ambient.y.order():
            lifts.append(_InclusionLift(cfg.ambient.x, cfg.ambient.y))
            cfg = section_config(direct_product(gx, gy), cfg.group, cfg.kernel, cfg.target)
            continue

        back = cfg.iso_to_target.inverse()
        u = cfg.to_quotient.preimage_rep(back(cfg.target.translation))
        v = cfg.to_quotient.preimage_rep(back(cfg.target.multiplier))
        small = PermGroup(cfg.group.degree, [u, v])
        if small.order() == cfg.group.order():
            trace.add(
                "projections",
                x=cfg.ambient.x.order(),
                y=cfg.ambient.y.order(),
                group=cfg.group.order(),
                kernel=cfg.kernel.order(),
                u=u.cycle_string(),
                v=v.cycle_string(),
            )
            return cfg, lifts
        cfg = section_config(cfg.ambient, small, intersection(cfg.kernel, small), cfg.target)


# ---------------------------------------------------------------------------
# stage 2: strip the factor-local part of the kernel


def reduce_kernel_overlap(
    cfg: SectionConfig, trace: PipelineTrace
) -> tuple[SectionConfig | _PreWitness, object]:
    """Quotient out (H ∩ X) × (H ∩ Y); then the component kernels K1, K2 of G
    meet H trivially and are p-groups, unless one of them is already
    isomorphic to the target, which settles that side immediately."""
    lx, ly = kernel_intersections(cfg.ambient, cfg.kernel)
    lift = None
    if not (lx.is_trivial() and ly.is_trivial()):
        px = projection_of_subgroup(cfg.ambient, lx, "X")
        py = projection_of_subgroup(cfg.ambient, ly, "Y")
        if not px.is_normal_in(cfg.ambient.x) or not py.is_normal_in(cfg.ambient.y):
            raise InternalCheckError("factor-local kernel parts must be normal in the factors")
        qx = quotient(cfg.ambient.x, px)
        qy = quotient(cfg.ambient.y, py)
        dp = direct_product(qx.group, qy.group)

        def push(g: Permutation) -> Permutation:
            return dp.pair(
                qx.projection(cfg.ambient.project_x(g)),
                qy.projection(cfg.ambient.project_y(g)),
            )

        new_group = PermGroup(dp.degree, [push(g) for g in cfg.group.generators])
        new_kernel = PermGroup(dp.degree, [push(h) for h in cfg.kernel.generators])
        lift = _FactorQuotientLift(qx.projection, qy.projection)
        cfg = section_config(dp, new_group, new_kernel, cfg.target)

    k1, k2 = kernel_intersections(cfg.ambient, cfg.group)
    target_order = cfg.target.group.order()
    for side, k in (("X", k1), ("Y", k2)):
        if k.order() == target_order and is_isomorphic(k, cfg.target.group).isomorphic:
            sub = projection_of_subgroup(cfg.ambient, k, side)
            triv = PermGroup(sub.degree, [])
            trace.add("kernel-overlap", early_side=side, component_kernel=k.order())
            return _PreWitness(side, sub, triv), lift

    p = cfg.target.spec.p
    for name, k in (("K1", k1), ("K2", k2)):
        if not intersection(k, cfg.kernel).is_trivial():
            raise InternalCheckError(f"{name} still meets H after the overlap reduction")
        if not is_p_group(k, p):
            raise InternalCheckError(f"{name} is not a p-group, contradicting the descent")
    trace.add(
        "kernel-overlap",
        stripped_x=lx.order(),
        stripped_y=ly.order(),
        k1=k1.order(),
        k2=k2.order(),
        group=cfg.group.order(),
        kernel=cfg.kernel.order(),
    )
    return cfg, lift


# ---------------------------------------------------------------------------
# stage 3: make the kernel a p-group


def reduce_kernel_to_p_group(
    cfg: SectionConfig, trace: PipelineTrace
) -> tuple[SectionConfig, list]:
    """Strip every prime r ≠ p from |H|, one Frattini-plus-subdirect step each,
    in increasing order of r."""
    p = cfg.target.spec.p
    lifts: list = []
    for r in numth.prime_divisors(cfg.kernel.order()):
        if r == p:
            continue
        S = sylow(cfg.kernel, r)
        if S.is_trivial():
            raise InternalCheckError(f"expected a nontrivial Sylow {r}-subgroup of H")

        # Frattini: G = H · N_G(S), so passing to the normalizer keeps G/H ≅ D
        # while making S normal in G.
        N = normalizer_in(cfg.group, S)
        if N.order() < cfg.group.order():
            cfg = section_config(cfg.ambient, N, intersection(cfg.kernel, N), cfg.target)

        k1, k2 = kernel_intersections(cfg.ambient, cfg.group)
        k1s = PermGroup(cfg.group.degree, list(k1.generators) + list(S.generators))
        k2s = PermGroup(cfg.group.degree, list(k2.generators) + list(S.generators))
        meet = intersection(k1s, k2s)
        if not meet.same_elements(S):
            raise InternalCheckError("K1·S and K2·S must intersect exactly in S")

        to_x = quotient(cfg.group, k2s)  # a quotient of the old X side
        to_y = quotient(cfg.group, k1s)  # a quotient of the old Y side
        dp = direct_product(to_x.group, to_y.group)
        new_group = PermGroup(
            dp.degree,
            [dp.pair(to_x.projection(g), to_y.projection(g)) for g in cfg.group.generators],
        )
        new_kernel = PermGroup(
            dp.degree,
            [dp.pair(to_x.projection(h), to_y.projection(h)) for h in cfg.kernel.generators],
        )
        lifts.append(_SubdirectLift(cfg.ambient, to_x.projection, to_y.projection))
        old_kernel_order = cfg.kernel.order()
        cfg = section_config(dp, new_group, new_kernel, cfg.target)
        trace.add(
            "kernel-to-p-group",
            prime=r,
            sylow=S.order(),
            kernel_before=old_kernel_order,
            kernel_after=cfg.kernel.order(),
            group=cfg.group.order(),
        )
    if not is_p_group(cfg.kernel, p):
        raise InternalCheckError("kernel is not a p-group after stripping")
    return cfg, lifts


# ---------------------------------------------------------------------------
# stage 4: the invariant cyclic cover


@dataclass(frozen=True)
class CyclicCoverResult:
    cover: PermGroup
    preimage_generators: int
    layer_sizes: tuple[int, ...]
    chosen_layer: int


def cyclic_cover_search(
    P: PermGroup, H: PermGroup, Q: PermGroup, p: int, n: int, q: int
) -> CyclicCoverResult:
    """Find a cyclic T ≤ P with H·T = P, normalized by Q.

    Let 𝒢 = {x ∈ P : H·⟨x⟩ = P}, i.e. the elements whose image generates the
    cyclic quotient P/H of order p^n.  With |H| = p^k the count is exact:

        |𝒢| = p^(n+k-1) · (p-1)                                      (i)

    The distinct subgroups ⟨x⟩, x ∈ 𝒢, split by order into layers Ω_i of
    size N_i (order p^(n+i), i = 0..k); counting each subgroup's generators,
    all of which lie in 𝒢:

        Σ_i N_i · p^(n+i-1) · (p-1) = |𝒢|                            (ii)

    Dividing by p^(n-1)(p-1): p^k = Σ N_i p^i, so q cannot divide every N_i;
    on the first layer with q ∤ N_i, conjugation by Q must fix some subgroup,
    which is the required T.  Ties are broken by the least generator.
    """
    qt, pi = quotient(P, H)
    pn = p**n
    if qt.order() != pn:
        raise InternalCheckError("P/H does not have the expected order")
    k = 0
    h_order = H.order()
    while p**k < h_order:
        k += 1
    if p**k != h_order:
        raise InternalCheckError("H is not a p-group")

    preimage_gens = [x for x in P.elements() if pi(x).order() == pn]
    expected = p ** (n + k - 1) * (p - 1)
    if len(preimage_gens) != expected:
        raise InternalCheckError(
            f"preimage-generator count {len(preimage_gens)} != p^(n+k-1)(p-1) = {expected}"
        )

    layers: dict[int, dict[frozenset, Permutation]] = {}
    for x in preimage_gens:
        order = x.order()
        members = frozenset(x**j for j in range(order))
        layers.setdefault(order, {}).setdefault(members, min(members - {P.identity}))

    layer_sizes = []
    total = 0
    for i in range(k + 1):
        count = len(layers.get(pn * p**i, {}))
        layer_sizes.append(count)
        total += count * p ** (n + i - 1) * (p - 1)
    if total != len(preimage_gens):
        raise InternalCheckError("layer counting identity failed")

    chosen = next((i for i in range(k + 1) if layer_sizes[i] % q != 0), None)
    if chosen is None:
        raise InternalCheckError("every layer count is divisible by q, which is impossible")

    fixed: list[Permutation] = []
    for members in sorted(layers[pn * p**chosen], key=lambda s: tuple(sorted(s))):
        if all(frozenset(t.conjugated_by(g) for t in members) == members for g in Q.generators):
            sub = from_elements(P.degree, members)
            order = pn * p**chosen
            fixed.append(min(t for t in members if t.order() == order))
    if not fixed:
        raise InternalCheckError("no conjugation-fixed subgroup on the chosen layer")
    cover = PermGroup(P.degree, [min(fixed)])
    return CyclicCoverResult(cover, len(preimage_gens), tuple(layer_sizes), chosen)


def find_invariant_cyclic_cover(cfg: SectionConfig, trace: PipelineTrace) -> PermGroup:
    spec = cfg.target.spec
    P = sylow(cfg.group, spec.p)
    if not P.is_normal_in(cfg.group):
        raise InternalCheckError("the Sylow p-subgroup of G must be normal here")
    Q = sylow(cfg.group, spec.q)
    if Q.order() != spec.q:
        raise InternalCheckError("the Sylow q-subgroup of G must have order q")
    if not P.contains_subgroup(cfg.kernel):
        raise InternalCheckError("H must lie inside the Sylow p-subgroup")
    result = cyclic_cover_search(P, cfg.kernel, Q, spec.p, spec.n, spec.q)
    trace.add(
        "cyclic-cover",
        sylow_p=P.order(),
        kernel=cfg.kernel.order(),
        preimage_generators=result.preimage_generators,
        layer_sizes=",".join(str(c) for c in result.layer_sizes),
        chosen_layer=result.chosen_layer,
        cover=result.cover.order(),
    )
    return result.cover


# ---------------------------------------------------------------------------
# stage 5: assemble the witness


def assemble_witness(cfg: SectionConfig, cover: PermGroup, trace: PipelineTrace) -> _PreWitness:
    """R = T·Q maps onto the target with kernel H∩R; its normal subgroups form
    a chain, so one of K1∩R, K2∩R is trivial and R embeds into that factor."""
    spec = cfg.target.spec
    Q = sylow(cfg.group, spec.q)
    R = PermGroup(cfg.group.degree, list(cover.generators) + list(Q.generators))
    if R.order() != cover.order() * spec.q:
        raise InternalCheckError("T·Q does not have order |T|·q")
    hr = intersection(cfg.kernel, R)
    qr = quotient(R, hr)
    if not is_isomorphic(qr.group, cfg.target.group).isomorphic:
        raise InternalCheckError("R/(H∩R) is not isomorphic to the target")
    if not is_chain(normal_subgroups(R)):
        raise InternalCheckError("normal subgroups of R do not form a chain")

    k1, k2 = kernel_intersections(cfg.ambient, cfg.group)
    meet1 = intersection(k1, R).order()
    meet2 = intersection(k2, R).order()
    if meet1 > 1 and meet2 > 1:
        raise InternalCheckError("both component kernels meet R nontrivially")
    side = "X" if meet2 == 1 else "Y"
    sub = projection_of_subgroup(cfg.ambient, R, side)
    ker = projection_of_subgroup(cfg.ambient, hr, side)
    if sub.order() != R.order() or ker.order() != hr.order():
        raise InternalCheckError("projection is not injective on R")
    trace.add(
        "assemble",
        cover=cover.order(),
        r=R.order(),
        kernel_meet=hr.order(),
        k1_meet=meet1,
        k2_meet=meet2,
        side=side,
    )
    return _PreWitness(side, sub, ker)


# ---------------------------------------------------------------------------
# the full pipeline


def run_pipeline(cfg: SectionConfig) -> tuple[SectionWitness, PipelineTrace]:
    """Execute the reductions in order and return a verified witness plus the
    decision trace.  The witness lives inside the original X or Y factor."""
    trace = PipelineTrace()
    trace.add(
        "input",
        x=cfg.ambient.x.order(),
        y=cfg.ambient.y.order(),
        group=cfg.group.order(),
        kernel=cfg.kernel.order(),
        target=cfg.target.group.order(),
    )
    original = cfg
    check_target_structure(construct_metacyclic(cfg.target.spec))

    cfg1, lifts = reduce_projections(cfg, trace)
    staged, lift2 = reduce_kernel_overlap(cfg1, trace)
    if lift2 is not None:
        lifts.append(lift2)
    if isinstance(staged, _PreWitness):
        pre = staged
    else:
        cfg3, stripping_lifts = reduce_kernel_to_p_group(staged, trace)
        lifts.extend(stripping_lifts)
        cover = find_invariant_cyclic_cover(cfg3, trace)
        pre = assemble_witness(cfg3, cover, trace)

    for lift in reversed(lifts):
        pre = lift.pull(pre)

    witness = _finalize(pre, original)
    trace.add(
        "witness",
        side=witness.side,
        subgroup=witness.subgroup.order(),
        kernel=witness.kernel.order(),
    )
    return witness, trace


def _finalize(pre: _PreWitness, original: SectionConfig) -> SectionWitness:
    side_group = original.ambient.side_group(pre.side)
    if not all(g in side_group for g in pre.subgroup.generators):
        raise InternalCheckError("transported witness left the original factor")
    if not pre.kernel.is_normal_in(pre.subgroup):
        raise InternalCheckError("transported kernel is not normal in the witness subgroup")
    index = pre.subgroup.order() // pre.kernel.order()
    if index != original.target.group.order():
        raise InternalCheckError("transported witness has the wrong index")
    qt, _ = quotient(pre.subgroup, pre.kernel)
    iso = is_isomorphic(qt, original.target.group)
    if not iso.isomorphic:
        raise InternalCheckError("transported quotient lost the target isomorphism type")
    return SectionWitness(pre.side, pre.subgroup, pre.kernel, iso.witness)
