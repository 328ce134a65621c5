"""Independent ground truth: brute-force section search and witness checking.

Nothing here trusts the pipeline.  Sections are searched by enumerating
subgroups up to conjugacy (safe because "D is a section of X" is invariant
under conjugation: K/N ≅ K^g/N^g via x ↦ x^g), witnesses are re-verified
from scratch, and the sweep cross-checks every pipeline run against the
brute-force answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from multiprocessing import Pool

from .analysis import (
    conjugation_orbit_and_normalizer,
    derived_subgroup,
    is_isomorphic,
    iter_subgroup_classes,
    normal_subgroups,
)
from .construct import DirectProduct, direct_product
from .errors import CapExceeded, SectionKitError
from .groups import PermGroup
from .homs import GroupHom, quotient
from .limits import LIMITS
from .pipeline import SectionConfig, SectionTarget, SectionWitness, run_pipeline, section_config
from .perms import Permutation


@dataclass(frozen=True)
class VerifyOutcome:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_witness(
    witness: SectionWitness, original_side_group: PermGroup, D: PermGroup
) -> VerifyOutcome:
    """Re-check a witness from scratch.

    Recomputes the quotient and the image map instead of trusting anything the
    pipeline cached; a tampered witness fails with a reason code.
    """
    K, N = witness.subgroup, witness.kernel
    if K.degree != original_side_group.degree or not all(
        g in original_side_group for g in K.generators
    ):
        return VerifyOutcome(False, "containment")
    if not N.is_normal_in(K):
        return VerifyOutcome(False, "normality")
    if K.order() % N.order() or K.order() // N.order() != D.order():
        return VerifyOutcome(False, "index")

    try:
        images = witness.generator_images()
    except SectionKitError:
        return VerifyOutcome(False, "alignment")
    if len(images) != len(K.generators) or not all(im in D for im in images):
        return VerifyOutcome(False, "alignment")

    Q, pi = quotient(K, N)
    gen_image = {}
    for k_gen, d_img in zip(K.generators, images):
        q_gen = pi(k_gen)
        if gen_image.setdefault(q_gen, d_img) != d_img:
            return VerifyOutcome(False, "alignment")
    try:
        candidate = GroupHom(Q, D, [gen_image[g] for g in Q.generators])
    except (KeyError, SectionKitError):
        return VerifyOutcome(False, "alignment")
    if not candidate.is_homomorphism():
        return VerifyOutcome(False, "homomorphism")
    if not candidate.kernel().is_trivial():
        return VerifyOutcome(False, "injectivity")
    if candidate.image().order() != D.order():
        return VerifyOutcome(False, "surjectivity")
    return VerifyOutcome(True)


@dataclass(frozen=True)
class OracleReport:
    found: bool
    witness: SectionWitness | None
    subgroups_examined: int
    elapsed: float


# Memo of found/not-found per (D, X) content pair; the search is pure, so
# this only short-circuits repeated sweep queries.
_oracle_memo: dict[tuple, "OracleReport"] = {}


def is_section_bruteforce(D: PermGroup, X: PermGroup, cap: int | None = None) -> OracleReport:
    """Search K ≤ X and N ⊴ K with K/N ≅ D, exhaustively up to conjugacy."""
    memo_key = (D.degree, D.generators, X.degree, X.generators)
    cached = _oracle_memo.get(memo_key)
    if cached is not None:
        return cached
    limit = cap if cap is not None else LIMITS.max_subgroup_order
    if X.order() > limit:
        raise CapExceeded(f"oracle target order {X.order()} exceeds cap {limit}")
    start = time.perf_counter()
    d_order = D.order()
    examined = 0
    for K in iter_subgroup_classes(X, limit):
        examined += 1
        if K.order() % d_order:
            continue
        for N in normal_subgroups(K):
            if K.order() // N.order() != d_order:
                continue
            Q, pi = quotient(K, N)
            iso = is_isomorphic(Q, D)
            if iso.isomorphic:
                witness = SectionWitness("self", K, N, iso.witness)
                report = OracleReport(True, witness, examined, time.perf_counter() - start)
                _oracle_memo[memo_key] = report
                return report
    report = OracleReport(False, None, examined, time.perf_counter() - start)
    _oracle_memo[memo_key] = report
    return report


# ---------------------------------------------------------------------------
# configuration enumeration


def enumerate_section_configs(
    dp: DirectProduct, target: SectionTarget, limit: int, cap: int | None = None
) -> list[SectionConfig]:
    """Pairs (G ≤ F, H ⊴ G) with G/H ≅ D, up to conjugacy in F, at most `limit`.

    Cheap necessary conditions rule a product out before any lattice crawl:

    - |D| must divide |F|, and F cannot be abelian (D is not);
    - a coset of order m lifts to an element of order divisible by m, so F
      needs an element of order divisible by p^n and one divisible by q;
    - D's derived subgroup is its full cyclic part (order p^n), and the image
      of [G,G] in G/H ≅ D is that derived subgroup, so p^n divides |[G,G]|,
      which divides |[F,F]|.
    """
    product_cap = cap if cap is not None else LIMITS.max_product_order
    F = dp.group
    if F.order() > product_cap:
        raise CapExceeded(f"product order {F.order()} exceeds cap {product_cap}")
    d_order = target.group.order()
    if F.order() % d_order or F.is_abelian():
        return []
    spec = target.spec
    orders = {g.order() for g in F.elements()}
    if not any(o % spec.modulus == 0 for o in orders):
        return []
    if not any(o % spec.q == 0 for o in orders):
        return []
    if derived_subgroup(F).order() % spec.modulus:
        return []

    configs: list[SectionConfig] = []
    for G in iter_subgroup_classes(F, cap=F.order()):
        if G.order() % d_order or G.is_abelian():
            continue
        if derived_subgroup(G).order() % spec.modulus:
            continue
        normals = [N for N in normal_subgroups(G) if G.order() // N.order() == d_order]
        if not normals:
            continue
        keep = _dedup_under_normalizer(F, G, normals)
        for H in keep:
            Q, _ = quotient(G, H)
            if not is_isomorphic(Q, target.group).isomorphic:
                continue
            configs.append(section_config(dp, G, H, target))
            if len(configs) >= limit:
                return configs
    return configs


def _dedup_under_normalizer(
    F: PermGroup, G: PermGroup, candidates: list[PermGroup]
) -> list[PermGroup]:
    """Drop H's equivalent under conjugation by N_F(G); (G, H) and (G, H^g)
    describe the same configuration up to conjugacy in F."""
    if len(candidates) <= 1:
        return candidates
    _, norm = conjugation_orbit_and_normalizer(F, G)
    keys = {id(H): H.element_set() for H in candidates}
    out: list[PermGroup] = []
    seen: set[frozenset[Permutation]] = set()
    for H in candidates:
        if keys[id(H)] in seen:
            continue
        out.append(H)
        orbit = {keys[id(H)]}
        queue = [keys[id(H)]]
        conjugators = list(norm.generators) + [g.inverse() for g in norm.generators]
        while queue:
            current = queue.pop(0)
            for g in conjugators:
                moved = frozenset(x.conjugated_by(g) for x in current)
                if moved not in orbit:
                    orbit.add(moved)
                    queue.append(moved)
        seen |= orbit
    return out


# ---------------------------------------------------------------------------
# the exhaustive sweep


@dataclass(frozen=True)
class SweepRecord:
    pair: str
    config_id: str
    pipeline_side: str
    oracle_sides: str
    status: str

    def render(self) -> str:
        return (
            f"pair={self.pair}\tconfig={self.config_id}\tpipeline-side={self.pipeline_side}"
            f"\toracle-sides={self.oracle_sides}\tstatus={self.status}"
        )


@dataclass
class SweepReport:
    records: list[SweepRecord] = field(default_factory=list)
    witnesses: list[tuple[str, SectionWitness]] = field(default_factory=list)

    @property
    def configs_run(self) -> int:
        return sum(1 for r in self.records if r.config_id != "-")

    @property
    def discrepancies(self) -> list[SweepRecord]:
        return [r for r in self.records if r.status.startswith("discrepancy")]

    def render_records(self) -> str:
        return "".join(r.render() + "\n" for r in self.records)

    def summary(self) -> str:
        return (
            f"pairs={len({r.pair for r in self.records})} configs={self.configs_run} "
            f"discrepancies={len(self.discrepancies)}"
        )


def _sweep_pair(args) -> tuple[list[SweepRecord], list[tuple[str, SectionWitness]]]:
    name_x, X, name_y, Y, target, config_limit, product_cap, oracle_cap = args
    pair = f"{name_x}|{name_y}"
    records: list[SweepRecord] = []
    witnesses: list[tuple[str, SectionWitness]] = []

    if X.order() * Y.order() > product_cap:
        return [SweepRecord(pair, "-", "-", "-", "skipped-cap")], witnesses
    dp = direct_product(X, Y)
    configs = enumerate_section_configs(dp, target, config_limit, product_cap)
    if not configs:
        return [SweepRecord(pair, "-", "-", "-", "no-configs")], witnesses

    oracle_cache: dict[str, bool] = {}

    def oracle_found(side: str) -> bool:
        if side not in oracle_cache:
            group = X if side == "X" else Y
            oracle_cache[side] = is_section_bruteforce(
                target.group, group, oracle_cap
            ).found
        return oracle_cache[side]

    for i, cfg in enumerate(configs):
        config_id = f"c{i:02d}"
        try:
            witness, _ = run_pipeline(cfg)
        except SectionKitError as exc:
            records.append(SweepRecord(pair, config_id, "-", "-", f"discrepancy-pipeline:{type(exc).__name__}"))
            continue
        side_group = X if witness.side == "X" else Y
        check = verify_witness(witness, side_group, target.group)
        oracle_sides = ",".join(s for s in ("X", "Y") if oracle_found(s)) or "-"
        if not check.ok:
            status = f"discrepancy-witness:{check.reason}"
        elif witness.side not in oracle_sides.split(","):
            status = "discrepancy-oracle"
        else:
            status = "ok"
        records.append(SweepRecord(pair, config_id, witness.side, oracle_sides, status))
        witnesses.append((f"{pair}:{config_id}", witness))
    return records, witnesses


def theorem_sweep(
    catalog_x,
    catalog_y,
    target: SectionTarget,
    config_limit: int = 25,
    product_cap: int | None = None,
    oracle_cap: int | None = None,
    jobs: int = 1,
) -> SweepReport:
    """Run the pipeline on every enumerated configuration for every pair and
    cross-check each witness against the brute-force oracle.

    Catalogs are sequences of (name, group) pairs.  Discrepancies never abort
    the sweep; they are report entries, so a full failure picture is always
    available.
    """
    product_cap = product_cap if product_cap is not None else LIMITS.max_product_order
    oracle_cap = oracle_cap if oracle_cap is not None else LIMITS.max_subgroup_order
    work = [
        (name_x, X, name_y, Y, target, config_limit, product_cap, oracle_cap)
        for name_x, X in catalog_x
        for name_y, Y in catalog_y
    ]
    report = SweepReport()
    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_sweep_pair, work)
    else:
        results = map(_sweep_pair, work)
    for records, witnesses in results:
        report.records.extend(records)
        report.witnesses.extend(witnesses)
    return report
