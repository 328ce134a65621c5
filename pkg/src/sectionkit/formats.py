"""Line-oriented text formats: group files, witness files, traces.

All formats are newline-normalized, version-stamped text: witnesses are
certificates meant to be audited by humans and by independent tooling, so
nothing is binary and rendering is canonical (byte-identical across runs).
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .errors import FormatError
from .groups import PermGroup
from .perms import Permutation
from .pipeline import SectionWitness

GROUP_MAGIC = "groupfile 1"
WITNESS_MAGIC = "witnessfile 1"

_CYCLE_RE = re.compile(r"\(\s*((?:\d+)(?:\s+\d+)*)?\s*\)")


def render_permutation(p: Permutation) -> str:
    return p.cycle_string()


def parse_cycles(text: str, degree: int, line: int | None = None) -> Permutation:
    """Parse disjoint-cycle notation like ``(0 1 2)(3 4)`` or ``()``."""
    pos = 0
    cycles: list[list[int]] = []
    stripped = text.strip()
    while pos < len(stripped):
        m = _CYCLE_RE.match(stripped, pos)
        if m is None:
            raise FormatError(f"bad cycle syntax near {stripped[pos:pos + 12]!r}", line, pos + 1)
        body = m.group(1)
        if body:
            cycles.append([int(tok) for tok in body.split()])
        pos = m.end()
        while pos < len(stripped) and stripped[pos].isspace():
            pos += 1
    try:
        return Permutation.from_cycles(degree, cycles)
    except Exception as exc:
        raise FormatError(str(exc), line) from exc


# ---------------------------------------------------------------------------
# group files


def render_group(G: PermGroup, name: str | None = None) -> str:
    lines = [GROUP_MAGIC]
    if name:
        lines.append(f"name {name}")
    lines.append(f"degree {G.degree}")
    for g in G.generators:
        lines.append(f"gen {render_permutation(g)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GroupFile:
    group: PermGroup
    name: str | None


def parse_group(text: str) -> GroupFile:
    lines = text.splitlines()
    if not lines or lines[0].strip() != GROUP_MAGIC:
        raise FormatError(f"expected header {GROUP_MAGIC!r}", 1)
    name: str | None = None
    degree: int | None = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key == "name":
            name = rest.strip()
        elif key == "degree":
            try:
                degree = int(rest)
            except ValueError:
                raise FormatError(f"bad degree {rest!r}", lineno)
            if degree < 1:
                raise FormatError("degree must be positive", lineno)
        elif key == "gen":
            if degree is None:
                raise FormatError("gen line before degree line", lineno)
            gens.append(parse_cycles(rest, degree, lineno))
        else:
            raise FormatError(f"unknown directive {key!r}", lineno)
    if degree is None:
        raise FormatError("missing degree line")
    return GroupFile(PermGroup(degree, gens), name)


def group_digest(G: PermGroup) -> str:
    return hashlib.sha256(render_group(G).encode()).hexdigest()


# ---------------------------------------------------------------------------
# witness files


def render_witness(
    witness: SectionWitness,
    original: PermGroup,
    target: PermGroup,
    trace_digest: str | None = None,
) -> str:
    images = witness.generator_images()
    lines = [WITNESS_MAGIC]
    lines.append(f"side {witness.side}")
    lines.append(f"original degree {original.degree}")
    lines.append(f"original sha256 {group_digest(original)}")
    lines.append(f"target degree {target.degree}")
    lines.append(f"target sha256 {group_digest(target)}")
    for g in witness.subgroup.generators:
        lines.append(f"subgroup gen {render_permutation(g)}")
    for g in witness.kernel.generators:
        lines.append(f"kernel gen {render_permutation(g)}")
    for g, img in zip(witness.subgroup.generators, images):
        lines.append(f"iso {render_permutation(g)} => {render_permutation(img)}")
    if trace_digest:
        lines.append(f"trace sha256 {trace_digest}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WitnessRecord:
    """The raw content of a witness file, before group reconstruction."""

    side: str
    original_degree: int
    original_digest: str
    target_degree: int
    target_digest: str
    subgroup_gens: tuple[Permutation, ...]
    kernel_gens: tuple[Permutation, ...]
    iso_pairs: tuple[tuple[Permutation, Permutation], ...]
    trace_digest: str | None


def parse_witness(text: str) -> WitnessRecord:
    lines = text.splitlines()
    if not lines or lines[0].strip() != WITNESS_MAGIC:
        raise FormatError(f"expected header {WITNESS_MAGIC!r}", 1)
    side = None
    original_degree = target_degree = None
    original_digest = target_digest = None
    subgroup_gens: list[Permutation] = []
    kernel_gens: list[Permutation] = []
    iso_pairs: list[tuple[Permutation, Permutation]] = []
    trace_digest = None
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "side":
            if rest not in ("X", "Y", "self"):
                raise FormatError(f"bad side {rest!r}", lineno)
            side = rest
        elif key == "original":
            original_degree, original_digest = _degree_or_digest(
                rest, original_degree, original_digest, lineno
            )
        elif key == "target":
            target_degree, target_digest = _degree_or_digest(
                rest, target_degree, target_digest, lineno
            )
        elif key == "subgroup":
            subgroup_gens.append(_gen_line(rest, original_degree, lineno))
        elif key == "kernel":
            kernel_gens.append(_gen_line(rest, original_degree, lineno))
        elif key == "iso":
            left, sep, right = rest.partition("=>")
            if not sep:
                raise FormatError("iso line needs '=>'", lineno)
            if original_degree is None or target_degree is None:
                raise FormatError("iso line before degree lines", lineno)
            iso_pairs.append(
                (
                    parse_cycles(left, original_degree, lineno),
                    parse_cycles(right, target_degree, lineno),
                )
            )
        elif key == "trace":
            sub, _, value = rest.partition(" ")
            if sub != "sha256":
                raise FormatError(f"unknown trace field {sub!r}", lineno)
            trace_digest = value.strip()
        else:
            raise FormatError(f"unknown directive {key!r}", lineno)
    if side is None:
        raise FormatError("missing side line")
    if original_degree is None or target_degree is None:
        raise FormatError("missing degree lines")
    if original_digest is None or target_digest is None:
        raise FormatError("missing sha256 lines")
    return WitnessRecord(
        side,
        original_degree,
        original_digest,
        target_degree,
        target_digest,
        tuple(subgroup_gens),
        tuple(kernel_gens),
        tuple(iso_pairs),
        trace_digest,
    )


def _degree_or_digest(rest: str, degree, digest, lineno):
    sub, _, value = rest.partition(" ")
    value = value.strip()
    if sub == "degree":
        try:
            return int(value), digest
        except ValueError:
            raise FormatError(f"bad degree {value!r}", lineno)
    if sub == "sha256":
        return degree, value
    raise FormatError(f"unknown field {sub!r}", lineno)


def _gen_line(rest: str, degree, lineno) -> Permutation:
    sub, _, value = rest.partition(" ")
    if sub != "gen":
        raise FormatError(f"expected 'gen', got {sub!r}", lineno)
    if degree is None:
        raise FormatError("generator line before degree line", lineno)
    return parse_cycles(value, degree, lineno)


def witness_from_record(record: WitnessRecord, original: PermGroup, target: PermGroup):
    """Rebuild an in-memory witness from a parsed file against the referenced
    groups; digest mismatches are reported, reconstruction is from content."""
    from .homs import GroupHom, quotient  # local import to keep module deps one-way

    if record.original_digest != group_digest(original):
        raise FormatError("witness references a different original group (sha256 mismatch)")
    if record.target_digest != group_digest(target):
        raise FormatError("witness references a different target group (sha256 mismatch)")
    subgroup = PermGroup(record.original_degree, record.subgroup_gens)
    kernel = PermGroup(record.original_degree, record.kernel_gens)
    image_of = {g: img for g, img in record.iso_pairs}
    try:
        images = [image_of[g] for g in subgroup.generators]
    except KeyError:
        raise FormatError("iso lines do not cover the subgroup generators")
    Q, pi = quotient(subgroup, kernel)
    gen_image = {}
    for g, img in zip(subgroup.generators, images):
        gen_image[pi(g)] = img
    iso = GroupHom(Q, target, [gen_image[q] for q in Q.generators])
    return SectionWitness(record.side, subgroup, kernel, iso)
