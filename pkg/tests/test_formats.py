import pytest

from sectionkit import FormatError, PermGroup, is_section_bruteforce, verify_witness
from sectionkit.catalog import cyclic
from sectionkit.formats import (
    group_digest,
    parse_group,
    parse_witness,
    render_group,
    render_witness,
    witness_from_record,
)


class TestGroupFiles:
    def test_spec_text_parses_to_dihedral_18(self):
        text = (
            "groupfile 1\n"
            "degree 9\n"
            "gen (0 1 2 3 4 5 6 7 8)\n"
            "gen (1 8)(2 7)(3 6)(4 5)\n"
        )
        gf = parse_group(text)
        assert gf.group.order() == 18
        assert not gf.group.is_abelian()

    def test_round_trip_catalog(self, catalog60):
        for name, G in catalog60:
            reparsed = parse_group(render_group(G, name))
            assert reparsed.group.same_elements(G), name
            assert reparsed.name == name

    def test_trivial_group(self):
        gf = parse_group("groupfile 1\ndegree 1\n")
        assert gf.group.order() == 1

    def test_identity_generator_renders_as_empty_cycles(self):
        text = "groupfile 1\ndegree 3\ngen ()\n"
        gf = parse_group(text)
        assert gf.group.is_trivial()

    def test_repeated_point_rejected_with_line(self):
        text = "groupfile 1\ndegree 3\ngen (0 1)(1 2)\n"
        with pytest.raises(FormatError) as err:
            parse_group(text)
        assert err.value.line == 3

    def test_bad_header(self):
        with pytest.raises(FormatError):
            parse_group("somethingelse\n")

    def test_missing_degree(self):
        with pytest.raises(FormatError):
            parse_group("groupfile 1\ngen (0 1)\n")

    def test_unknown_directive(self):
        with pytest.raises(FormatError):
            parse_group("groupfile 1\ndegree 2\nfrobnicate 3\n")

    def test_rendering_is_deterministic(self, d18):
        assert render_group(d18, "D18") == render_group(d18, "D18")
        assert group_digest(d18) == group_digest(d18)


class TestWitnessFiles:
    def test_round_trip(self, d18):
        witness = is_section_bruteforce(d18, d18).witness
        text = render_witness(witness, d18, d18, trace_digest="ab" * 32)
        record = parse_witness(text)
        reloaded = witness_from_record(record, d18, d18)
        assert verify_witness(reloaded, d18, d18).ok
        assert render_witness(reloaded, d18, d18, trace_digest="ab" * 32) == text

    def test_digest_mismatch_detected(self, d18):
        witness = is_section_bruteforce(d18, d18).witness
        text = render_witness(witness, d18, d18)
        record = parse_witness(text)
        with pytest.raises(FormatError):
            witness_from_record(record, cyclic(18), d18)

    def test_tampered_image_fails_verification(self, d18):
        witness = is_section_bruteforce(d18, d18).witness
        lines = render_witness(witness, d18, d18).splitlines()
        idx = next(i for i, line in enumerate(lines) if line.startswith("iso "))
        lines[idx] = lines[idx].split("=>")[0] + "=> ()"
        record = parse_witness("\n".join(lines) + "\n")
        reloaded = witness_from_record(record, d18, d18)
        assert not verify_witness(reloaded, d18, d18).ok

    def test_bad_side_rejected(self):
        with pytest.raises(FormatError):
            parse_witness("witnessfile 1\nside Z\n")

    def test_missing_lines_rejected(self):
        with pytest.raises(FormatError):
            parse_witness("witnessfile 1\nside X\n")
