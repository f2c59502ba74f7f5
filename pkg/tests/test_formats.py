import pytest

from twistcode.fixtures import CODES, GROUPS, data_path, load_code
from twistcode.formats import (
    FormatError,
    dump_cover,
    dump_group,
    dump_ubb,
    format_word,
    parse_cover,
    parse_group,
    parse_ubb,
    parse_word,
    read_group,
    read_tuple,
    write_tuple,
)
from twistcode.ubb import CoveringDesign, Ubb


@pytest.mark.parametrize("key", GROUPS)
def test_group_files_round_trip(key):
    G = read_group(data_path(f"{key}.group"))
    H = parse_group(dump_group(G), name=G.name)
    assert H.generators == G.generators
    assert H.degree == G.degree


def test_group_parse_errors():
    with pytest.raises(FormatError):
        parse_group("gen (1,2)\n")
    with pytest.raises(FormatError):
        parse_group("degree 3\nfoo 1\n")
    with pytest.raises(FormatError):
        parse_group("degree 3\ngen (1,5)\n")
    with pytest.raises(FormatError):
        parse_group("# only a comment\n")


def test_ubb_round_trip(asl_ubb):
    again = parse_ubb(dump_ubb(asl_ubb, ["note"]))
    assert again.bases == asl_ubb.bases
    assert again.strength == 2


def test_cover_round_trip():
    cover = CoveringDesign(8, 5, 2, ((4, 5, 6, 7, 8), (1, 2, 3, 7, 8)))
    again = parse_cover(dump_cover(cover))
    assert again == cover


def test_word_parsing():
    w = parse_word("[4,7,1,6,7,8,2,5 | 4,4,6,1,8,3,5,2]", 8)
    assert len(w) == 16
    assert parse_word("4 7 1 6", 8).symbols == (4, 7, 1, 6)
    assert format_word(w.symbols, 8) == "[4,7,1,6,7,8,2,5 | 4,4,6,1,8,3,5,2]"
    with pytest.raises(FormatError):
        parse_word("1,2,x", 8)
    with pytest.raises(FormatError):
        parse_word("1,2,9", 8)


def test_tuple_round_trip(tmp_path, asl):
    (tmp_path / "asl32.group").write_text(dump_group(asl.g1))
    maps = [asl.alphas[1].generator_images]
    write_tuple(tmp_path / "t.tuple", "T", ["asl32.group"] * 2, maps)
    again = read_tuple(tmp_path / "t.tuple")
    assert again.lam == 2
    assert again.delta_tw() == 12
    assert (again.encode_index(7) == asl.encode_index(7)).all()


def test_tuple_missing_map(tmp_path, asl):
    (tmp_path / "g.group").write_text(dump_group(asl.g1))
    (tmp_path / "t.tuple").write_text("component 1 g.group\ncomponent 2 g.group\n")
    with pytest.raises(FormatError):
        read_tuple(tmp_path / "t.tuple")


def test_tuple_unterminated_map(tmp_path, asl):
    (tmp_path / "g.group").write_text(dump_group(asl.g1))
    (tmp_path / "t.tuple").write_text("component 1 g.group\ncomponent 2 g.group\nmap 2\n()\n")
    with pytest.raises(FormatError):
        read_tuple(tmp_path / "t.tuple")


@pytest.mark.parametrize("key", CODES)
def test_shipped_tuples_check_permutational(key):
    read_tuple(data_path(f"{key}.tuple"), check_permutational=True)
    assert load_code(key).lam >= 2


def test_ubb_rejects_repeated_point():
    with pytest.raises(ValueError):
        Ubb(((1, 1, 2),), 0)
