import pytest

from verbalrank.catalog import (
    CATALOG, FULL, SMOKE, CatalogEntry, build_catalog, build_recipe, format_group, get_group,
    parse_group_text, read_group_file, symmetric,
)
from verbalrank.lattice import rank
from verbalrank.subgroups import full


def test_profiles():
    smoke = build_catalog("smoke")
    assert [n for n, _ in smoke] == ["C2", "C6", "V4", "S3", "D8", "Q8", "A4", "S4", "SL(2,3)", "C3^2:C8"]
    assert set(SMOKE) <= set(FULL)
    with pytest.raises(ValueError):
        build_catalog("huge")


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_entries_have_expected_order(name):
    assert CATALOG[name].construct().order() == CATALOG[name].expected_order


def test_recipes():
    assert get_group("S4").order() == 24
    E = build_recipe("elementary_abelian 2 3")
    assert E.order() == 8 and rank(full(E)) == 3
    assert build_recipe("semidirect 3 2").order() == 72
    assert build_recipe("direct_product S3 C2").order() == 12
    assert build_recipe("psl 2 7").order() == 168
    for bad in ("cyclic", "nonsense 3", "semidirect 3 2 2"):
        with pytest.raises(ValueError):
            build_recipe(bad)


def test_order_mismatch_detected():
    e = CatalogEntry("bad", "symmetric 3", 7, lambda: symmetric(3))
    with pytest.raises(RuntimeError):
        e.construct()


def test_group_file_round_trip(tmp_path):
    G = get_group("SL(2,3)")
    path = tmp_path / "g.txt"
    path.write_text("# SL(2,3) on vectors\n" + format_group(G))
    H = read_group_file(path)
    assert H.order() == 24 and H.same_group(G)
    assert get_group(f"file:{path}").order() == 24


def test_group_file_identity_and_inline():
    G = parse_group_text("degree: 3\ngens: (1 2 3)\n()\n")
    assert G.order() == 3


@pytest.mark.parametrize("text", [
    "gens:\n(1 2)\n",
    "degree: x\n",
    "degree: 3\n(1 2)\n",
    "degree: 3\ngens:\n(1 4)\n",
    "degree: 3\ngens:\n(1 2\n",
])
def test_group_file_errors(text):
    with pytest.raises(ValueError):
        parse_group_text(text)
