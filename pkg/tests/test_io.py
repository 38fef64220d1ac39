import json
import shutil
import warnings
from pathlib import Path

import pytest

from fuscat.errors import IncompleteMap, ParseError, ValidationError
from fuscat.io import (
    _encode_category,
    load_category,
    parse_ambient_file,
    parse_fusion_file,
    parse_group_file,
    render_group,
)
from fuscat.pcategory import inner_category

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def workdir(tmp_path):
    for f in DATA.glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


def write(path, obj):
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return path


def test_klein_table():
    G = parse_group_file(DATA / "klein.json")
    assert G.order == 4
    assert all(G.mul(x, x) == 0 for x in range(4))


def test_empty_seeds_give_inner(workdir):
    f = write(workdir / "f.json", {"group": "klein.json", "p": 2, "seed_morphisms": []})
    F = parse_fusion_file(f)
    assert F.same_homs(inner_category(F.P, 2))


def test_ambient_s4(s4):
    F = parse_ambient_file(DATA / "s4.json")
    assert F.P.order == 8
    assert F.total_morphisms() == s4.total_morphisms()


def test_seed_iso_file(klein_iso):
    F = parse_fusion_file(DATA / "klein_iso.json")
    assert F.total_morphisms() == klein_iso.total_morphisms()


def test_parse_error_has_position(workdir):
    f = write(workdir / "bad.json", '{\n  "name": "x",\n  "order": 2,\n}')
    with pytest.raises(ParseError) as exc:
        parse_group_file(f)
    assert "line 4" in str(exc.value)


def test_unknown_key_rejected(workdir):
    f = write(workdir / "g.json", {"name": "C2", "order": 2, "table": [[0, 1], [1, 0]], "colour": "red"})
    with pytest.raises(ValidationError) as exc:
        parse_group_file(f)
    assert exc.value.key == "colour"


def test_bad_table_rejected(workdir):
    f = write(workdir / "g.json", {"name": "x", "order": 2, "table": [[0, 1], [1, 1]]})
    with pytest.raises(ValidationError):
        parse_group_file(f)


def test_index_out_of_range(workdir):
    f = write(workdir / "f.json", {"group": "klein.json", "p": 2,
                                    "seed_morphisms": [{"domain": [0, 9], "codomain": [0, 2], "map": {"9": 2}}]})
    with pytest.raises(ValidationError):
        parse_fusion_file(f)


def test_incomplete_map(workdir):
    seed = {"domain": [0, 1, 2, 3], "codomain": [0, 1, 2, 3], "map": {"1": 1, "2": 1}}
    f = write(workdir / "f.json", {"group": "klein.json", "p": 2, "seed_morphisms": [seed]})
    with pytest.raises(IncompleteMap):
        parse_fusion_file(f)


def test_round_trip_group(workdir):
    G = parse_group_file(DATA / "klein.json")
    f = write(workdir / "rt.json", render_group(G))
    H = parse_group_file(f)
    assert H.table == G.table


def test_round_trip_perm_group(workdir):
    from fuscat.catalog import symmetric

    G = symmetric(4)
    H = parse_group_file(write(workdir / "s4t.json", render_group(G)))
    assert H.table == G.table


def test_cache_hit_identical(workdir, monkeypatch):
    monkeypatch.setenv("FUSCAT_CACHE_DIR", str(workdir / "cache"))
    F1, _ = load_category(workdir / "s4.json")
    entries = list((workdir / "cache").glob("*.json"))
    assert len(entries) == 1
    F2, _ = load_category(workdir / "s4.json")
    monkeypatch.delenv("FUSCAT_CACHE_DIR")
    F3, _ = load_category(workdir / "s4.json")
    key = entries[0].stem
    assert _encode_category(key, F2) == _encode_category(key, F3) == _encode_category(key, F1)
    assert F2.fingerprint() == F3.fingerprint()


def test_cache_poisoned(workdir, monkeypatch):
    monkeypatch.setenv("FUSCAT_CACHE_DIR", str(workdir / "cache"))
    F1, _ = load_category(workdir / "klein_iso.json")
    (entry,) = (workdir / "cache").glob("*.json")
    entry.write_text('{"key": "nope", "digest": "0", "maps": []}', encoding="utf-8")
    with pytest.warns(UserWarning, match="corrupt"):
        F2, _ = load_category(workdir / "klein_iso.json")
    assert F2.fingerprint() == F1.fingerprint()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        F3, _ = load_category(workdir / "klein_iso.json")
    assert F3.fingerprint() == F1.fingerprint()
