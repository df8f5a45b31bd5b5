"""Smoke test for the `octic` extension module.

Build first with `cargo build --release -p octic-py`; the script copies the
shared library next to itself as `octic.so` unless `OCTIC_LIB` points at it.
"""

import os
import pathlib
import shutil
import sys
import tempfile

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parents[2]
FIELDS = ROOT / "crates" / "core" / "tests" / "data" / "fields.jsonl"


def load_module():
    lib = pathlib.Path(os.environ.get("OCTIC_LIB", ROOT / "target" / "release" / "liboctic.so"))
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "octic.so")
    sys.path.insert(0, str(tmp))
    import octic

    return octic, tmp


def main():
    octic, tmp = load_module()

    g = octic.PermGroup.catalog("8T23")
    assert g.order() == 48, g
    assert g.malle_alpha() == "1/3"
    assert g.cyclic_subgroup_orders() == [1, 2, 3, 4, 6, 8]
    assert octic.PermGroup.parse(g.canonical_text()).order() == 48
    s3 = octic.PermGroup(3, ["(1 2 3)", "(1 2)"])
    assert s3.order() == 6 and s3.is_transitive()
    assert len(octic.catalog_labels()) == 6

    assert sorted(octic.factor_mod_p([1, 0, 1], 5)) == [(1, 1), (1, 1)]
    assert octic.factor_mod_p([-1, -1, 0, 0, 1], 2) == [(4, 1)]

    symbols = octic.splitting_symbols("8T23")
    assert len(symbols) == 19 and all(sym.startswith("(") for _, sym in symbols)
    assert all(r["status"] == "pass" for r in octic.verify_splitting())

    snap = octic.Snapshot.ingest(str(FIELDS))
    assert len(snap) == 8
    octics = snap.query(degree=8, galois=["8T24"], max_disc=30_000_000)
    assert len(octics) == 4
    assert snap.audit()["status"] == "pass"
    value, bound = snap.zeta_k_at_2("4.2.283.1", 10_000)
    assert 1.0 < value < 2.0 and 0.0 < bound < 1e-3
    c = snap.partial_constant(1000, 1000)
    assert c["terms"] == 2 and c["value"] > 0
    assert snap.count(["8T24"], [5_000_000, 20_000_000, 60_000_000]) == [1, 3, 6]
    assert snap.tail_count(1, 1000) == 0

    store = tmp / "fields.store"
    snap.persist(str(store))
    again = octic.Snapshot.load(str(store))
    assert again.labels() == snap.labels()

    try:
        octic.Snapshot.from_text('{"label": "x"}')
    except ValueError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("bad record accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
