"""Smoke test for the wtoric extension module.

Build it with
    cargo build -p wtoric-py --release --features extension-module
and copy target/release/libwtoric.so to a directory on sys.path as wtoric.so
(or point WTORIC_PY_PATH at such a directory).
"""

import json
import os
import sys

if "WTORIC_PY_PATH" in os.environ:
    sys.path.insert(0, os.environ["WTORIC_PY_PATH"])

import wtoric


def main():
    rs = wtoric.RootSystem("B3")
    assert rs.rank == 3 and rs.num_roots == 18
    assert rs.weyl_order() == 48

    hexagon = wtoric.Polytope("A2", [[1, 1]])
    assert (hexagon.num_vertices, hexagon.num_facets) == (6, 6)
    assert hexagon.dims() == [1, 4, 1]
    assert all(hexagon.verify([1, 2]).values())

    pentagon = wtoric.Polytope("I2(5)", [[1, 0]])
    assert not pentagon.nondegenerate
    assert all(pentagon.verify([2]).values())
    print("pentagon traces r1:", pentagon.trace(1), "r2:", pentagon.trace(2))

    report = json.loads(wtoric.run(json.dumps({
        "type_label": "A3",
        "lambda_set": [[1, 1, 1]],
        "K": [1, 3],
        "checks": ["iso", "algebra"],
    })))
    assert report["passed"], report["errors"]

    matches, _, _ = wtoric.example("a2-hexagon")
    assert matches

    try:
        wtoric.Polytope("E8", [[1]])
    except wtoric.WtoricError as e:
        print("rejected:", e)
    else:
        raise AssertionError("E8 should be rejected")

    print("wtoric", wtoric.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
