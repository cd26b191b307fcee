#!/usr/bin/env python3
"""Smoke test for the mvsheaf_py extension module.

Build and run:

    cargo build --release -p mvsheaf-python
    cp target/release/libmvsheaf_py.so python/mvsheaf_py.so
    PYTHONPATH=python python3 python/smoke_test.py
"""

import json

import mvsheaf_py as mv

CIRCLE_PROJECTION = json.dumps(
    {
        "vertices": [0, 1, 2, 3],
        "simplices": [[0, 1], [1, 2], [2, 3], [0, 3]],
        "values": {"0": "-1", "1": "0", "2": "1", "3": "0"},
    }
)

CIRCLE_CONSTANT = json.dumps(
    {
        "vertices": [0, 1, 2, 3],
        "simplices": [[0, 1], [1, 2], [2, 3], [0, 3]],
        "values": {"0": "0", "1": "0", "2": "0", "3": "0"},
    }
)


def main() -> None:
    # pushforward of the coordinate projection on the square circle
    bf = mv.pushforward_barcode(CIRCLE_PROJECTION)
    bars = sorted(bf.bars())
    assert bars == [
        (0, "-1/1", "1/1", False, False),
        (0, "-1/1", "1/1", True, True),
    ], bars

    # pushforward of the constant map: two point bars one degree apart
    bp = mv.pushforward_barcode(CIRCLE_CONSTANT)
    assert sorted(bp.bars()) == [
        (0, "0/1", "0/1", False, False),
        (1, "0/1", "0/1", False, False),
    ]

    # the two are at bottleneck distance exactly one
    assert bf.bottleneck_distance(bp) == "1"
    assert bf.bottleneck_distance(bf) == "0"

    # block systems, pointwise dimensions of the circle
    sf = mv.levelset_system(CIRCLE_PROJECTION)
    assert sf.dim_at(0, "1/2", "1/2") == 2  # two arcs
    assert sf.dim_at(1, "2", "2") == 1  # the loop closes up
    assert sf.interleaving_distance(mv.levelset_system(CIRCLE_CONSTANT)) == "1"

    # the section law: barcode -> system -> barcode is the identity
    assert sf.to_barcode().to_system().to_barcode() == sf.to_barcode()

    # JSON round trips are byte-stable
    assert mv.Barcode.from_json(bf.to_json()).to_json() == bf.to_json()
    assert mv.BlockSystem.from_json(sf.to_json()).to_json() == sf.to_json()

    # convolution collapses the open bar at half its length
    collapsed = bf.convolve("1")
    assert (1, "0/1", "0/1", False, False) in collapsed.bars()

    # exact interleaving decision on small systems
    assert sf.eps_interleaved(sf, "0")
    assert sf.shift("1/2").eps_interleaved(sf, "1/2")

    # plotting produces an SVG document
    assert bf.plot_svg().startswith("<svg")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
