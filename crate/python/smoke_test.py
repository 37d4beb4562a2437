"""Smoke test for the pinloop_py extension module.

Install with `pip install --no-build-isolation crates/pinloop-py` (needs
maturin), or point PYTHONPATH at a directory containing the built
`pinloop_py.so`.
"""

import pinloop_py as pl


def main():
    assert "worked16" in pl.fixture_names()

    fig8 = pl.Multiloop.fixture("figure-eight")
    assert (fig8.n_double_points, fig8.n_regions) == (1, 3)
    assert fig8.pinning_number() == 2

    worked = pl.Multiloop.fixture("worked16")
    assert worked.chi == 2 and worked.genus == 0
    assert sum(worked.region_degrees()) == 4 * worked.n_double_points
    again = pl.Multiloop.from_json(worked.to_json())
    assert again.n_regions == worked.n_regions

    loop = pl.Multiloop.fixture("9_1_5")
    formula = loop.mobidisc_formula()
    best = formula.minimum_hitting_set()
    assert len(best) == loop.pinning_number()
    assert loop.is_pinning(best)
    assert pl.MobidiscFormula.from_dimacs(formula.to_dimacs()).clauses == formula.clauses

    assert pl.word_self_intersection("a", "aABb") == 0

    red = pl.vc_to_loop([("0", "0"), ("1", "0")], [(0, 1)])
    assert red.pinning_number() == 7
    assert pl.verify_correspondence([("0", "0"), ("1", "0")], [(0, 1)], 1)
    assert not pl.verify_correspondence([("0", "0"), ("1", "0")], [(0, 1)], 0)

    try:
        pl.Multiloop.fixture("no-such-loop")
    except pl.PinloopError:
        pass
    else:
        raise AssertionError("unknown fixture accepted")

    print("pinloop_py smoke test: ok")


if __name__ == "__main__":
    main()
