use pinloop_py::pinloop_py;
use pyo3::prelude::*;

/// Runs the bindings inside an embedded interpreter; a single test because the
/// module has to be registered before the interpreter starts.
#[test]
fn bindings_work_from_python() {
    pyo3::append_to_inittab!(pinloop_py);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            cr#"
import pinloop_py as pl

fig8 = pl.Multiloop.fixture("figure-eight")
assert fig8.pinning_number() == 2
assert fig8.mobidiscs() == [[0], [2]]

worked = pl.Multiloop.fixture("worked16")
assert worked.self_intersection("r,p1,p2") == 4
assert not worked.is_pinning(["r", "p1", "p2"])
assert worked.is_pinning(list(range(worked.n_regions)))
assert pl.Multiloop.from_json(worked.to_json()).n_double_points == 8

loop = pl.Multiloop.fixture("9_1_5")
f = loop.mobidisc_formula()
assert len(f.clauses) == 6
assert len(f.minimal_hitting_sets()) == 5
assert sorted(loop.region_name(r) for r in f.minimum_hitting_set()) in (["1", "2", "4", "8"], ["1", "3", "4", "6"])
assert loop.semilattice_dot().startswith("digraph")

assert pl.word_intersection("ab", "aBa", "aABb") == 2
assert pl.word_self_intersection("aBa", "aABb") == 1

try:
    worked.self_intersection("nowhere")
except pl.PinloopError as e:
    assert "UnknownRegion" in str(e)
else:
    raise AssertionError("unknown region accepted")
"#,
            None,
            None,
        )
        .unwrap_or_else(|e| panic!("{e}"));
    });
}
