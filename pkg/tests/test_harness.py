import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tvlab.core import Field, QComplex
from tvlab.geometry import Instance, Polytope, flat_meets_polytope
from tvlab.harness import (
    ColorfulParams,
    HolmsenParams,
    InstanceSpec,
    PiercedParams,
    SpecError,
    SuiteConfig,
    generate_colorful_instance,
    generate_holmsen_instance,
    generate_kalai_meshulam_instance,
    generate_pierced_instance,
    run_suite,
)
from tvlab.harness.cli import main
from tvlab.harness.serialize import instances_equal
from tvlab.hypotheses import (
    Verdict,
    check_colorful_helly,
    check_holmsen,
    check_matroid_intersections,
    check_models_dependencies,
)
from tvlab.matroid import LinearMatroid, PartitionMatroid, UniformMatroid

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@st.composite
def instances(draw):
    field = draw(st.sampled_from([Field.R, Field.C]))
    d = draw(st.integers(1, 3))
    k = draw(st.integers(0, d - 1))
    r = draw(st.integers(0, k))
    n = draw(st.integers(1, 4))

    def scalar():
        if field is Field.R:
            return draw(fractions)
        return QComplex(draw(fractions), draw(fractions))

    polys = [Polytope([[scalar() for _ in range(d)] for _ in range(draw(st.integers(1, 3)))], field) for _ in range(n)]
    kind = draw(st.sampled_from(["uniform", "partition", "linear"]))
    coloring = None
    if kind == "uniform":
        m = UniformMatroid(draw(st.integers(1, n)), n)
    elif kind == "partition":
        cut = draw(st.integers(1, n))
        coloring = [list(range(cut)), list(range(cut, n))] if cut < n else [list(range(n))]
        m = PartitionMatroid(coloring)
    else:
        m = LinearMatroid([[scalar()] for _ in range(n)], field)
    phi = {i: tuple(scalar() for _ in range(r)) for i in range(n)}
    return Instance(field, d, k, r, polys, m, phi, coloring)


@given(instances())
def test_instance_round_trip(inst):
    spec = InstanceSpec(inst, {"generator": "test"})
    back = InstanceSpec.loads(spec.dumps())
    assert instances_equal(inst, back.instance)
    assert back.dumps() == spec.dumps()


def test_generated_round_trip_keeps_ground_truth():
    spec = generate_pierced_instance(4, PiercedParams(Field.C, 2, 1, 1, 5))
    back = InstanceSpec.loads(spec.dumps())
    assert back.ground_truth == spec.ground_truth
    assert back.provenance == spec.provenance


def test_bad_files_are_rejected():
    good = generate_pierced_instance(0).to_json()
    for mutate in (
        lambda d: d.update(schema=99),
        lambda d: d.update(field="Q"),
        lambda d: d["polytopes"][0][0].__setitem__(0, 0.5),
        lambda d: d.update(r=5),
        lambda d: d.pop("matroid"),
    ):
        data = json.loads(json.dumps(good))
        mutate(data)
        with pytest.raises(SpecError):
            InstanceSpec.from_json(data)


def test_pierced_generator_is_honest():
    for seed in range(6):
        for params in (PiercedParams(), PiercedParams(Field.R, 3, 1, 1, 6), PiercedParams(Field.C, 1, 0, 0, 5)):
            spec = generate_pierced_instance(seed, params)
            for p in spec.instance.polytopes:
                assert flat_meets_polytope(spec.ground_truth, p).feasible
            assert check_models_dependencies(spec.instance, samples=2, seed=seed).holds


def test_other_generators_are_honest():
    for seed in range(6):
        spec = generate_colorful_instance(seed, ColorfulParams(d=2))
        assert check_colorful_helly(spec.instance).verdict is Verdict.HOLDS_EXACT
        cls0 = spec.instance.coloring[0]
        assert all(flat_meets_polytope(spec.ground_truth, spec.instance.polytopes[i]).feasible for i in cls0)
        assert check_matroid_intersections(generate_kalai_meshulam_instance(seed).instance).holds
        assert check_holmsen(generate_holmsen_instance(seed, HolmsenParams(r=seed % 2)).instance).holds


def test_generators_are_deterministic():
    a = generate_kalai_meshulam_instance(11).dumps()
    assert a == generate_kalai_meshulam_instance(11).dumps()
    assert a != generate_kalai_meshulam_instance(12).dumps()


def test_hypothesis_false_colorful_is_refuted_at_the_planted_set():
    for seed in range(5):
        spec = generate_colorful_instance(seed, ColorfulParams(d=2, mode="hypothesis-false"))
        rep = check_colorful_helly(spec.instance)
        assert rep.verdict is Verdict.REFUTED
        assert spec.provenance["planted"] in rep.witness
        assert rep.certificate is not None


def test_report_body_is_deterministic():
    cfg = SuiteConfig("kalai-meshulam", [0, 1, 2])
    assert run_suite(cfg).body() == run_suite(cfg).body()


def test_parallel_report_matches_serial():
    serial = run_suite(SuiteConfig("holmsen", [0, 1, 2, 3]))
    parallel = run_suite(SuiteConfig("holmsen", [0, 1, 2, 3], jobs=2))
    assert [json.loads(x).get("outcome") for x in serial.body().splitlines()] == [
        json.loads(x).get("outcome") for x in parallel.body().splitlines()
    ]
    strip = lambda rep: [{k: v for k, v in r.items() if k not in ("timings",)} for r in rep.records]
    assert strip(serial) == strip(parallel)


def test_empty_suite():
    rep = run_suite(SuiteConfig("helly", []))
    assert rep.records == [] and rep.summary["instances"] == 0
    lines = rep.body().splitlines()
    assert len(lines) == 2 and "summary" in json.loads(lines[-1])


def test_report_lines_parse(tmp_path):
    rep = run_suite(SuiteConfig("c1", [0, 1]))
    path = tmp_path / "run.jsonl"
    rep.write_jsonl(path)
    rows = [json.loads(x) for x in path.read_text().splitlines()]
    assert "run" in rows[0] and "summary" in rows[-1]
    assert all("timings" in r for r in rows[1:-1])


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["generate", "--suite", "helly", "--count", "2", "--out", str(tmp_path)]) == 0
    f = str(tmp_path / "helly-0.json")
    assert main(["check", "--instance", f, "--condition", "helly"]) == 0
    assert main(["verify-theorem", "--instance", f]) == 0
    assert main(["find", "--instance", f, "--subset", "0"]) == 0

    bad = generate_colorful_instance(0, ColorfulParams(d=2, mode="hypothesis-false"))
    bad.save(tmp_path / "bad.json")
    assert main(["check", "--instance", str(tmp_path / "bad.json"), "--condition", "helly"]) == 1

    ring = tmp_path / "ring.json"
    InstanceSpec(
        Instance(Field.R, 1, 0, 0, [Polytope([(0,)]), Polytope([(1,)])], UniformMatroid(2, 2))
    ).save(ring)
    assert main(["find", "--instance", str(ring)]) == 1

    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert main(["check", "--instance", str(garbage), "--condition", "helly"]) == 3
    assert main(["find", "--instance", str(tmp_path / "missing.json")]) == 3
    assert main(["find", "--instance", f, "--subset", "a,b"]) == 3


def test_cli_json_output(tmp_path):
    spec = generate_pierced_instance(0)
    spec.save(tmp_path / "p.json")
    out = tmp_path / "res.json"
    assert main(["find", "--instance", str(tmp_path / "p.json"), "--format", "json", "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["status"] == "FOUND" and data["flat"] is not None


def test_cli_topology_and_homology(tmp_path):
    (tmp_path / "m.json").write_text(json.dumps({"backend": "uniform", "rank": 2, "n": 3}))
    assert main(["topology", "--matroid", str(tmp_path / "m.json"), "--sizes", "2,1,1"]) == 0
    (tmp_path / "c.json").write_text(json.dumps({"facets": [[0, 1], [1, 2], [0, 2]]}))
    out = tmp_path / "h.json"
    assert main(["homology", "--complex", str(tmp_path / "c.json"), "--format", "json", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["betti"][1] == 1
    (tmp_path / "x.json").write_text("[]")
    assert main(["homology", "--complex", str(tmp_path / "x.json")]) == 3


def test_cli_run(tmp_path):
    out = tmp_path / "run.jsonl"
    assert main(["run", "--suite", "main-theorem", "--variant", "a", "--count", "2", "--output", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 4
