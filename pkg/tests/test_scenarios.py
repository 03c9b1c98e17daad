import math

import numpy as np
import pytest

import helpers
from entroscope import (
    MeasurementSetup,
    ScenarioConfig,
    ValidationError,
    epr_singlet,
    ghz,
    joint_entropies,
    orthodox_reference,
    premeasure,
    run_cat,
    run_chsh,
    run_epr_measure,
    run_epr_pair,
    run_scenario,
)
from entroscope.entropy import PartitionSpec
from entroscope.measurement import TSIRELSON_BOUND
from entroscope.report import report_document, serialize_document
from entroscope.scenarios import ORTHODOX_LABEL

ORTHOGONAL = math.pi / 2


def test_epr_pair_report():
    rep = run_epr_pair()
    joints = rep.diagram.venn.joints
    atoms = rep.diagram.venn.atoms
    assert joints[("L",)] == pytest.approx(1.0, abs=1e-9)
    assert joints[("R",)] == pytest.approx(1.0, abs=1e-9)
    assert joints[("L", "R")] == pytest.approx(0.0, abs=1e-9)
    assert atoms[("L",)] == pytest.approx(-1.0, abs=1e-9)
    assert atoms[("R",)] == pytest.approx(-1.0, abs=1e-9)
    assert atoms[("L", "R")] == pytest.approx(2.0, abs=1e-9)
    assert len(rep.diagram.audit.monotonicity_violated) == 2


def test_epr_measure_parallel():
    rep = run_epr_measure(0.0, 0.0)
    dev = rep.reduced.venn.atoms
    assert dev[("A1",)] == pytest.approx(0.0, abs=1e-9)
    assert dev[("A2",)] == pytest.approx(0.0, abs=1e-9)
    assert dev[("A1", "A2")] == pytest.approx(1.0, abs=1e-9)
    assert rep.ternary_center == pytest.approx(0.0, abs=1e-9)
    assert rep.q_devices_mutual == pytest.approx(2.0, abs=1e-9)
    assert rep.orthodox is not None and rep.orthodox["case"] == "parallel"


def test_epr_measure_orthogonal():
    for t1, t2 in ((0.0, ORTHOGONAL), (ORTHOGONAL, 0.0)):
        rep = run_epr_measure(t1, t2)
        dev = rep.reduced.venn.atoms
        assert dev[("A1",)] == pytest.approx(1.0, abs=1e-9)
        assert dev[("A2",)] == pytest.approx(1.0, abs=1e-9)
        assert dev[("A1", "A2")] == pytest.approx(0.0, abs=1e-9)
        assert rep.ternary_center == pytest.approx(0.0, abs=1e-9)
        assert rep.orthodox is not None and rep.orthodox["case"] == "orthogonal"


def test_epr_measure_intermediate_angle():
    rep = run_epr_measure(0.0, math.pi / 4)
    mutual = rep.reduced.venn.atoms[("A1", "A2")]
    expect = 1.0 - helpers.binary_entropy(math.sin(math.pi / 8) ** 2)
    assert mutual == pytest.approx(expect, abs=1e-9)
    assert mutual == pytest.approx(0.399123963307, abs=1e-9)
    assert 0.0 < mutual < 1.0
    assert rep.ternary_center == pytest.approx(0.0, abs=1e-9)
    assert rep.orthodox is None


def test_epr_measure_full_diagram_matches_independent_route():
    t1, t2 = 0.6, 1.2
    rep = run_epr_measure(t1, t2)
    setup = MeasurementSetup.of((0, t1, "A1"), (1, t2, "A2"))
    rho = premeasure(epr_singlet(), setup).to_density()
    factor_map = {"Q": (0, 1), "A1": (2,), "A2": (3,)}
    for subset, val in rep.diagram.venn.joints.items():
        keep = [f for name in subset for f in factor_map[name]]
        red = helpers.brute_partial_trace(rho.matrix, (2, 2, 2, 2), keep)
        assert val == pytest.approx(helpers.entropy_oracle(red), abs=1e-9), subset


def test_epr_measure_normalizes_angles():
    rep = run_epr_measure(math.pi + 0.25, -math.pi / 4)
    assert rep.parameters["theta1"] == pytest.approx(0.25, abs=1e-12)
    assert rep.parameters["theta2"] == pytest.approx(3 * math.pi / 4, abs=1e-12)


def test_orthodox_attachment_tolerance():
    assert run_epr_measure(1e-7, 0.0).orthodox is not None
    assert run_epr_measure(1e-3, 0.0).orthodox is None
    assert run_epr_measure(0.0, ORTHOGONAL - 1e-7).orthodox is not None


def test_orthodox_reference_blocks():
    par = orthodox_reference("parallel")
    assert par["label"] == ORTHODOX_LABEL
    assert par["consistent"] is False
    assert par["joints"][("Q",)] == pytest.approx(2.0)
    assert par["joints"][("A1",)] == pytest.approx(1.0)
    assert par["joints"][("A2",)] == pytest.approx(1.0)
    assert par["atoms"][("Q", "A1", "A2")] == pytest.approx(1.0)

    orth = orthodox_reference("orthogonal")
    j = orth["joints"]
    dev_mutual = j[("A1",)] + j[("A2",)] - j[("A1", "A2")]
    assert dev_mutual == pytest.approx(0.0)

    for block in (par, orth):
        assert helpers.resum_joints(block["atoms"]) == block["joints"]
        assert block["warning"]

    with pytest.raises(ValidationError):
        orthodox_reference("diagonal")


def test_sampled_block_contents():
    rep = run_epr_measure(0.0, 0.0, shots=4000, seed=2)
    s = rep.sampled
    assert s["shots"] == 4000 and s["seed"] == 2
    assert set(s["counts"]) == {"00", "01", "10", "11"}
    assert s["counts"]["00"] == 0 and s["counts"]["11"] == 0
    assert s["counts"]["01"] + s["counts"]["10"] == 4000
    assert sum(s["frequencies"].values()) == pytest.approx(1.0, abs=1e-12)
    assert s["exact_mutual"] == pytest.approx(1.0, abs=1e-9)
    assert s["mutual"] == pytest.approx(1.0, abs=0.05)


def test_sampled_seed_defaults_to_zero():
    rep = run_epr_measure(0.0, 0.0, shots=10)
    assert rep.seed == 0
    assert rep.sampled["seed"] == 0


@pytest.mark.parametrize("grouping", ["atom", "atom_gamma"])
def test_cat_with_observer(grouping):
    rep = run_cat(with_observer=True, grouping=grouping)
    pair = rep.reduced.venn.atoms
    assert pair[("cat",)] == pytest.approx(0.0, abs=1e-9)
    assert pair[("observer",)] == pytest.approx(0.0, abs=1e-9)
    assert pair[("cat", "observer")] == pytest.approx(1.0, abs=1e-9)
    assert rep.ternary_center == pytest.approx(0.0, abs=1e-9)
    assert rep.q_devices_mutual == pytest.approx(2.0, abs=1e-9)
    # merging any grouping of the chain reproduces the three-party GHZ numbers
    ghz_joints = joint_entropies(ghz(3).to_density(), PartitionSpec.of(A=[0], B=[1], C=[2]))
    by_size = {len(s): v for s, v in ghz_joints.items()}
    for subset, val in rep.diagram.venn.joints.items():
        assert val == pytest.approx(by_size[len(subset)], abs=1e-9), subset


@pytest.mark.parametrize("grouping", ["atom", "atom_gamma"])
def test_cat_without_observer(grouping):
    rep = run_cat(with_observer=False, grouping=grouping)
    assert rep.diagram.venn.joints[("cat",)] == pytest.approx(1.0, abs=1e-9)
    assert rep.q_devices_mutual == pytest.approx(2.0, abs=1e-9)
    assert rep.ternary_center is None and rep.reduced is None


def test_cat_rejects_unknown_grouping():
    with pytest.raises(ValidationError, match="grouping"):
        run_cat(with_observer=True, grouping="observer")


def test_chsh_canonical_block():
    rep = run_chsh()
    block = rep.chsh
    assert block["value"] == pytest.approx(-2.0 * math.sqrt(2.0), abs=1e-9)
    assert block["abs_value"] == pytest.approx(TSIRELSON_BOUND, abs=1e-9)
    assert block["classical_bound"] == 2.0
    assert block["tsirelson_bound"] == pytest.approx(TSIRELSON_BOUND, abs=1e-15)
    assert block["violates_classical"] is True
    assert "scan" not in block


def test_chsh_degenerate_angles_do_not_violate():
    rep = run_chsh(angles=(0.3, 0.3, 1.1, 1.1))
    assert rep.chsh["violates_classical"] is False


def test_chsh_scan_reproducible_and_bounded():
    a = run_chsh(scan_points=200, seed=12)
    b = run_chsh(scan_points=200, seed=12)
    assert a.chsh["scan"] == b.chsh["scan"]
    assert a.chsh["scan"]["points"] == 200
    assert a.chsh["scan"]["max_abs_value"] <= TSIRELSON_BOUND + 1e-9


def test_chsh_validates_angle_count():
    with pytest.raises(ValidationError, match="4 angles"):
        run_chsh(angles=(0.0, 1.0, 2.0))


def test_run_scenario_dispatch():
    assert run_scenario(ScenarioConfig(scenario_id="epr_pair")).scenario == "epr_pair"
    rep = run_scenario(ScenarioConfig(scenario_id="epr_measure", theta1=0.0, theta2=0.0))
    assert rep.scenario == "epr_measure"
    assert run_scenario(ScenarioConfig(scenario_id="cat")).scenario == "cat"
    assert run_scenario(ScenarioConfig(scenario_id="chsh")).scenario == "chsh"


def test_scenario_config_validation():
    with pytest.raises(ValidationError, match="unknown scenario"):
        ScenarioConfig(scenario_id="bell")
    with pytest.raises(ValidationError, match="theta"):
        ScenarioConfig(scenario_id="epr_measure")
    with pytest.raises(ValidationError, match="shots"):
        ScenarioConfig(scenario_id="epr_pair", shots=-1)


def test_reports_are_reproducible():
    def doc():
        rep = run_epr_measure(0.3, 1.1, shots=500, seed=9)
        return serialize_document(report_document(rep))

    assert doc() == doc()
