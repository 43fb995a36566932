"""End-to-end tests of the command-line interface.

Includes a mutation smoke test: corrupting one derived-operator entry
must trip the determinant identity check by name, proving the battery
actually exercises the identity rather than restating it.
"""

import json

import numpy as np
import pytest

from ranktwo import cli
from ranktwo.antilinear import AntilinearOp
from ranktwo.channel import RankTwoChannel, save_channel
from ranktwo.sampling import random_canonical_tp
from ranktwo.verify import check_determinant_identity


@pytest.fixture
def channel_file(tmp_path):
    rng = np.random.default_rng(77)
    path = tmp_path / "channel.json"
    save_channel(random_canonical_tp(rng), path)
    return str(path)


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_concurrence_command(capsys, channel_file):
    argv = ["concurrence", "--channel", channel_file, "--state", "0.2,0.1,-0.4"]
    code, out = run(capsys, argv)
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "closed_2x2"
    assert 0.0 <= payload["C"] <= 2.0
    assert payload["separable_vectors"] is not None
    # byte-identical on repetition
    code2, out2 = run(capsys, argv)
    assert code2 == 0 and out2 == out


def test_state_as_matrix_entries(capsys, channel_file):
    code, out = run(
        capsys,
        ["concurrence", "--channel", channel_file, "--state", "0.5,0,0,0.5"],
    )
    assert code == 0
    bloch = json.loads(out)["C"]
    code, out = run(
        capsys, ["concurrence", "--channel", channel_file, "--state", "0,0,0"]
    )
    assert json.loads(out)["C"] == bloch


def test_bad_inputs_exit_two(capsys, tmp_path, channel_file):
    code, _ = run(capsys, ["concurrence", "--channel", str(tmp_path / "missing.json"), "--state", "0,0,0"])
    assert code == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _ = run(capsys, ["concurrence", "--channel", str(broken), "--state", "0,0,0"])
    assert code == 2
    code, _ = run(capsys, ["concurrence", "--channel", channel_file, "--state", "1,2"])
    assert code == 2


def test_domain_errors_exit_three(capsys, tmp_path, channel_file):
    # Bloch vector outside the ball
    code, _ = run(capsys, ["concurrence", "--channel", channel_file, "--state", "1,1,1"])
    assert code == 3
    # geometry level beyond the attainable maximum
    code, _ = run(
        capsys,
        [
            "geometry",
            "--channel",
            channel_file,
            "--levels",
            "5.0",
            "--out",
            str(tmp_path / "geo"),
        ],
    )
    assert code == 3


def test_entanglement_command(capsys, channel_file):
    code, out = run(
        capsys,
        ["entanglement", "--channel", channel_file, "--state", "0.1,0.0,0.3"],
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["y_plus"] + payload["y_minus"] - payload["trace_out"]) < 1e-12
    assert payload["base"] == 2.0


def test_holevo_command(capsys, channel_file):
    code, out = run(capsys, ["holevo", "--channel", channel_file, "--state", "0,0,0.5"])
    assert code == 0
    assert json.loads(out)["method"] == "state"

    code, out = run(capsys, ["holevo", "--channel", channel_file])
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "restricted"
    assert 0.0 <= payload["chi_star"] <= 1.0


def test_geometry_command(capsys, tmp_path, channel_file):
    outdir = tmp_path / "geo"
    code, out = run(
        capsys,
        ["geometry", "--channel", channel_file, "--out", str(outdir), "--angles", "8", "--sweeps", "3"],
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["levels"]) == 3
    for entry in payload["levels"]:
        f = outdir / entry["file"]
        assert f.exists()
        header = f.read_text().splitlines()[0]
        assert header == "rx,ry,rz,C"


def test_verify_command(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out = run(
        capsys, ["verify", "--scale", "0.06", "--seed", "11", "--out", str(report_path)]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"]
    assert len(payload["checks"]) == 15
    assert json.loads(report_path.read_text()) == payload


def test_mutation_trips_determinant_check(monkeypatch):
    orig = RankTwoChannel.derived_kraus.fget

    def corrupted(self):
        pairs = orig(self)
        j, k, t = pairs[0]
        m = t.matrix.copy()
        m[0, 0] = -m[0, 0]
        return [(j, k, AntilinearOp(m))] + list(pairs[1:])

    monkeypatch.setattr(RankTwoChannel, "derived_kraus", property(corrupted))
    rng = np.random.default_rng([42, 0])
    result = check_determinant_identity(rng, 20, 2.0)
    assert result.name == "determinant_identity"
    assert not result.passed
    assert result.max_error > 1e-3
