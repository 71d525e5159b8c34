import pytest

import nn.recurrent
from core import InvalidSpec
from main import main
from nn import GRADCHECK_THRESHOLD, Architecture, ModelSpec, grad_check, small_spec
from nn.tensor import _result
from services import run_gradcheck


@pytest.mark.parametrize("arch", list(Architecture))
def test_every_architecture_passes(arch):
    for seed in range(5):
        assert grad_check(small_spec(arch), seed) < GRADCHECK_THRESHOLD


def test_large_specs_rejected():
    with pytest.raises(InvalidSpec):
        grad_check(ModelSpec(Architecture.MLP, hidden_size=64), 0)


def _double_hidden_gradient(monkeypatch):
    original = nn.recurrent.lstm_cell

    def corrupted(x_t, h_prev, c_prev, params):
        h, c = original(x_t, h_prev, c_prev, params)
        return _result(h.data, (h,), lambda g: h.accumulate(2.0 * g), "corrupted"), c

    monkeypatch.setattr(nn.recurrent, "lstm_cell", corrupted)


def test_corrupted_backward_is_caught(monkeypatch):
    _double_hidden_gradient(monkeypatch)
    results = {r.architecture: r for r in run_gradcheck(seeds=(0,))}
    assert not results["LSTM"].passed
    assert results["GRU"].passed
    assert results["LSTM"].line().endswith("FAIL")


def test_cli_gradcheck_exit_codes(monkeypatch, capsys):
    assert main(["gradcheck"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split()[0] for line in lines] == ["MLP", "LSTM", "GRU", "CNN1D"]
    assert all(line.endswith("PASS") for line in lines)

    _double_hidden_gradient(monkeypatch)
    assert main(["gradcheck"]) != 0
    assert "LSTM" in capsys.readouterr().out
