import math

import pytest

try:
    import motionalqec as mq  # installed package
except ImportError:
    import _motionalqec as mq  # in-tree build via PYTHONPATH


def full_space():
    return mq.SpaceSpec([8, 8], 3)


def test_code_states_are_normalized_and_orthogonal():
    code = mq.build_code(full_space())
    states = list(code.h0) + list(code.h1x) + list(code.h1y)
    for s in states:
        assert s.norm() == pytest.approx(1.0, abs=1e-12)
    amps = [s.amplitudes() for s in states]
    for i in range(len(amps)):
        for j in range(i):
            ip = sum(a.conjugate() * b for a, b in zip(amps[i], amps[j]))
            assert abs(ip) < 1e-12


def test_encode_decode_round_trip():
    code = mq.build_code(full_space())
    q = mq.LogicalQubit(0.6, 0.8j)
    psi = mq.encode(q, code)
    cp, cm, residual = mq.decode(psi, code.h0)
    assert cp == pytest.approx(0.6)
    assert cm == pytest.approx(0.8j)
    assert residual < 1e-12


def test_detect_and_restore_invert_a_jump():
    code = mq.build_code(full_space())
    q = mq.LogicalQubit(math.sqrt(0.3), math.sqrt(0.7))
    psi = mq.encode(q, code)
    jumped = mq.jump(psi, 0)
    outcome = mq.detect(jumped, code, seed=1)
    assert outcome.x_jump and not outcome.y_jump
    restored = mq.reset_electronic(mq.restore(outcome.post_state, outcome))
    assert mq.fidelity(psi, restored) == pytest.approx(1.0, abs=1e-9)


def test_protocol_runs_and_is_deterministic():
    cfg = mq.ProtocolConfig()
    cfg.gamma = 1.0
    cfg.tau = 0.05
    cfg.cycles = 10
    cfg.seed = 12
    q = mq.LogicalQubit(1.0)
    a = mq.run_protocol(q, cfg)
    b = mq.run_protocol(q, cfg)
    assert [c.fidelity for c in a.cycles] == [c.fidelity for c in b.cycles]
    assert len(a.cycles) == 10


def test_timescales_from_preset():
    rows = mq.timescale_report(mq.load_preset("be_plus"))
    by_name = {r.name: r for r in rows}
    assert by_name["photon_probability_100us"].computed == pytest.approx(
        0.998, abs=1e-3
    )
    assert by_name["rwa_ratio"].computed == pytest.approx(0.01, abs=1e-9)


def test_state_json_round_trip():
    code = mq.build_code(full_space())
    text = code.h0[0].to_json()
    back = mq.state_from_json(text)
    assert mq.fidelity(back, code.h0[0]) == pytest.approx(1.0)
