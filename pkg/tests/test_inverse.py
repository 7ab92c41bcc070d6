"""Inverse chain: peeling filter+sum passes off the power function."""

import pytest

from moessner.errors import PreconditionError
from moessner.inverse import EnumeratedFn, check_roundtrip, inverse_step, run_inverse, seed
from moessner.process import forward_intermediate


def test_enumerated_fn_memoizes():
    calls = []

    def probe(i):
        calls.append(i)
        return i * i

    f = EnumeratedFn(probe, tag="probe")
    assert f(3) == 9
    assert f(3) == 9
    assert calls == [3]
    assert f.prefix(4) == [0, 1, 4, 9]
    assert sorted(calls) == [0, 1, 2, 3]
    assert "probe" in repr(f)
    with pytest.raises(PreconditionError):
        f(-1)


def test_seed():
    assert seed(2).prefix(5) == [1, 4, 9, 16, 25]
    assert seed(0).prefix(3) == [1, 1, 1]
    with pytest.raises(PreconditionError):
        seed(-1)


def test_inverse_step_range_check():
    f = seed(2)
    with pytest.raises(PreconditionError):
        inverse_step(f, 2, 2)
    with pytest.raises(PreconditionError):
        inverse_step(f, 5, 2)


def test_run_inverse_chains():
    assert run_inverse(2, 4) == [
        [1, 4, 9, 16],
        [1, 2, 3, 4],
        [1, 1, 1, 1],
    ]
    assert run_inverse(3, 4) == [
        [1, 8, 27, 64],
        [1, 3, 7, 12],
        [1, 2, 3, 4],
        [1, 1, 1, 1],
    ]
    assert run_inverse(4, 4) == [
        [1, 16, 81, 256],
        [1, 4, 15, 32],
        [1, 3, 6, 11],
        [1, 2, 3, 4],
        [1, 1, 1, 1],
    ]
    assert run_inverse(3, 5)[1] == [1, 3, 7, 12, 19]
    assert run_inverse(0, 4) == [[1, 1, 1, 1]]
    with pytest.raises(PreconditionError):
        run_inverse(3, 0)


def test_inverse_stages_match_forward_stages():
    for n in range(5):
        stages = run_inverse(n, 12)
        assert len(stages) == n + 1
        for t, prefix in enumerate(stages):
            assert prefix == [forward_intermediate(n, t, x) for x in range(12)]


def test_check_roundtrip():
    for n in range(5):
        assert check_roundtrip(n, 16)
