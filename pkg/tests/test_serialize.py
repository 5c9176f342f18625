import json

import numpy as np
import pytest

from clonelab.errors import DimensionMismatchError
from clonelab.serialize import from_dict, from_json, to_dict, to_json
from clonelab.tensor import Ket, Operator, haar_state, max_entangled


def test_operator_roundtrip_exact():
    op = max_entangled(3).dm() * 3
    back = from_json(to_json(op))
    assert isinstance(back, Operator)
    assert back.dims == (3, 3)
    np.testing.assert_array_equal(back.entries, op.entries)
    assert back.hermitian


def test_ket_roundtrip_exact():
    psi = haar_state(4, 2)
    back = from_json(to_json(psi))
    assert isinstance(back, Ket)
    np.testing.assert_array_equal(back.amplitudes, psi.amplitudes)


def test_layout_is_row_major():
    m = np.array([[1, 2j], [-2j, 5]])
    obj = json.loads(to_json(Operator(m, (2,), hermitian=True)))
    assert obj == {"dims": [2], "re": [[1.0, 0.0], [0.0, 5.0]], "im": [[0.0, 2.0], [-2.0, 0.0]]}


def test_ket_accepts_column():
    k = from_dict({"dims": [2], "re": [[1.0], [0.0]], "im": [[0.0], [0.0]]})
    assert isinstance(k, Ket)


def test_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        from_dict({"dims": [2, 2], "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})
