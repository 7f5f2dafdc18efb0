import numpy as np
import pytest

from nnjsd import ValidationError
from nnjsd.io import read_distribution, write_distribution


def test_blank_lines_ignored(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("0.25\n\n  0.75  \n\n", encoding="utf-8")
    assert list(read_distribution(f)) == [0.25, 0.75]


def test_round_trip_exact(tmp_path):
    p = np.random.default_rng(0).dirichlet(np.ones(17))
    write_distribution(tmp_path / "p", p)
    assert np.array_equal(read_distribution(tmp_path / "p"), p)


@pytest.mark.parametrize("text", ["0.5\nabc\n", "0.5\n-0.1\n", "nan\n", "\n\n"])
def test_rejects(tmp_path, text):
    f = tmp_path / "bad"
    f.write_text(text, encoding="utf-8")
    with pytest.raises(ValidationError):
        read_distribution(f)
