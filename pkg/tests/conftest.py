import numpy as np
import pytest

from chronopyr.core import ArraySequence, TimeGrid

STUB_ENCODER = """\
import sys

data = sys.stdin.buffer.read()
with open(sys.argv[1], "wb") as fh:
    fh.write(b"VID0" + len(data).to_bytes(8, "big") + data)
"""


@pytest.fixture
def stub_encoder(tmp_path):
    """Command template for a fake video encoder that wraps raw frames in a
    tiny deterministic container."""
    script = tmp_path / "stub_encoder.py"
    script.write_text(STUB_ENCODER)
    return f"python3 {script} {{out}}"


@pytest.fixture
def random_video():
    def make(n=120, w=4, h=3, c=1, seed=0, period_ns=1_000_000_000, missing=(),
             integral=False):
        rng = np.random.default_rng(seed)
        data = rng.uniform(0, 255, (n, h, w, c))
        if integral:
            data = np.rint(data)
        grid = TimeGrid(0, period_ns, n, missing)
        return ArraySequence(grid, data.astype(np.float32))
    return make
