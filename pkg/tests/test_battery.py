import io

import pytest

from towerglue import battery


@pytest.mark.parametrize("item", battery.CHECKS, ids=lambda c: c.name)
def test_reference_check(item):
    ok, detail = item.func()
    assert ok, detail


def test_run_prints_one_line_per_check():
    buf = io.StringIO()
    ok, results = battery.run(buf)
    lines = buf.getvalue().splitlines()
    assert ok and len(lines) == len(results) == len(battery.CHECKS)
    assert all(line.startswith("PASS") for line in lines)
