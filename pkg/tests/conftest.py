import sys
from pathlib import Path

import pytest

from duolang.context import Context
from duolang.values import Lang

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
sys.path.insert(0, str(TESTS))


def run(src, file="t.php", lang=None, seed=0):
    """Run a program the way the CLI does; returns (status, stdout, stderr)."""
    ctx = Context(seed=seed)
    status = ctx.run(src, file, lang)
    return status, ctx.output(), ctx.err.getvalue()


def php(src, file="t.php"):
    """Output of a PHP (or composed PHP-hosted) program that must succeed."""
    status, out, err = run(src, file, Lang.PHP)
    assert status == 0, err
    return out


def py(src, file="t.py"):
    status, out, err = run(src, file, Lang.PY)
    assert status == 0, err
    return out


def composed_fixtures():
    return sorted(p for p in FIXTURES.iterdir() if p.suffix in (".php", ".py"))


@pytest.fixture
def ctx():
    c = Context()
    with c.activate():
        yield c


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # keep each phase's report on the item so fixtures can see the outcome
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)
