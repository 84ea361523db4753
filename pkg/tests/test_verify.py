from __future__ import annotations

import pytest

from tone import verify as vf
from tone.errors import DomainError


@pytest.mark.parametrize("suite", [s for s in vf.SUITES if s != "acceptance"])
def test_invariant_suites_pass(suite):
    outcomes = vf.run([suite])
    assert outcomes and all(o.suite == suite for o in outcomes)
    assert all(o.passed for o in outcomes), [(o.name, o.detail) for o in outcomes if not o.passed]


def test_crashing_check_counts_as_failure():
    def boom():
        raise RuntimeError("broken")

    out = vf.Check("boom", "growth", boom).run()
    assert not out.passed and "broken" in out.detail


def test_negative_control_profile_is_caught():
    from tone import growth as gr

    assert not gr.check_monotonicity(vf.negative_control_profile()).passed


def test_unknown_suite():
    with pytest.raises(DomainError):
        vf.run(["plotting"])
