"""Acceptance gate: every built-in acceptance check must pass.

Each check encodes one promised behavior with its tolerance — search-cost
scaling fits, regret bounds with explicit constants, Monte Carlo geometry
at 99% confidence, exhaustive deviation-gain audits, and lemma-level
property suites.  Details of a failure are surfaced in the assertion
message verbatim.
"""

import pytest

from stacklab.harness import acceptance


@pytest.mark.parametrize(
    "check", acceptance.ALL_CHECKS,
    ids=lambda fn: fn.__name__.removeprefix("check_"))
def test_acceptance(check):
    result = check()
    assert result["passed"], f"{result['name']}: {result['detail']}"
