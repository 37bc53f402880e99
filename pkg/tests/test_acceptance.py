"""Runs the full acceptance suite and prints one pass/fail line per check."""

from autoecon import acceptance


def test_acceptance_suite():
    results = acceptance.run_checks()
    for result in results:
        print(result.line())
    failed = [r.name for r in results if not r.passed]
    assert not failed, f"acceptance checks failed: {', '.join(failed)}"
