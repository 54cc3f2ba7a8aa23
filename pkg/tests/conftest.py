import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    labels = [label for label, _ in mod.CHECKS]
    if not any(label in mod.RESULTS for label in labels):
        return
    terminalreporter.section("acceptance criteria")
    for label in labels:
        if label not in mod.RESULTS:
            terminalreporter.write_line(f"criterion {label:>3}: NOT RUN")
            continue
        ok, detail = mod.RESULTS[label]
        terminalreporter.write_line(f"criterion {label:>3}: {'PASS' if ok else 'FAIL'}  {detail}")
