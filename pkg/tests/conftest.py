import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Emit the FAIL counterpart of the acceptance suite's PASS lines."""
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and rep.failed and item.name.startswith("test_criterion_"):
        number = item.name.split("_")[2]
        label = "_".join(item.name.split("_")[3:])
        print(f"\nACCEPTANCE {int(number):2d} {label}: FAIL")
