from hypothesis import HealthCheck, settings

import suite_log

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

suite_log.install()


def pytest_configure(config):
    config.addinivalue_line("markers", "runs_last: moved to the end of the session")


def pytest_collection_modifyitems(session, config, items):
    items.sort(key=lambda item: item.get_closest_marker("runs_last") is not None)


def pytest_terminal_summary(terminalreporter):
    if not suite_log.CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(suite_log.CRITERIA):
        passed, detail = suite_log.CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} {detail}")
