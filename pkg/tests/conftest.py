_config = None


def pytest_configure(config):
    global _config
    _config = config


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if _config is None or report.when != "call":
        return
    if "test_acceptance" not in report.nodeid:
        return
    terminal = _config.pluginmanager.get_plugin("terminalreporter")
    if terminal is None:
        return
    name = report.nodeid.split("::")[-1]
    terminal.write_line(f" [acceptance] {name}: {'PASS' if report.passed else 'FAIL'}")
