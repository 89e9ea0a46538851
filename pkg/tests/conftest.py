"""Shared pytest wiring for the suite."""

_config = None


def pytest_configure(config):
    global _config
    _config = config


def emit_line(text):
    """Write ``text`` to the live terminal even while output is captured.

    The acceptance gate uses this for its status lines so they show up in
    plain ``pytest -v`` logs without ``-s``. The reporter is looked up per
    call because it registers after conftest configuration, and capture is
    suspended for the write because the reporter shares the captured
    stdout fd.
    """
    reporter = None
    if _config is not None:
        reporter = _config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None:
        print(text, flush=True)
        return
    capman = _config.pluginmanager.get_plugin("capturemanager")
    if capman is not None:
        with capman.global_and_fixture_disabled():
            reporter.ensure_newline()
            reporter.write_line(text)
    else:
        reporter.ensure_newline()
        reporter.write_line(text)
