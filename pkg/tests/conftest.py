from hypothesis import settings

import support

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if not support.CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(support.CRITERIA):
        terminalreporter.write_line(support.CRITERIA[k])
