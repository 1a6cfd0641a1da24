import pytest

from zrec import corpus

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture(params=corpus.REDUCED_CORPUS)
def corpus_matrix(request):
    return corpus.BUILTIN[request.param]()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
