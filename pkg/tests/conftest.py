import contextlib
import time

import pytest


@pytest.fixture
def criterion(capsys):
    """Context manager printing one PASS/FAIL line for an acceptance criterion.

    Output bypasses capture so the lines appear in a plain ``pytest`` run.
    """

    @contextlib.contextmanager
    def report(number: int, title: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            with capsys.disabled():
                print(f"\nFAIL criterion {number}: {title} ({type(exc).__name__}: {exc})")
            raise
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\nPASS criterion {number}: {title} [{elapsed:.2f}s]")

    return report
