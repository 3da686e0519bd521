import pytest

from masseyx import catalog
from masseyx.code import dual
from masseyx.scheme import make_scheme


@pytest.fixture(scope="session")
def codes():
    return {name: catalog.load(name).code for name in catalog.names()}


@pytest.fixture(scope="session")
def toy(codes):
    return make_scheme(codes["toy6"], 2)


@pytest.fixture(scope="session")
def ex1(codes):
    return make_scheme(dual(codes["c1_ternary"]), 2)


@pytest.fixture(scope="session")
def ham2(codes):
    return make_scheme(codes["hamming8"], 2)


@pytest.fixture(scope="session")
def ham3(codes):
    return make_scheme(codes["hamming8"], 3)


@pytest.fixture(scope="session")
def golay2(codes):
    return make_scheme(codes["golay24"], 2)


def small_scheme_specs():
    """Every catalog scheme with at most 12 participants, as (code spec, l)."""
    return [
        ("toy6", 1),
        ("toy6", 2),
        ("c1_ternary", 1),
        ("c1_ternary", 2),
        ("c1_ternary", 3),
        ("dual:c1_ternary", 1),
        ("dual:c1_ternary", 2),
        ("dual:toy6", 1),
        ("hamming8", 1),
        ("hamming8", 2),
        ("hamming8", 3),
    ]


@pytest.fixture(scope="session")
def small_schemes(codes):
    out = {}
    for spec, l in small_scheme_specs():
        C = dual(codes[spec[5:]]) if spec.startswith("dual:") else codes[spec]
        out[(spec, l)] = make_scheme(C, l)
    return out


# --- acceptance reporting ---------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    num, title = marker.args
    _ACCEPTANCE[num] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, status, secs = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}  ({secs:.2f}s)")
