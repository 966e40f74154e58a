import pytest
from hypothesis import settings

from weylcalc.cartan import E6, Weight, root_as_weight
from weylcalc.weyl import apply_word

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")

ACCEPTANCE_LINES: list[str] = []


def inversion_count(word, data=E6) -> int:
    """Positive roots sent to negative roots by the Weyl element ``word``."""
    n = 0
    for alpha in data.positive_roots:
        image = apply_word(word, root_as_weight(alpha, data), data)
        # back to root coordinates: solve via the simple-root columns
        coeffs = _root_coords(image, data)
        if all(c <= 0 for c in coeffs):
            n += 1
    return n


_BY_WEIGHT: dict = {}


def _root_coords(w: Weight, data):
    by_weight = _BY_WEIGHT.get(data.cartan)
    if by_weight is None:
        by_weight = _BY_WEIGHT[data.cartan] = {root_as_weight(a, data).ints(): a.coeffs for a in data.positive_roots}
    key = w.ints()
    if key in by_weight:
        return by_weight[key]
    neg = tuple(-x for x in key)
    return tuple(-c for c in by_weight[neg])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES
