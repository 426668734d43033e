import pytest

from fibseries import expand, product_expand_oracle


def naive_fibs(limit):
    """F_2, F_3, ... up to limit, from the recurrence with F_0 = 0, F_1 = 1."""
    a, b = 0, 1
    out = []
    while True:
        a, b = b, a + b
        if a > limit:
            return out[1:]  # drop F_1, keep F_2 = 1
        out.append(a)


def naive_product(N):
    """Truncated product by plain list arithmetic; shares no code with the package."""
    coeffs = [1] + [0] * N
    for f in naive_fibs(N):
        new = coeffs[:]
        for i in range(f, N + 1):
            new[i] -= coeffs[i - f]
        coeffs = new
    return coeffs


@pytest.fixture(scope="session")
def expansion_1e5():
    return expand(10**5)


@pytest.fixture(scope="session")
def expansion_2e5():
    return expand(2 * 10**5)


@pytest.fixture(scope="session")
def product_2e5():
    return product_expand_oracle(2 * 10**5)


_ACCEPTANCE = {}


def record_criterion(number, text, passed):
    _ACCEPTANCE.setdefault(number, [text, True])
    _ACCEPTANCE[number][1] &= passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        text, passed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:>2}. {text}")
