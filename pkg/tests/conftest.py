import pytest

from loopforge import cyclic_loop, klein_four, n5_loop, s_loop_context, validate_table


@pytest.fixture
def z3():
    return cyclic_loop(3)


@pytest.fixture
def z4():
    return cyclic_loop(4)


@pytest.fixture
def z5():
    return cyclic_loop(5)


@pytest.fixture
def klein():
    return klein_four()


@pytest.fixture
def n5():
    return n5_loop()


@pytest.fixture
def z4_ctx(z4):
    return s_loop_context(z4, [0, 2])


@pytest.fixture
def n5_ctx(n5):
    return s_loop_context(n5, [0, 1])


@pytest.fixture
def loop_3x3_shifted():
    # identity element is 2, not 0
    return validate_table([[1, 2, 0], [2, 0, 1], [0, 1, 2]])
