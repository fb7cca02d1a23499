import pytest

from algebra.catalog import (
    function_algebra, group_algebra, parse_builtin, small_quantum_sl2, sweedler_h4, sweedler_twist, taft,
)
from algebra.groups import named_group

# every builtin except small-quantum-sl2, which has its own slow tests
BUILTINS = [
    "group-algebra:Z1", "group-algebra:Z2", "group-algebra:Z3", "group-algebra:Z4", "group-algebra:Z5",
    "group-algebra:Z6", "group-algebra:S3", "group-algebra:D4", "group-algebra:Q8", "group-algebra:Z2xZ2",
    "function-algebra:Z4", "function-algebra:Z6", "function-algebra:S3", "function-algebra:D4",
    "function-algebra:Q8", "function-algebra:Z2xZ2",
    "sweedler", "taft:2", "taft:3", "sweedler-twist",
]


@pytest.fixture(scope="session", params=BUILTINS)
def builtin(request):
    return parse_builtin(request.param)


@pytest.fixture(scope="session")
def h4():
    return sweedler_h4()


@pytest.fixture(scope="session")
def h4_twisted():
    return sweedler_twist()


@pytest.fixture(scope="session")
def taft3():
    return taft(3)


@pytest.fixture(scope="session")
def sl2():
    return small_quantum_sl2(3)


@pytest.fixture(scope="session")
def kQ8():
    return group_algebra(named_group("Q8"))


@pytest.fixture(scope="session")
def kS3():
    return group_algebra(named_group("S3"))


@pytest.fixture(scope="session")
def kD4():
    return group_algebra(named_group("D4"))


@pytest.fixture(scope="session")
def funQ8():
    return function_algebra(named_group("Q8"))


@pytest.fixture(scope="session")
def funS3():
    return function_algebra(named_group("S3"))


@pytest.fixture(scope="session")
def funD4():
    return function_algebra(named_group("D4"))


@pytest.fixture(scope="session")
def kZ3():
    return group_algebra(named_group("Z3"))
