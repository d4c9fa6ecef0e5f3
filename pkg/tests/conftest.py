import pytest

from afpath import builtin_diagram


@pytest.fixture(scope="session")
def car():
    return builtin_diagram("car")


@pytest.fixture(scope="session")
def pascal():
    return builtin_diagram("pascal")


@pytest.fixture(scope="session")
def fibonacci():
    return builtin_diagram("fibonacci")


@pytest.fixture(scope="session")
def uhf3():
    return builtin_diagram("uhf3")


@pytest.fixture(scope="session")
def builtins(car, pascal, fibonacci, uhf3):
    return {"car": car, "pascal": pascal, "fibonacci": fibonacci, "uhf3": uhf3}
