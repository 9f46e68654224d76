import pytest

from etf_forge.core.config import Settings
from etf_forge.services import construct, gram_analysis


@pytest.fixture(scope="session")
def settings():
    return Settings(budget=5_000_000, seed=0, jobs=1)


@pytest.fixture(scope="session")
def phi7():
    return construct.paley_etf(7)


@pytest.fixture(scope="session")
def gram7(phi7):
    return gram_analysis.gram(phi7)


@pytest.fixture(scope="session")
def gram11():
    return gram_analysis.gram(construct.paley_etf(11))


@pytest.fixture(scope="session")
def field27():
    return construct.paley_field(27)


@pytest.fixture(scope="session")
def phi27(field27):
    return construct.paley_etf(27, field=field27)


@pytest.fixture(scope="session")
def gram27(phi27):
    return gram_analysis.gram(phi27)


@pytest.fixture(scope="session")
def conference3():
    return construct.conference_etf_gram(3)


@pytest.fixture(scope="session")
def conference7():
    return construct.conference_etf_gram(7)
