import pytest
from hypothesis import settings

from gspin_cover_kit.localfield import FieldElement, LocalField

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=[3, 5], ids=lambda p: f"p{p}")
def field(request):
    return LocalField(request.param)


@pytest.fixture
def F3():
    return LocalField(3)


def fe(token: str) -> FieldElement:
    return FieldElement.parse(token)
