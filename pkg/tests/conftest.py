import pytest
from hypothesis import settings

from pointfree.corpus import corpus_frames
from pointfree.frame import boolean, chain, trivial_frame

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")

# element ids used throughout: C3 = ⊥ 0 < m 1 < ⊤ 2; B2 = ⊥ 0, a 1, b 2, ⊤ 3
BOT, M, TOP = 0, 1, 2
A, B, TOP4 = 1, 2, 3


@pytest.fixture
def C3():
    return chain(3)


@pytest.fixture
def C2():
    return chain(2)


@pytest.fixture
def B2():
    return boolean(2)


@pytest.fixture
def one():
    return trivial_frame()


CORPUS4 = corpus_frames(4)
SMALL = [e for e in CORPUS4 if e.size <= 8]
