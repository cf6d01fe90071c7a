import functools
from pathlib import Path

import pytest

from quiverext import build_engine, parse_algebra, parse_algebra_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = ["e24", "e41", "a2", "pos", "nak", "tri"]

# small in-test algebras used across the suite
KB2 = """
field Q
group Z 1
vertices v
arrow b v v 1
truncate 3
rel b*b
"""

SEMISIMPLE2 = """
field Q
group Z 1
vertices u v
truncate 2
"""

# two square-zero commuting loops, graded over Z^2; syzygies grow forever
EXTERIOR2 = """
field Q
group Z 2
vertices v
arrow x v v 1 0
arrow y v v 0 1
truncate 3
rel x*x
rel y*y
rel x*y + -1*y*x
"""

# a relation mixing path lengths 2 and 4 of equal weight
MIXED = """
field Q
group Z 1
vertices v
arrow x v v 2
arrow y v v 1
truncate 6
rel x*x + -1*y*y*y*y
rel x*y
rel y*x
rel y*y*y*y*y
"""

# trivially graded variant of the e24 quiver
E24_TRIVIAL = """
field Q
group trivial
vertices u v
arrow a u v
arrow b v v
truncate 3
rel b*b
rel b*a
"""

# weights of mixed sign: the paths xy and yx live in the identity degree
MIXED_SIGN = """
field Q
group Z 1
vertices v
arrow x v v 1
arrow y v v -1
truncate 5
rel x*x
rel y*y
rel x*y*x*y
rel y*x*y*x
"""


@functools.cache
def fixture_text(name):
    return (FIXTURES / (name + ".alg")).read_text()


@functools.cache
def engine_for(name):
    return build_engine(parse_algebra_file(str(FIXTURES / (name + ".alg"))))


@functools.cache
def engine_from(text):
    return build_engine(parse_algebra(text))


@pytest.fixture
def fixtures_dir():
    return FIXTURES
