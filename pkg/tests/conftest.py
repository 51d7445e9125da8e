import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sawkit.graphs import catalog
from sawkit.quotient import build_quotient, sublattice_action, tree_action


@pytest.fixture(scope="session")
def z1():
    return catalog("zd(1)")


@pytest.fixture(scope="session")
def z2():
    return catalog("zd(2)")


@pytest.fixture(scope="session")
def ladder():
    return catalog("ladder")


@pytest.fixture(scope="session")
def sqoct():
    return catalog("square-octagon")


@pytest.fixture(scope="session")
def q_z1mod3(z1):
    return build_quotient(z1, sublattice_action([[3]]))


@pytest.fixture(scope="session")
def q_z2mod22(z2):
    return build_quotient(z2, sublattice_action([[2, 0], [0, 2]]))


@pytest.fixture(scope="session")
def q_z2mod31(z2):
    return build_quotient(z2, sublattice_action([[3, 0], [0, 1]]))


@pytest.fixture(scope="session")
def q_sqoct_ladder(sqoct):
    return build_quotient(sqoct, sublattice_action([[1, -1]]))


@pytest.fixture(scope="session")
def q_tree_end():
    te = catalog("tree-with-end(3)")
    return build_quotient(te, tree_action("child-swap"))
