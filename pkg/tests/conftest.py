import itertools

import numpy as np
import pytest

from pgroups.catalog import bundled_catalog, catalog_group
from pgroups.groups import FiniteGroup


@pytest.fixture(scope="session")
def by_id():
    """Catalog groups, built once per session."""
    return catalog_group


@pytest.fixture(scope="session")
def catalog_entries():
    return bundled_catalog()


def heisenberg_matrix_table(p: int) -> np.ndarray:
    """Independent model: upper unitriangular 3x3 matrices over Z/pZ.

    Built by plain matrix arithmetic, no collection involved; used as an
    oracle against the presentation-compiled Heisenberg group.
    """
    mats = list(itertools.product(range(p), repeat=3))   # (a, b, c) for
    # [[1, a, c], [0, 1, b], [0, 0, 1]]
    index = {m: i for i, m in enumerate(mats)}
    n = len(mats)
    table = np.zeros((n, n), dtype=np.int64)
    for i, (a1, b1, c1) in enumerate(mats):
        for j, (a2, b2, c2) in enumerate(mats):
            prod = ((a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p)
            table[i, j] = index[prod]
    return table


@pytest.fixture(scope="session")
def heis27_matrix_model() -> FiniteGroup:
    return FiniteGroup.from_cayley_table(heisenberg_matrix_table(3))


def cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def product_table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """Cayley table of a direct product, indices packed as i1 * n2 + i2."""
    n1, n2 = len(t1), len(t2)
    out = np.zeros((n1 * n2, n1 * n2), dtype=np.int64)
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    out[a1 * n2 + a2, b1 * n2 + b2] = t1[a1, b1] * n2 + t2[a2, b2]
    return out
