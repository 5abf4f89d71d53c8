import math

import numpy as np
import pytest

from schemewalk import oracle
from schemewalk.catalog import (
    catalog,
    catalog_names,
    cycle_intersection_array,
    johnson_intersection_array,
)
from schemewalk.errors import BadParams, UnknownCatalogName
from schemewalk.spectral import golub_welsch, jacobi_from_intersection

# One admissible parameter point per tabulated family.
TABULATED = [
    ("m22", ()),
    ("incidence_pg", (4,)),
    ("incidence_pg", (5,)),
    ("incidence_pg", (7,)),
    ("incidence_pg", (8,)),
    ("doubly_truncated_binary_golay", ()),
    ("extended_ternary_golay", ()),
    ("wells", ()),
    ("three_cover_gq22", ()),
    ("double_hoffman_singleton", ()),
    ("foster", ()),
    ("petersen", ()),
    ("complete", (6,)),
    ("cycle", (7,)),
    ("cycle", (8,)),
    ("hamming", (2, 3)),
]


@pytest.mark.parametrize("name,params", TABULATED)
def test_expected_distribution_matches_quadrature(name, params):
    entry = catalog(name, params)
    dist = golub_welsch(jacobi_from_intersection(entry.array))
    assert np.max(np.abs(dist.atoms - entry.expected.atoms)) < 1e-9
    assert np.max(np.abs(dist.weights - entry.expected.weights)) < 1e-9


def test_gen_octagon_22_pinned_by_quadrature():
    # No scheme exists at (s,t) = (2,2) (the multiplicities are not integers),
    # but the quadrature of the formal array is still well defined and agrees
    # with the sign-resolved closed forms.
    entry = catalog("gen_octagon", (2, 2))
    assert entry.expected is None
    dist = golub_welsch(jacobi_from_intersection(entry.array))
    s, t = 2, 2
    root = math.sqrt(2 * s * t)
    atoms = sorted(
        [s * (t + 1), s - 1 + root, s - 1, s - 1 - root, -(t + 1)]
    )
    assert np.max(np.abs(dist.atoms - atoms)) < 1e-9
    weights = {
        s * (t + 1): 1 / ((s + 1) * (s * t + 1) * (s**2 * t**2 + 1)),
        s - 1 + root: s * t * (t + 1) / (4 * (s * t + 1 - root) * (s + t + root)),
        s - 1: s * t * (t + 1) / (2 * (s * t + 1) * (s + t)),
        s - 1 - root: s * t * (t + 1) / (4 * (s * t + 1 + root) * (s + t - root)),
        -(t + 1): s**4 / ((s + 1) * (s + t) * (s**2 + t**2)),
    }
    for atom, weight in zip(dist.atoms, dist.weights):
        closed = weights[min(weights, key=lambda x: abs(x - atom))]
        assert weight == pytest.approx(closed, abs=1e-9)


def test_gen_dodecagon_2_pinned_by_quadrature():
    entry = catalog("gen_dodecagon", (2,))
    assert entry.expected is None
    dist = golub_welsch(jacobi_from_intersection(entry.array))
    s = 2
    atoms = sorted(
        [
            2 * s,
            s - 1 + math.sqrt(3 * s),
            s - 1 - math.sqrt(3 * s),
            s - 1 + math.sqrt(s),
            s - 1 - math.sqrt(s),
            s - 1,
            -2.0,
        ]
    )
    assert np.max(np.abs(dist.atoms - atoms)) < 1e-9
    # n = 189 with integral multiplicities: a genuine scheme.
    mults = 189 * dist.weights
    assert np.allclose(mults, np.round(mults), atol=1e-9)
    assert sorted(int(round(m)) for m in mults) == [1, 21, 21, 27, 27, 28, 64]


def test_wells_weights_are_the_known_multiplicities():
    entry = catalog("wells", ())
    mults = 32 * entry.expected.weights
    assert sorted(int(round(m)) for m in mults) == [1, 5, 8, 8, 10]


def test_johnson_arrays_match_oracle_bfs():
    for v, d in [(4, 2), (5, 2), (6, 3)]:
        _, bfs_ia = oracle.bfs_strata(oracle.johnson_graph(v, d))
        assert johnson_intersection_array(v, d) == bfs_ia


def test_cycle_arrays_match_oracle_bfs():
    for n in (5, 6, 7, 8):
        _, bfs_ia = oracle.bfs_strata(oracle.cycle_graph(n))
        assert cycle_intersection_array(n) == bfs_ia


def test_line_entry_is_continuous():
    entry = catalog("line", ())
    assert entry.array is None
    assert entry.expected.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_catalog_errors():
    with pytest.raises(UnknownCatalogName):
        catalog("moebius_kantor", ())
    with pytest.raises(BadParams):
        catalog("petersen", (3,))
    with pytest.raises(BadParams):
        catalog("johnson", (3, 2))  # needs 2d <= v
    with pytest.raises(BadParams):
        catalog("incidence_pg", (6,))


def test_catalog_names_sorted_and_complete():
    names = catalog_names()
    assert list(names) == sorted(names)
    assert {"petersen", "wells", "foster", "line", "hamming"} <= set(names)
