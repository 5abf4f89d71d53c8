"""Named families of distance-regular graphs with known spectral distributions.

Each entry yields an intersection array and, where a trusted closed form
exists, the expected distribution the quadrature must reproduce.  Entries for
the two generalized-polygon families carry no expected distribution: their
transcribed closed-form weight tables are ambiguous, so tests pin specific
parameter points against quadrature ground truth instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParams, UnknownCatalogName
from .schemes import IntersectionArray
from .spectral import (
    DiscreteDistribution,
    SpectralDistribution,
    continuous_line_distribution,
)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    params: tuple[int, ...]
    array: IntersectionArray | None
    expected: SpectralDistribution | None


def _dist(pairs: list[tuple[float, float]]) -> DiscreteDistribution:
    pairs = sorted(pairs)
    atoms = np.array([x for x, _ in pairs])
    weights = np.array([w for _, w in pairs])
    return DiscreteDistribution(atoms, weights)


def complete_intersection_array(n: int) -> IntersectionArray:
    if n < 2:
        raise BadParams("complete graph needs n >= 2")
    return IntersectionArray(d=1, c=(n - 1,), b=(1,))


def complete_distribution(n: int) -> DiscreteDistribution:
    return _dist([(-1.0, (n - 1) / n), (float(n - 1), 1.0 / n)])


def cycle_intersection_array(n: int) -> IntersectionArray:
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    if n % 2 == 1:
        d = (n - 1) // 2
        return IntersectionArray(d=d, c=(2,) + (1,) * (d - 1), b=(1,) * d)
    d = n // 2
    return IntersectionArray(d=d, c=(2,) + (1,) * (d - 1), b=(1,) * (d - 1) + (2,))


def cycle_distribution(n: int) -> DiscreteDistribution:
    top = n // 2
    pairs = []
    for j in range(top + 1):
        x = 2.0 * math.cos(2.0 * math.pi * j / n)
        interior = 0 < j < n / 2
        pairs.append((x, 2.0 / n if interior else 1.0 / n))
    return _dist(pairs)


def johnson_intersection_array(v: int, d: int) -> IntersectionArray:
    if d < 1 or v < 2 * d:
        raise BadParams("set-intersection family needs 1 <= d and 2d <= v")
    c = tuple((d - i) * (v - d - i) for i in range(d))
    b = tuple(i * i for i in range(1, d + 1))
    return IntersectionArray(d=d, c=c, b=b)


def _hamming(d: int, n: int):
    from .walk import hamming_distribution, hamming_intersection_array

    return hamming_intersection_array(d, n), hamming_distribution(d, n)


def _gen_octagon(s: int, t: int) -> IntersectionArray:
    if s < 2 or t < 1:
        raise BadParams("collinearity family needs s >= 2, t >= 1")
    return IntersectionArray(d=4, c=(s * (t + 1), s * t, s * t, s * t), b=(1, 1, 1, t + 1))


def _gen_dodecagon(s: int) -> IntersectionArray:
    if s < 2:
        raise BadParams("collinearity family needs s >= 2")
    return IntersectionArray(d=6, c=(2 * s, s, s, s, s, s), b=(1, 1, 1, 1, 1, 2))


def _incidence_pg(k: int):
    if k not in (4, 5, 7, 8):
        raise BadParams("incidence family is tabulated for k in {4, 5, 7, 8}")
    ia = IntersectionArray(d=4, c=(k, k - 1, k - 1, 1), b=(1, 1, k - 1, k))
    root = math.sqrt(k)
    expected = _dist(
        [
            (-float(k), 1.0 / (2 * k * k)),
            (-root, (k - 1) / (2 * k)),
            (0.0, (k - 1) / (k * k)),
            (root, (k - 1) / (2 * k)),
            (float(k), 1.0 / (2 * k * k)),
        ]
    )
    return ia, expected


_M22 = (
    IntersectionArray(d=4, c=(7, 6, 4, 4), b=(1, 1, 1, 6)),
    _dist([(-4.0, 7 / 110), (-3.0, 3 / 10), (1.0, 7 / 15), (4.0, 1 / 6), (7.0, 1 / 330)]),
)

_BINARY_GOLAY = (
    IntersectionArray(d=3, c=(21, 20, 16), b=(1, 2, 12)),
    _dist([(-11.0, 21 / 512), (-3.0, 35 / 64), (5.0, 105 / 256), (21.0, 1 / 512)]),
)

_TERNARY_GOLAY = (
    IntersectionArray(d=3, c=(24, 22, 20), b=(1, 2, 12)),
    _dist([(-12.0, 8 / 243), (-3.0, 440 / 729), (6.0, 88 / 243), (24.0, 1 / 729)]),
)

# Weight table from quadrature (equivalently, the known eigenvalue
# multiplicities 5, 8, 10, 8, 1 over 32 vertices).
_WELLS = (
    IntersectionArray(d=4, c=(5, 4, 1, 1), b=(1, 1, 4, 5)),
    _dist(
        [
            (-3.0, 5 / 32),
            (-math.sqrt(5), 1 / 4),
            (1.0, 5 / 16),
            (math.sqrt(5), 1 / 4),
            (5.0, 1 / 32),
        ]
    ),
)

_THREE_COVER_GQ22 = (
    IntersectionArray(d=4, c=(6, 4, 2, 1), b=(1, 1, 4, 6)),
    _dist([(-3.0, 1 / 9), (-2.0, 2 / 5), (1.0, 1 / 5), (3.0, 4 / 15), (6.0, 1 / 45)]),
)

_DOUBLE_HOFFMAN_SINGLETON = (
    IntersectionArray(d=5, c=(7, 6, 6, 1, 1), b=(1, 1, 6, 6, 7)),
    _dist(
        [
            (-7.0, 1 / 100),
            (-3.0, 21 / 100),
            (-2.0, 7 / 25),
            (2.0, 7 / 25),
            (3.0, 21 / 100),
            (7.0, 1 / 100),
        ]
    ),
)

_FOSTER = (
    IntersectionArray(d=8, c=(3, 2, 2, 2, 2, 1, 1, 1), b=(1, 1, 1, 1, 2, 2, 2, 3)),
    _dist(
        [
            (-3.0, 1 / 90),
            (-math.sqrt(6), 2 / 15),
            (-2.0, 1 / 10),
            (-1.0, 1 / 5),
            (0.0, 1 / 9),
            (1.0, 1 / 5),
            (2.0, 1 / 10),
            (math.sqrt(6), 2 / 15),
            (3.0, 1 / 90),
        ]
    ),
)


def _entry_petersen() -> tuple[IntersectionArray, DiscreteDistribution]:
    return (
        IntersectionArray(d=2, c=(3, 2), b=(1, 1)),
        _dist([(-2.0, 2 / 5), (1.0, 1 / 2), (3.0, 1 / 10)]),
    )


_PARAM_COUNTS = {
    "complete": ("n",),
    "cycle": ("n",),
    "petersen": (),
    "johnson": ("v", "d"),
    "hamming": ("d", "n"),
    "gen_octagon": ("s", "t"),
    "gen_dodecagon": ("s",),
    "m22": (),
    "incidence_pg": ("k",),
    "doubly_truncated_binary_golay": (),
    "extended_ternary_golay": (),
    "wells": (),
    "three_cover_gq22": (),
    "double_hoffman_singleton": (),
    "foster": (),
    "line": (),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(_PARAM_COUNTS))


def catalog(name: str, params: tuple[int, ...] = ()) -> CatalogEntry:
    """Look up a named family, substituting the given integer parameters."""
    if name not in _PARAM_COUNTS:
        raise UnknownCatalogName(f"unknown catalog name {name!r}")
    expected_params = _PARAM_COUNTS[name]
    params = tuple(int(p) for p in params)
    if len(params) != len(expected_params):
        raise BadParams(
            f"{name} expects parameters {expected_params}, got {len(params)}"
        )

    array: IntersectionArray | None
    expected: SpectralDistribution | None
    if name == "complete":
        array, expected = complete_intersection_array(*params), complete_distribution(*params)
    elif name == "cycle":
        array, expected = cycle_intersection_array(*params), cycle_distribution(*params)
    elif name == "petersen":
        array, expected = _entry_petersen()
    elif name == "johnson":
        array, expected = johnson_intersection_array(*params), None
    elif name == "hamming":
        array, expected = _hamming(*params)
    elif name == "gen_octagon":
        array, expected = _gen_octagon(*params), None
    elif name == "gen_dodecagon":
        array, expected = _gen_dodecagon(*params), None
    elif name == "m22":
        array, expected = _M22
    elif name == "incidence_pg":
        array, expected = _incidence_pg(*params)
    elif name == "doubly_truncated_binary_golay":
        array, expected = _BINARY_GOLAY
    elif name == "extended_ternary_golay":
        array, expected = _TERNARY_GOLAY
    elif name == "wells":
        array, expected = _WELLS
    elif name == "three_cover_gq22":
        array, expected = _THREE_COVER_GQ22
    elif name == "double_hoffman_singleton":
        array, expected = _DOUBLE_HOFFMAN_SINGLETON
    elif name == "foster":
        array, expected = _FOSTER
    else:  # line
        array, expected = None, continuous_line_distribution()
    return CatalogEntry(name=name, params=params, array=array, expected=expected)
