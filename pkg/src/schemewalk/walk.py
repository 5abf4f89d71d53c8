"""Continuous-time quantum-walk engines.

Three interchangeable routes compute the same stratum amplitudes: the
eigenstructure route sums dual eigenvalues against eigenvalue phases, the
character route does the same with group data, and the spectral route
integrates e^{-ixt} times orthogonal polynomials against the spectral
distribution.  Time is measured in inverse adjacency-eigenvalue units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import (
    BadParameter,
    BadParams,
    DegenerateSpectrumUnmerged,
    EngineSpecMismatch,
    InconsistentInputs,
    NonRealGeneratingClass,
)
from .groups import (
    CharacterTable,
    GroupWalkScheme,
    SymmetrizedScheme,
    fused_eigenstructure,
    walk_scheme,
)
from .schemes import (
    FromCatalog,
    FromGroup,
    FromIntersectionArray,
    FromSRG,
    IntersectionArray,
    ProductScheme,
    SchemeEigenstructure,
    SchemeSpec,
    ValencyVector,
    derive_stratum_sizes,
    eigenstructure_from_array,
)
from .spectral import (
    ContinuousDistribution,
    DiscreteDistribution,
    JacobiCoefficients,
    SpectralDistribution,
    evaluate_polynomials,
    jacobi_from_intersection,
    meixner_distribution,
    srg_intersection_array,
)

UNITARITY_TOL = 1e-9
MERGE_TOL = 1e-9
ENGINES = ("eigen", "character", "spectral", "auto")


@dataclass(frozen=True, eq=False)
class AmplitudeSeries:
    """Per-stratum complex amplitudes on a time grid.

    Stratum normalization carries the unit stratum vectors; vertex
    normalization divides stratum k by sqrt(a_k) so each entry is the
    amplitude at any single vertex of that stratum.
    """

    times: np.ndarray
    strata: ValencyVector
    amplitudes: np.ndarray  # (len(times), d+1) complex
    normalization: str = "stratum"

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_vertex(self) -> "AmplitudeSeries":
        if self.normalization == "vertex":
            return self
        scale = np.sqrt(np.asarray(self.strata.a, dtype=float))
        return AmplitudeSeries(
            self.times, self.strata, self.amplitudes / scale, "vertex"
        )

    def unitarity_defect(self) -> float:
        if len(self.times) == 0:
            return 0.0
        if self.normalization != "stratum":
            raise BadParams("unitarity is a stratum-normalization property")
        return float(np.max(np.abs(self.probabilities().sum(axis=1) - 1.0)))

    def validate(self, tol: float = UNITARITY_TOL) -> None:
        if self.normalization == "stratum" and len(self.times):
            if self.unitarity_defect() > tol:
                raise BadParams("amplitude rows are not unit vectors")
            at_zero = np.abs(self.times) < 1e-15
            if np.any(at_zero):
                row = self.amplitudes[np.argmax(at_zero)]
                target = np.zeros_like(row)
                target[0] = 1.0
                if np.max(np.abs(row - target)) > tol:
                    raise BadParams("t = 0 row must be the origin indicator")


@dataclass(frozen=True)
class WalkRequest:
    """A walk problem: scheme specification, time grid and engine choice."""

    spec: SchemeSpec
    times: tuple[float, ...]
    engine: str = "auto"
    normalized_adjacency: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        if self.engine not in ENGINES:
            raise BadParams(f"unknown engine {self.engine!r}")
        if any(not math.isfinite(t) or t < 0 for t in self.times):
            raise BadParams("times must be finite and nonnegative")


def _series(times, strata, amplitudes) -> AmplitudeSeries:
    series = AmplitudeSeries(
        np.asarray(times, dtype=float), strata, amplitudes, "stratum"
    )
    series.validate()
    return series


def amplitudes_eigen(
    es: SchemeEigenstructure,
    times,
    *,
    generator_column: int = 1,
    normalized: bool = False,
) -> AmplitudeSeries:
    """Stratum amplitudes (sqrt(a_k)/n) sum_i e^{-i P_i1 t} Q_ki."""
    times = np.asarray(times, dtype=float)
    evals = es.P[:, generator_column].copy()
    if normalized:
        evals /= es.valencies.a[generator_column]
    phases = np.exp(-1j * np.outer(times, evals))
    a = np.asarray(es.valencies.a, dtype=float)
    amplitudes = (phases @ es.Q.T) * (np.sqrt(a) / es.n)
    return _series(times, es.valencies, amplitudes)


def _polynomial_table(jc: JacobiCoefficients, ia: IntersectionArray, xs: np.ndarray) -> np.ndarray:
    """P_k(x) = Q_k(x)/(b_1...b_k) for all atoms; shape (len(xs), d+1)."""
    bprod = np.cumprod([1] + list(ia.b)).astype(float)
    table = np.empty((len(xs), ia.d + 1))
    for li, x in enumerate(xs):
        table[li] = np.asarray(evaluate_polynomials(jc, float(x), ia.d)) / bprod
    return table


def amplitudes_spectral(
    dist: SpectralDistribution,
    jc: JacobiCoefficients,
    ia: IntersectionArray,
    times,
    *,
    normalized: bool = False,
) -> AmplitudeSeries:
    """Stratum amplitudes (1/sqrt(a_k)) integral of e^{-ixt} P_k(x) d mu(x)."""
    if jc.d != ia.d:
        raise InconsistentInputs("recurrence coefficients and array disagree on d")
    if isinstance(dist, DiscreteDistribution):
        xs, ws = dist.atoms, dist.weights
        if len(xs) != ia.d + 1:
            raise InconsistentInputs("distribution must have d+1 atoms")
    elif isinstance(dist, ContinuousDistribution):
        xs, ws = dist.nodes, dist.node_weights
    else:
        raise InconsistentInputs("infinite distributions need the growing-family route")
    valencies = derive_stratum_sizes(ia)
    times = np.asarray(times, dtype=float)
    polys = _polynomial_table(jc, ia, xs)
    scaled = xs / valencies.a[1] if normalized else xs
    phases = np.exp(-1j * np.outer(times, scaled))
    inv_sqrt_a = 1.0 / np.sqrt(np.asarray(valencies.a, dtype=float))
    amplitudes = (phases @ (ws[:, None] * polys)) * inv_sqrt_a
    return _series(times, valencies, amplitudes)


def amplitudes_group(
    source: CharacterTable | SymmetrizedScheme | GroupWalkScheme,
    generating_class: int,
    times,
    *,
    normalized: bool = False,
) -> AmplitudeSeries:
    """Character-route amplitudes over conjugacy-class strata."""
    if isinstance(source, GroupWalkScheme):
        es = source.eigenstructure
        generating_class = source.generating
    elif isinstance(source, SymmetrizedScheme):
        es = source.eigenstructure
    else:
        if not source.is_symmetric():
            raise NonRealGeneratingClass(
                f"{source.group_label} has unmerged complex classes"
            )
        groups = tuple((k,) for k in range(source.n_classes))
        es = fused_eigenstructure(source, groups, generating_class)
    return amplitudes_eigen(
        es, times, generator_column=generating_class, normalized=normalized
    )


# ---------------------------------------------------------------------------
# Long-time averages
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AverageProbabilities:
    """Time-averaged occupation probabilities, per stratum and per vertex."""

    stratum: np.ndarray
    vertex: np.ndarray


def _merge_groups(values: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(values, kind="stable")
    groups: list[list[int]] = [[int(order[0])]]
    for idx in order[1:]:
        if abs(values[idx] - values[groups[-1][-1]]) <= tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return [np.asarray(g) for g in groups]


def average_from_eigenstructure(
    es: SchemeEigenstructure, *, generator_column: int = 1
) -> AverageProbabilities:
    """Averages (1/n^2) sum over distinct eigenvalues of (sum of Q rows)^2.

    Idempotents sharing an eigenvalue of the generating relation are merged
    first; the cross terms they would otherwise contribute do not average out.
    """
    evals = es.P[:, generator_column]
    vertex = np.zeros(es.d + 1)
    for group in _merge_groups(evals, MERGE_TOL):
        vertex += np.asarray(es.Q[:, group].sum(axis=1)) ** 2
    vertex /= es.n**2
    stratum = vertex * np.asarray(es.valencies.a, dtype=float)
    return AverageProbabilities(stratum=stratum, vertex=vertex)


def average_from_distribution(
    dist: DiscreteDistribution, jc: JacobiCoefficients, ia: IntersectionArray
) -> AverageProbabilities:
    """Averages (1/a_k) sum_l B_l^2 P_k(x_l)^2 over the distribution atoms."""
    if np.min(np.diff(dist.atoms)) <= MERGE_TOL:
        raise DegenerateSpectrumUnmerged(
            "coincident atoms contradict the polynomial structure of the scheme"
        )
    valencies = derive_stratum_sizes(ia)
    polys = _polynomial_table(jc, ia, dist.atoms)
    a = np.asarray(valencies.a, dtype=float)
    stratum = ((dist.weights[:, None] * polys) ** 2).sum(axis=0) / a
    return AverageProbabilities(stratum=stratum, vertex=stratum / a)


def average_probabilities(source, *args, **kwargs) -> AverageProbabilities:
    """Dispatch on the source type: eigenstructure, group data, or distribution."""
    if isinstance(source, SchemeEigenstructure):
        return average_from_eigenstructure(source, **kwargs)
    if isinstance(source, GroupWalkScheme):
        return average_from_eigenstructure(
            source.eigenstructure, generator_column=source.generating
        )
    if isinstance(source, SymmetrizedScheme):
        return average_from_eigenstructure(source.eigenstructure, **kwargs)
    if isinstance(source, DiscreteDistribution):
        return average_from_distribution(source, *args, **kwargs)
    raise BadParams(f"cannot average over {type(source).__name__}")


def time_averaged_probabilities(
    series: AmplitudeSeries,
) -> np.ndarray:
    """Trapezoid average of |amplitude|^2 over the series' own time grid."""
    probs = series.probabilities()
    t = series.times
    return np.trapezoid(probs, t, axis=0) / (t[-1] - t[0])


# ---------------------------------------------------------------------------
# Product schemes and growing-family limits
# ---------------------------------------------------------------------------


def hamming_intersection_array(d: int, n: int) -> IntersectionArray:
    """Array of the product of d complete graphs K_n."""
    if d < 1 or n < 2:
        raise BadParams("product scheme needs d >= 1 and n >= 2")
    c = tuple((n - 1) * (d - i) for i in range(d))
    b = tuple(range(1, d + 1))
    return IntersectionArray(d=d, c=c, b=b)


def hamming_distribution(d: int, n: int) -> DiscreteDistribution:
    """Binomial distribution with atoms n*l - d, l = 0..d."""
    atoms = np.array([n * l - d for l in range(d + 1)], dtype=float)
    weights = np.array(
        [comb(d, l) * (n - 1) ** (d - l) / n**d for l in range(d + 1)]
    )
    return DiscreteDistribution(atoms, weights)


def hamming_walk(
    n: int, d: int, times, *, normalized: bool = False
) -> tuple[AmplitudeSeries, DiscreteDistribution]:
    """Walk on the product of d complete graphs K_n, plus its spectral distribution.

    The origin amplitude factorizes into the d-th power of the K_n origin
    amplitude: the walk does not entangle the factors.
    """
    ia = hamming_intersection_array(d, n)
    dist = hamming_distribution(d, n)
    series = amplitudes_spectral(
        dist, jacobi_from_intersection(ia), ia, times, normalized=normalized
    )
    return series, dist


def johnson_limit_amplitudes(p: float, k: int, times) -> np.ndarray:
    """Amplitudes in the growing-family limit of the set-intersection graphs.

    At p = 1 stratum k has the closed form (it)^k/(1+it)^(k+1); for p < 1 only
    the origin amplitude is available, by truncated summation over the
    geometric atomic measure.
    """
    times = np.asarray(times, dtype=float)
    if k < 0:
        raise BadParameter("stratum index must be nonnegative")
    if p == 1.0:
        it = 1j * times
        return it**k / (1.0 + it) ** (k + 1)
    if not (0.0 < p < 1.0):
        raise BadParameter(f"p must lie in (0, 1], got {p}")
    if k != 0:
        raise BadParameter("only the origin amplitude is available for p < 1")
    atoms, weights = meixner_distribution(p).truncated()
    return np.exp(-1j * np.outer(times, atoms)) @ weights


def line_jacobi(k_max: int) -> JacobiCoefficients:
    """Leading recurrence coefficients of the two-sided infinite path."""
    return JacobiCoefficients(
        omega=(2.0,) + (1.0,) * (k_max - 1), alpha=(0.0,) * (k_max + 1)
    )


def line_walk(times, k_max: int, nodes: int = 512) -> AmplitudeSeries:
    """Truncated stratum amplitudes on the infinite path via arcsine quadrature.

    Only strata 0..k_max are produced, so rows are not unit vectors; the
    missing mass is the probability beyond stratum k_max.
    """
    from .spectral import continuous_line_distribution

    if k_max < 1:
        raise BadParameter("k_max must be at least 1")
    dist = continuous_line_distribution(nodes)
    jc = line_jacobi(k_max)
    times = np.asarray(times, dtype=float)
    polys = np.empty((nodes, k_max + 1))
    for li, x in enumerate(dist.nodes):
        polys[li] = evaluate_polynomials(jc, float(x), k_max)
    phases = np.exp(-1j * np.outer(times, dist.nodes))
    a = np.array([1.0] + [2.0] * k_max)
    amplitudes = (phases @ (dist.node_weights[:, None] * polys)) / np.sqrt(a)
    strata = ValencyVector(tuple(int(x) for x in a), int(a.sum()))
    return AmplitudeSeries(times, strata, amplitudes, "stratum")


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def _array_of(spec: SchemeSpec) -> IntersectionArray:
    if isinstance(spec, FromIntersectionArray):
        return spec.array
    if isinstance(spec, FromSRG):
        return srg_intersection_array(spec.kappa, spec.lam, spec.eta)
    if isinstance(spec, ProductScheme):
        return hamming_intersection_array(spec.copies, spec.n)
    if isinstance(spec, FromCatalog):
        from .catalog import catalog

        entry = catalog(spec.name, spec.params)
        if entry.array is None:
            raise EngineSpecMismatch(f"catalog entry {spec.name!r} has no finite array")
        return entry.array
    raise EngineSpecMismatch(f"no intersection array for {type(spec).__name__}")


def dispatch(req: WalkRequest) -> AmplitudeSeries:
    """Route a walk request to the engine matching its scheme specification."""
    engine = req.engine
    if isinstance(req.spec, FromGroup):
        if engine in ("auto", "character", "eigen"):
            scheme = walk_scheme(req.spec.group, req.spec.generating_class)
            return amplitudes_group(
                scheme, scheme.generating, req.times, normalized=req.normalized_adjacency
            )
        if engine == "spectral" and req.spec.group.kind == "cyclic":
            from .catalog import cycle_distribution, cycle_intersection_array

            ia = cycle_intersection_array(req.spec.group.n)
            return amplitudes_spectral(
                cycle_distribution(req.spec.group.n),
                jacobi_from_intersection(ia),
                ia,
                req.times,
                normalized=req.normalized_adjacency,
            )
        raise EngineSpecMismatch(f"engine {engine!r} cannot run on a group scheme")
    if engine == "character":
        raise EngineSpecMismatch("character engine needs a group specification")
    if isinstance(req.spec, ProductScheme) and engine == "auto":
        series, _ = hamming_walk(
            req.spec.n, req.spec.copies, req.times, normalized=req.normalized_adjacency
        )
        return series
    ia = _array_of(req.spec)
    if engine == "eigen":
        return amplitudes_eigen(
            eigenstructure_from_array(ia), req.times, normalized=req.normalized_adjacency
        )
    from .spectral import golub_welsch

    jc = jacobi_from_intersection(ia)
    return amplitudes_spectral(
        golub_welsch(jc), jc, ia, req.times, normalized=req.normalized_adjacency
    )
