"""Experiments: the B_k / C_k lower-bound families, the uniform-query
distinguisher, sampled checks of the far-from-image bounds, and the
exhaustive Booleanity audit for small n."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .hypercube import SUPPORT_TOL, DenseFunction, ValueSet, check_dimension, parity
from .oracle import DenseOracle, Oracle
from .rng import make_rng, trial_rng
from .spectral import far_from_set_bound, spectral_sparsity_bound, spectrum_booleanity_deviations, sumset_power
from .tester import test_booleanity
from .wht import fwht, forward_array

#: Value returned on the bad block of a C_k function.
SENTINEL = 2.0

COEFFICIENT_LAWS = ("uniform", "gaussian", "discrete", "near_boolean")

#: Largest n for the exhaustive audit (2**(2**4) = 65536 functions).
AUDIT_CAP = 4


def _log2_exact(k):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1 or k & (k - 1):
        raise InvalidArgumentError(f"k must be a power of two, got {k!r}")
    return int(k).bit_length() - 1


@dataclass(frozen=True)
class BlockFunctionSpec:
    """A function of the low ``m`` mask bits: ``f(x) = block_values[x & (2**m - 1)]``."""

    n: int
    m: int
    block_values: tuple

    def __post_init__(self):
        check_dimension(self.n)
        if not 0 <= self.m <= self.n:
            raise InvalidArgumentError(f"need 0 <= m <= n, got m={self.m}, n={self.n}")
        if len(self.block_values) != 1 << self.m:
            raise InvalidArgumentError("need exactly 2**m block values")
        object.__setattr__(self, "block_values", tuple(float(v) for v in self.block_values))

    @property
    def k(self):
        return 1 << self.m

    def is_bk(self):
        return all(v in (-1.0, 1.0) for v in self.block_values)

    def is_ck(self):
        bad = [v for v in self.block_values if v not in (-1.0, 1.0)]
        return bad == [SENTINEL]

    def __call__(self, x):
        return self.block_values[x & (self.k - 1)]

    def to_dense(self) -> DenseFunction:
        x = np.arange(1 << self.n, dtype=np.int64)
        return DenseFunction(np.asarray(self.block_values)[x & (self.k - 1)])


class BlockOracle(Oracle):
    def __init__(self, spec: BlockFunctionSpec):
        super().__init__(spec.n)
        self.spec = spec
        self._table = list(spec.block_values)
        self._mask = spec.k - 1

    def _evaluate(self, x):
        return self._table[x & self._mask]


def _block_spec(k, n, seed, bad_block):
    m = _log2_exact(k)
    n = check_dimension(n)
    if m > n:
        raise InvalidArgumentError(f"k = 2**{m} needs n >= {m}, got n={n}")
    rng = make_rng(seed)
    values = rng.choice((-1.0, 1.0), size=k)
    if bad_block:
        values[rng.integers(k)] = SENTINEL
    return BlockFunctionSpec(n, m, tuple(values.tolist()))


def sample_bk(k, n, seed=None) -> BlockOracle:
    """Uniform draw from B_k: independent fair signs on each of the k blocks."""
    return BlockOracle(_block_spec(k, n, seed, bad_block=False))


def sample_ck(k, n, seed=None) -> BlockOracle:
    """Uniform draw from C_k: one uniform block set to 2, the others fair signs."""
    return BlockOracle(_block_spec(k, n, seed, bad_block=True))


def uniform_query_detector(oracle: Oracle, q: int, rng) -> bool:
    """Query ``q`` uniform points; True (reject) iff some value is not +-1."""
    if q <= 0:
        return False
    for x in rng.integers(0, 1 << oracle.n, size=q).tolist():
        if abs(abs(oracle.query(x)) - 1.0) > 1e-9:
            return True
    return False


@dataclass
class ExperimentReport:
    """Results of one experiment run.

    ``confidence_radius`` is the 3-sigma binomial radius of
    ``detection_rate``; ``violations`` lists every invariant that failed.
    """

    kind: str
    parameters: dict
    detection_rate: float | None = None
    advantage: float | None = None
    confidence_radius: float | None = None
    analytic_prediction: float | None = None
    metrics: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def binomial_radius(rate, trials):
    return 3.0 * math.sqrt(rate * (1.0 - rate) / trials)


def distinguishing_experiment(k, n, q, trials, seed=0) -> ExperimentReport:
    """Run the uniform-query detector against fresh C_k (D0) and B_k (D1) draws.

    Trial ``i`` uses the stream ``trial_rng(seed, i)`` for both draws and
    both query sets.  The detection rate on D0 is compared with
    ``1 - (1 - 1/k)**q`` at three standard deviations of that prediction.
    """
    m = _log2_exact(k)
    if q < 0:
        raise InvalidArgumentError(f"query budget must be nonnegative, got {q}")
    if trials < 1:
        raise InvalidArgumentError(f"need at least one trial, got {trials}")
    if m > n:
        raise InvalidArgumentError(f"k = 2**{m} needs n >= {m}, got n={n}")
    detected = false_rejects = queries = 0
    for i in range(trials):
        rng = trial_rng(seed, i)
        d0 = sample_ck(k, n, rng)
        d1 = sample_bk(k, n, rng)
        detected += uniform_query_detector(d0, q, rng)
        false_rejects += uniform_query_detector(d1, q, rng)
        queries += d0.query_count + d1.query_count
    rate = detected / trials
    false_rate = false_rejects / trials
    prediction = 1.0 - (1.0 - 1.0 / k) ** q
    null_radius = binomial_radius(prediction, trials)
    report = ExperimentReport(
        kind="distinguish",
        parameters={"k": k, "n": n, "q": q, "trials": trials, "seed": seed},
        detection_rate=rate,
        advantage=rate - false_rate,
        confidence_radius=binomial_radius(rate, trials),
        analytic_prediction=prediction,
        metrics={"false_rejection_rate": false_rate, "prediction_radius": null_radius,
                 "deviation": rate - prediction, "total_queries": queries},
    )
    if false_rejects:
        report.violations.append(f"{false_rejects} false rejections on B_k")
    if abs(rate - prediction) > null_radius:
        report.violations.append("detection rate outside 3 sigma of the prediction")
    return report


def _independent_directions(rng, n, m):
    basis = {}
    dirs = []
    while len(dirs) < m:
        v = int(rng.integers(1, 1 << n))
        w = v
        while w:
            top = w.bit_length() - 1
            if top not in basis:
                basis[top] = w
                dirs.append(v)
                break
            w ^= basis[top]
    return dirs


def _nonzero_uniform(rng, size, low=1e-6, high=2.0):
    return rng.choice((-1.0, 1.0), size=size) * rng.uniform(low, high, size=size)


def random_sparse_values(rng, n, k, law="uniform") -> np.ndarray:
    """Dense table of a random function with at most ``k`` nonzero Fourier coefficients.

    ``uniform``, ``gaussian`` and ``discrete`` put i.i.d. coefficients (on
    [-2, 2] minus a 1e-6 band around 0, standard normal, or {+-1, +-2}) on a
    uniformly random support of size ``min(k, 2**n)``.  ``near_boolean``
    builds a Boolean function of ``floor(log2 k)`` random parities and
    overwrites a random nonempty set of its blocks, some with the value 2.
    """
    size = 1 << n
    if law == "near_boolean":
        m = min(int(k).bit_length() - 1, n)
        dirs = _independent_directions(rng, n, m)
        table = rng.choice((-1.0, 1.0), size=1 << m)
        bad = rng.permutation(1 << m)[: int(rng.integers(1, (1 << m) + 1))]
        table[bad] = np.where(rng.random(bad.size) < 0.5, SENTINEL, rng.uniform(-2, 2, bad.size))
        x = np.arange(size, dtype=np.int64)
        b = np.zeros(size, dtype=np.int64)
        for i, v in enumerate(dirs):
            b |= parity(x & v).astype(np.int64) << i
        return table[b]
    kk = min(int(k), size)
    spec = np.zeros(size)
    where = rng.choice(size, size=kk, replace=False)
    if law == "uniform":
        spec[where] = _nonzero_uniform(rng, kk)
    elif law == "gaussian":
        c = rng.standard_normal(kk)
        spec[where] = np.where(np.abs(c) < 1e-6, 1e-6, c)
    elif law == "discrete":
        spec[where] = rng.choice((-2.0, -1.0, 1.0, 2.0), size=kk)
    else:
        raise InvalidArgumentError(f"unknown coefficient law {law!r}; choose from {COEFFICIENT_LAWS}")
    return fwht(spec)


def random_value_set(rng, values, d, tol=1e-9) -> ValueSet:
    """A d-element target set, biased toward values ``f`` actually takes."""
    image = np.unique(np.round(values, 8))
    rng.shuffle(image)
    chosen = []
    for v in image:
        if len(chosen) == d:
            break
        if rng.random() < 0.7 and all(abs(v - c) > 1e-6 for c in chosen):
            chosen.append(float(v))
    while len(chosen) < d:
        v = float(rng.uniform(-3, 3))
        if all(abs(v - c) > 1e-6 for c in chosen):
            chosen.append(v)
    # snap picked values back onto actual function values so membership is exact
    snapped = []
    for c in chosen:
        nearest = values[np.argmin(np.abs(values - c))]
        snapped.append(float(nearest) if abs(nearest - c) < 1e-7 else c)
    return ValueSet(snapped, tol)


def empirical_min_fraction(n, k, num_samples, seed=0, coefficient_law="uniform", d=2,
                           tol=SUPPORT_TOL, chunk=512) -> ExperimentReport:
    """Sample k-sparse functions and check the far-from-image bound on each.

    With ``d = 2`` the target set is {-1, 1}; otherwise every sample gets its
    own random d-element set from :func:`random_value_set`.  For each sample
    that is not inside its target set the report tracks the smallest
    non-member fraction against ``d! / (k+d)**d``, and for every sample it
    checks that ``g = prod (f - y)`` has spectral support inside ``dA`` (A the
    Fourier support of ``f`` plus 0) and no larger than ``(k+d)**d / d!``.
    """
    n = check_dimension(n, 26)
    if coefficient_law not in COEFFICIENT_LAWS:
        raise InvalidArgumentError(f"unknown coefficient law {coefficient_law!r}; choose from {COEFFICIENT_LAWS}")
    bound = far_from_set_bound(k, d)
    support_cap = spectral_sparsity_bound(k, d)
    min_fraction = math.inf
    non_member = sparsity_violations = bound_violations = support_violations = subset_violations = 0
    max_support_g = 0
    done = 0
    while done < num_samples:
        batch = min(chunk, num_samples - done)
        rngs = [trial_rng(seed, done + j) for j in range(batch)]
        values = np.stack([random_sparse_values(r, n, k, coefficient_law) for r in rngs])
        if d == 2:
            targets = [ValueSet.boolean(1e-9)] * batch
        else:
            targets = [random_value_set(r, row, d) for r, row in zip(rngs, values)]
        fhat = forward_array(values)
        g = np.ones_like(values)
        outside = np.empty(values.shape, dtype=bool)
        for j, D in enumerate(targets):
            for y in D.elements:
                g[j] *= values[j] - y
            outside[j] = D.outside_mask(values[j])
        ghat = forward_array(g)
        fractions = outside.mean(axis=1)
        for j in range(batch):
            A = np.flatnonzero(np.abs(fhat[j]) > tol)
            if A.size > k:
                sparsity_violations += 1
            supp_g = np.flatnonzero(np.abs(ghat[j]) > tol)
            max_support_g = max(max_support_g, supp_g.size)
            if supp_g.size > support_cap:
                support_violations += 1
            if supp_g.size and not set(supp_g.tolist()) <= sumset_power(set(A.tolist()) | {0}, d):
                subset_violations += 1
            if fractions[j] > 0:
                non_member += 1
                min_fraction = min(min_fraction, fractions[j])
                if fractions[j] < bound:
                    bound_violations += 1
        done += batch
    report = ExperimentReport(
        kind="minfraction",
        parameters={"n": n, "k": k, "d": d, "num_samples": num_samples, "seed": seed,
                    "coefficient_law": coefficient_law},
        analytic_prediction=bound,
        metrics={"non_member_samples": non_member,
                 "min_fraction": None if math.isinf(min_fraction) else float(min_fraction),
                 "bound": bound, "bound_violations": bound_violations,
                 "support_bound": support_cap, "max_spectral_support_g": max_support_g,
                 "support_violations": support_violations, "sumset_violations": subset_violations,
                 "sparsity_violations": sparsity_violations},
    )
    for name in ("bound_violations", "support_violations", "sumset_violations", "sparsity_violations"):
        if report.metrics[name]:
            report.violations.append(f"{name}: {report.metrics[name]}")
    return report


def all_boolean_tables(n) -> np.ndarray:
    """Every +-1 table on Z_2^n, one per row; row ``r`` has ``-1`` where bit x of r is set."""
    n = check_dimension(n)
    if n > AUDIT_CAP:
        raise ResourceLimitError(f"exhaustive enumeration capped at n={AUDIT_CAP}, got n={n}")
    size = 1 << n
    rows = np.arange(1 << size, dtype=np.int64)[:, None]
    bits = (rows >> np.arange(size, dtype=np.int64)[None, :]) & 1
    return 1.0 - 2.0 * bits


def exhaustive_boolean_audit(n, eps=0.1, seed=0, tol=1e-9) -> ExperimentReport:
    """Check every Boolean function on n <= 4 bits: the spectrum squares to
    delta under convolution, and the tester (promised the measured sparsity,
    fixed ``seed``) accepts."""
    tables = all_boolean_tables(n)
    fhats = forward_array(tables)
    deviation = spectrum_booleanity_deviations(fhats)
    sparsity = np.count_nonzero(np.abs(fhats) > tol, axis=1)
    accepted = 0
    for table, k in zip(tables, sparsity.tolist()):
        accepted += test_booleanity(DenseOracle(DenseFunction(table)), k, eps, seed).accepted
    total = tables.shape[0]
    spectral_pass = int(np.count_nonzero(deviation <= tol))
    report = ExperimentReport(
        kind="audit",
        parameters={"n": n, "eps": eps, "seed": seed},
        metrics={"functions": total, "spectral_pass": spectral_pass, "tester_accept": accepted,
                 "max_deviation": float(deviation.max())},
    )
    if spectral_pass != total:
        report.violations.append(f"{total - spectral_pass} spectra fail fhat*fhat = delta")
    if accepted != total:
        report.violations.append(f"{total - accepted} Boolean functions rejected")
    return report
