"""Spectral characterizations and inequalities for functions on Z_2^n.

Covers the Booleanity test through self-convolution of the spectrum, the
entropic and support uncertainty principles, the support of convolutions,
the far-from-image bounds for sparse functions, and the closeness check
for functions whose squared spectrum has bounded entropy.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, NamedTuple

import numpy as np

from .errors import InvalidArgumentError
from .hypercube import (
    SUPPORT_TOL,
    DenseFunction,
    ValueSet,
    boolean_distance,
    entropy,
    l2_norm,
    non_boolean_fraction,
    support,
    support_size,
)
from .wht import convolve_array, convolve_fast, wht_forward

#: Slack below zero still counted as "holds" in uncertainty reports.
UNCERTAINTY_TOL = 1e-9


@dataclass(frozen=True)
class UncertaintyReport:
    """One side-by-side comparison ``lhs >= rhs`` (all quantities in bits)."""

    lhs: float
    rhs: float
    holds: bool
    slack: float

    @classmethod
    def compare(cls, lhs, rhs, tol=UNCERTAINTY_TOL):
        slack = float(lhs) - float(rhs)
        return cls(float(lhs), float(rhs), slack >= -tol, slack)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SupportUncertaintyReport:
    """Both support forms: ``|supp f||supp fhat| >= 2**n`` and
    ``|supp f| 2**H[fhat/|fhat|] >= 2**n``, each compared in log2 scale."""

    support_f: int
    support_fhat: int
    support_product: UncertaintyReport
    support_entropy: UncertaintyReport

    @property
    def holds(self):
        return self.support_product.holds and self.support_entropy.holds

    def to_dict(self):
        return {
            "support_f": self.support_f,
            "support_fhat": self.support_fhat,
            "support_product": self.support_product.to_dict(),
            "support_entropy": self.support_entropy.to_dict(),
            "holds": self.holds,
        }


def is_boolean_by_spectrum(fhat: DenseFunction, tol=1e-9) -> bool:
    """True iff ``fhat * fhat`` equals delta to within ``tol`` (max-abs)."""
    return spectrum_booleanity_deviation(fhat) <= tol


def spectrum_booleanity_deviation(fhat: DenseFunction) -> float:
    """``max |fhat*fhat - delta|``."""
    conv = convolve_fast(fhat, fhat).values.copy()
    conv[0] -= 1.0
    return float(np.max(np.abs(conv)))


def spectrum_booleanity_deviations(fhats: np.ndarray) -> np.ndarray:
    """Row-wise :func:`spectrum_booleanity_deviation` for a stack of spectra."""
    conv = convolve_array(fhats, fhats)
    conv[..., 0] -= 1.0
    return np.max(np.abs(conv), axis=-1)


def _require_nonzero(f):
    norm = l2_norm(f)
    if norm == 0:
        raise InvalidArgumentError("uncertainty principles need a nonzero function")
    return norm


def check_entropy_uncertainty(f: DenseFunction) -> UncertaintyReport:
    """Compare ``H[f/|f|] + H[fhat/|fhat|]`` against ``n``."""
    norm = _require_nonzero(f)
    fhat = wht_forward(f)
    lhs = entropy(f / norm) + entropy(fhat / l2_norm(fhat))
    return UncertaintyReport.compare(lhs, f.n)


def check_support_uncertainty(f: DenseFunction, tol=SUPPORT_TOL) -> SupportUncertaintyReport:
    """Check both support forms of the uncertainty principle.

    Supports are counted on the L2-normalized ``f`` and ``fhat`` so the
    threshold ``tol`` does not depend on the scale of ``f``.
    """
    norm = _require_nonzero(f)
    fhat = wht_forward(f)
    fhat_unit = fhat / l2_norm(fhat)
    s_f = support_size(f / norm, tol)
    s_fhat = support_size(fhat_unit, tol)
    product = UncertaintyReport.compare(math.log2(s_f) + math.log2(s_fhat), f.n)
    ent = UncertaintyReport.compare(math.log2(s_f) + entropy(fhat_unit), f.n)
    return SupportUncertaintyReport(s_f, s_fhat, product, ent)


def xor_sumset(A: Iterable[int], B: Iterable[int]) -> set[int]:
    """``{a ^ b : a in A, b in B}``."""
    A = list(A)
    return {a ^ b for b in B for a in A}


def check_conv_support(f: DenseFunction, g: DenseFunction, tol=SUPPORT_TOL) -> bool:
    """True iff ``supp(f*g)`` lies inside the sumset ``supp f + supp g``."""
    if f.n != g.n:
        raise InvalidArgumentError(f"dimension mismatch: {f.n} != {g.n}")
    conv = convolve_fast(f, g)
    return support(conv, tol) <= xor_sumset(support(f, tol), support(g, tol))


def sumset_power(A: Iterable[int], d: int) -> set[int]:
    """Elements that are an XOR of exactly ``d`` members of ``A`` (with repetition)."""
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidArgumentError(f"d must be a positive integer, got {d!r}")
    A = set(int(a) for a in A)
    result = set(A)
    for _ in range(int(d) - 1):
        result = xor_sumset(result, A)
    return result


def _check_kd(k, d):
    for name, v in (("k", k), ("d", d)):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
            raise InvalidArgumentError(f"{name} must be a positive integer, got {v!r}")
    return int(k), int(d)


def log2_spectral_sparsity_bound(k, d) -> float:
    """``log2((k+d)**d / d!)``, safe for large arguments."""
    k, d = _check_kd(k, d)
    return (d * math.log(k + d) - math.lgamma(d + 1)) / math.log(2)


def spectral_sparsity_bound(k, d) -> float:
    """``(k+d)**d / d!``: a cap on the spectral support of ``prod_i (f - y_i)``
    for a k-sparse ``f`` and ``d`` target values."""
    k, d = _check_kd(k, d)
    exact = Fraction((k + d) ** d, math.factorial(d))
    try:
        return float(exact)
    except OverflowError:
        return math.inf


def sparsity_bound_binomial(k, d) -> int:
    """The sharper count ``C(k+d, d)`` of size-d multisets from ``supp fhat + {0}``."""
    k, d = _check_kd(k, d)
    return math.comb(k + d, d)


def far_from_set_bound(k, d) -> float:
    """``d! / (k+d)**d``, the least non-member fraction of a k-sparse function
    whose image is not inside a d-element set.

    Computed exactly in rationals and rounded once, so for ``d = 2`` the
    result is identical to the float ``2 / (k+2)**2``.
    """
    k, d = _check_kd(k, d)
    return float(Fraction(math.factorial(d), (k + d) ** d))


def log2_far_from_set_bound(k, d) -> float:
    return -log2_spectral_sparsity_bound(k, d)


def product_over_set(f: DenseFunction, D: ValueSet | Iterable[float]) -> DenseFunction:
    """``g = prod_{y in D} (f - y)``, which vanishes exactly where ``f`` lands in ``D``."""
    elements = D.elements if isinstance(D, ValueSet) else tuple(D)
    g = np.ones_like(f.values)
    for y in elements:
        g = g * (f.values - y)
    return DenseFunction(g)


@dataclass(frozen=True)
class FiniteDistribution:
    """A probability distribution over finitely many hashable outcomes."""

    masses: Mapping[Hashable, float]

    def __post_init__(self):
        masses = {k: float(v) for k, v in dict(self.masses).items()}
        if not masses:
            raise InvalidArgumentError("distribution needs at least one outcome")
        if any(not math.isfinite(p) or p < 0 for p in masses.values()):
            raise InvalidArgumentError("masses must be finite and nonnegative")
        total = math.fsum(masses.values())
        if abs(total - 1.0) > 1e-9:
            raise InvalidArgumentError(f"masses sum to {total}, not 1")
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_weights(cls, weights: Mapping[Hashable, float]):
        total = math.fsum(weights.values())
        return cls({k: w / total for k, w in weights.items()})

    def entropy(self) -> float:
        return _shannon(self.masses.values())

    def prob(self, outcome) -> float:
        return self.masses.get(outcome, 0.0)


def _shannon(probs):
    return -math.fsum(p * math.log2(p) for p in probs if p > 0)


class ConditionalEntropyCheck(NamedTuple):
    h: float
    h_conditional: float
    holds: bool
    bound: float


def conditional_entropy_bound_check(X: FiniteDistribution, x0) -> ConditionalEntropyCheck:
    """Compare ``H(X | X != x0)`` with ``H(X) / P[X != x0]``."""
    p0 = X.prob(x0)
    p_other = math.fsum(p for o, p in X.masses.items() if o != x0)
    if p_other <= 0:
        raise InvalidArgumentError(f"P[X = {x0!r}] = 1, so the conditional is undefined")
    h = X.entropy()
    h_cond = _shannon(p / p_other for o, p in X.masses.items() if o != x0)
    bound = h / p_other
    return ConditionalEntropyCheck(h, h_cond, h_cond <= bound + 1e-12 * max(1.0, bound), bound)


@dataclass
class ClosenessReport:
    """Outcome of the entropy-constrained closeness check.

    ``close`` is the epsilon-close branch.  Unless the distance is strictly
    below ``eps``, ``fraction`` must reach ``bound = k ** (-2 (eps^2+1) / eps^2)``
    and the intermediate quantities are reported next to their bounds.
    """

    n: int
    k: float
    eps: float
    distance: float
    conv_entropy: float
    conv_norm_sq: float
    close: bool
    fraction: float
    bound: float | None = None
    conv_norm_bound: float | None = None
    p_nonzero: float | None = None
    p_nonzero_bound: float | None = None
    g_entropy: float | None = None
    g_entropy_bound: float | None = None
    checks: dict = field(default_factory=dict)

    @property
    def holds(self):
        return all(self.checks.values())

    def to_dict(self):
        d = asdict(self)
        d["holds"] = self.holds
        return d


def closeness_exponent(eps) -> float:
    """Exponent ``2 (eps^2+1) / eps^2`` applied to ``k`` in the far branch."""
    e2 = eps * eps
    return 2.0 * (e2 + 1.0) / e2


def check_closeness_theorem(f: DenseFunction, k: float, eps: float, rtol=1e-6, htol=1e-9,
                            tol=SUPPORT_TOL) -> ClosenessReport:
    """Check the dichotomy for a function with ``|f|^2 = 2**n`` whose squared
    spectrum ``fhat*fhat`` has normalized entropy at most ``2 log2 k``.

    Either ``f`` is ``eps``-close to Boolean, or the non-Boolean fraction is
    at least ``k ** -(2 (eps^2+1)/eps^2)``.
    """
    k = float(k)
    eps = float(eps)
    if not k > 1:
        raise InvalidArgumentError(f"k must exceed 1, got {k}")
    if not eps > 0:
        raise InvalidArgumentError(f"eps must be positive, got {eps}")
    size = float(len(f))
    norm_sq = float(np.sum(f.values * f.values))
    if abs(norm_sq - size) > rtol * size:
        raise InvalidArgumentError(f"precondition |f|^2 = 2^n violated: |f|^2 = {norm_sq}, 2^n = {size:g}")
    fhat = wht_forward(f)
    conv = convolve_fast(fhat, fhat)
    conv_norm = l2_norm(conv)
    h_conv = entropy(conv / conv_norm)
    if h_conv > 2 * math.log2(k) + htol:
        raise InvalidArgumentError(
            f"precondition H[fhat*fhat normalized] <= 2 log2 k violated: {h_conv} > {2 * math.log2(k)}")
    dist = boolean_distance(f)
    fraction = non_boolean_fraction(f)
    report = ClosenessReport(n=f.n, k=k, eps=eps, distance=dist, conv_entropy=h_conv,
                             conv_norm_sq=conv_norm * conv_norm, close=dist <= eps, fraction=fraction)
    # the far-branch chain needs only distance >= eps, so it is also checked on the boundary
    if dist < eps * (1 - 1e-9):
        report.checks["close"] = True
        return report

    e2 = eps * eps
    expo = closeness_exponent(eps)
    report.bound = 2.0 ** (-expo * math.log2(k))
    report.conv_norm_bound = 1.0 + e2
    report.p_nonzero = float(1.0 - conv.values[0] ** 2 / report.conv_norm_sq)
    report.p_nonzero_bound = e2 / (e2 + 1.0)
    ghat = conv.values.copy()
    ghat[0] -= 1.0
    report.g_entropy = entropy(DenseFunction(ghat / np.linalg.norm(ghat)))
    report.g_entropy_bound = h_conv * (e2 + 1.0) / e2
    slack = 1e-9
    report.checks = {
        "conv_norm": report.conv_norm_sq >= report.conv_norm_bound - slack,
        "p_nonzero": report.p_nonzero >= report.p_nonzero_bound - slack,
        "g_entropy": report.g_entropy <= report.g_entropy_bound + slack,
        "fraction": fraction >= report.bound * (1 - slack),
    }
    return report
