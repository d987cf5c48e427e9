"""Seeded samplers for the statistical cultures used in the experiments.

Supported kinds and their textual forms::

    id                  identity
    ic                  impartial culture
    urn(alpha=A)        Polya-Eggenberger urn
    mallows(normphi=P)  Mallows with normalised dispersion
    1d                  1D interval
    walsh               uniform single-peaked (axis 0 < 1 < ... < m-1)
    conitzer            random peak, then coin-flip extension
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import Election, InvalidArgumentError

KINDS = ("id", "ic", "urn", "mallows", "1d", "walsh", "conitzer")
_PARAMS = {"urn": "alpha", "mallows": "normphi"}
_SPEC_RE = re.compile(r"^\s*([a-z0-9]+)\s*(?:\(\s*(\w+)\s*=\s*([^)\s]+)\s*\))?\s*$")


@dataclass(frozen=True)
class CultureSpec:
    kind: str
    m: int
    n: int
    seed: int = 0
    param: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgumentError(f"unknown culture {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise InvalidArgumentError("need m >= 1 and n >= 1")
        if self.kind in _PARAMS:
            if self.param is None:
                raise InvalidArgumentError(f"{self.kind} needs parameter {_PARAMS[self.kind]}")
            if self.kind == "urn" and self.param < 0:
                raise InvalidArgumentError("urn alpha must be nonnegative")
            if self.kind == "mallows" and not 0 <= self.param <= 1:
                raise InvalidArgumentError("mallows normphi must lie in [0, 1]")
        elif self.param is not None:
            raise InvalidArgumentError(f"{self.kind} takes no parameter")

    @classmethod
    def parse(cls, text: str, m: int, n: int, seed: int = 0) -> "CultureSpec":
        kind, param = parse_model(text)
        return cls(kind, m, n, seed, param)

    @property
    def model(self) -> str:
        return format_model(self.kind, self.param)


def parse_model(text: str) -> tuple[str, float | None]:
    """Parse ``urn(alpha=0.1)``-style model text into ``(kind, parameter)``."""
    match = _SPEC_RE.match(text.lower())
    if not match:
        raise InvalidArgumentError(f"malformed culture {text!r}")
    kind, key, value = match.groups()
    if kind not in KINDS:
        raise InvalidArgumentError(f"unknown culture {kind!r}; expected one of {', '.join(KINDS)}")
    expected = _PARAMS.get(kind)
    if expected is None:
        if key is not None:
            raise InvalidArgumentError(f"{kind} takes no parameter")
        return kind, None
    if key != expected:
        raise InvalidArgumentError(f"{kind} needs parameter {expected}=...")
    try:
        number = float(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise InvalidArgumentError(f"bad number {value!r} in {text!r}") from None
    return kind, number


def _format_number(x: float) -> str:
    short = f"{x:g}"
    if float(short) == x:
        return short
    frac = Fraction(x).limit_denominator(1000)
    if float(frac) == x:
        return f"{frac.numerator}/{frac.denominator}"
    return repr(x)


def format_model(kind: str, param: float | None = None) -> str:
    """Canonical text of a model; parsing it back gives the same parameter."""
    if kind in _PARAMS:
        return f"{kind}({_PARAMS[kind]}={_format_number(param)})"
    return kind


# -- Mallows calibration -----------------------------------------------------


def _mean_displacement(i: int, phi: float) -> float:
    """Mean of d in {0..i} with P(d) proportional to phi**d."""
    weights = [phi**d for d in range(i + 1)]
    return sum(d * w for d, w in enumerate(weights)) / sum(weights)


def expected_swaps(m: int, phi: float) -> float:
    """Expected swap distance of a Mallows(phi) vote from its centre.

    Under repeated insertion the i-th inserted candidate adds a truncated
    geometric number of inversions, independent across steps.
    """
    if not 0 <= phi <= 1:
        raise InvalidArgumentError("phi must lie in [0, 1]")
    return sum(_mean_displacement(i, phi) for i in range(m))


@lru_cache(maxsize=None)
def calibrate_mallows_phi(m: int, normphi: float, tol: float = 1e-12) -> float:
    """The phi whose expected swap distance is ``normphi * m(m-1)/4``."""
    if not 0 <= normphi <= 1:
        raise InvalidArgumentError("normphi must lie in [0, 1]")
    if normphi == 0:
        return 0.0
    if normphi == 1:
        return 1.0
    target = normphi * m * (m - 1) / 4
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if expected_swaps(m, mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# -- samplers ----------------------------------------------------------------


def _perm(rng: np.random.Generator, m: int) -> tuple[int, ...]:
    return tuple(int(c) for c in rng.permutation(m))


def sample_identity(m, n, rng):
    vote = _perm(rng, m)
    return [vote] * n


def sample_ic(m, n, rng):
    return [_perm(rng, m) for _ in range(n)]


def sample_urn(m, n, alpha, rng):
    """Lazy urn: vote i (0-based) is fresh with probability 1/(1 + i*alpha),
    otherwise a copy of a uniformly chosen earlier vote."""
    votes = []
    for i in range(n):
        if rng.random() * (1 + i * alpha) < 1:
            votes.append(_perm(rng, m))
        else:
            votes.append(votes[int(rng.integers(i))])
    return votes


def sample_mallows(m, n, normphi, rng):
    phi = calibrate_mallows_phi(m, normphi)
    center = _perm(rng, m)
    # insertion step i: P(i - j inversions) ~ phi**(i - j)
    tables = []
    for i in range(m):
        w = np.array([phi**d for d in range(i + 1)])
        tables.append(np.cumsum(w / w.sum()))
    votes = []
    for _ in range(n):
        vote: list[int] = []
        draws = rng.random(m)
        for i, c in enumerate(center):
            d = min(int(np.searchsorted(tables[i], draws[i], side="right")), i)
            vote.insert(i - d, c)
        votes.append(tuple(vote))
    return votes


def sample_interval_1d(m, n, rng):
    """Returns the votes and the axis (candidates sorted by position)."""
    points = rng.random(m)
    votes = []
    for _ in range(n):
        x = rng.random()
        dist = np.abs(points - x)
        # lexsort: last key is primary; ties go to the lower index
        votes.append(tuple(int(c) for c in np.lexsort((np.arange(m), dist))))
    axis = [int(c) for c in np.lexsort((np.arange(m), points))]
    return votes, axis


def sample_walsh(m, n, rng):
    """Uniform over the 2**(m-1) votes single-peaked on 0 < ... < m-1: the
    vote is built from the bottom by removing an end of the remaining
    interval with a fair coin."""
    votes = []
    for _ in range(n):
        lo, hi = 0, m - 1
        bottom_up = []
        for flip in rng.integers(2, size=m - 1):
            if flip:
                bottom_up.append(hi)
                hi -= 1
            else:
                bottom_up.append(lo)
                lo += 1
        bottom_up.append(lo)
        votes.append(tuple(reversed(bottom_up)))
    return votes


def sample_conitzer(m, n, rng):
    votes = []
    for _ in range(n):
        peak = int(rng.integers(m))
        lo = hi = peak
        vote = [peak]
        while len(vote) < m:
            if lo == 0:
                go_right = True
            elif hi == m - 1:
                go_right = False
            else:
                go_right = bool(rng.integers(2))
            if go_right:
                hi += 1
                vote.append(hi)
            else:
                lo -= 1
                vote.append(lo)
        votes.append(tuple(vote))
    return votes


def sample_votes(kind: str, m: int, n: int, param, rng: np.random.Generator) -> list[tuple[int, ...]]:
    if kind == "id":
        return sample_identity(m, n, rng)
    if kind == "ic":
        return sample_ic(m, n, rng)
    if kind == "urn":
        return sample_urn(m, n, param, rng)
    if kind == "mallows":
        return sample_mallows(m, n, param, rng)
    if kind == "1d":
        return sample_interval_1d(m, n, rng)[0]
    if kind == "walsh":
        return sample_walsh(m, n, rng)
    if kind == "conitzer":
        return sample_conitzer(m, n, rng)
    raise InvalidArgumentError(f"unknown culture {kind!r}")


def sample(spec: CultureSpec, rng: np.random.Generator | None = None) -> Election:
    """Draw an election; deterministic in ``spec.seed`` unless ``rng`` is given."""
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    return Election(spec.m, sample_votes(spec.kind, spec.m, spec.n, spec.param, rng))
