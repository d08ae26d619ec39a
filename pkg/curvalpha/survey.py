"""
Alpha sweeps and lattice scans

Sweeps sample one plane on a rational alpha grid; scans run the threshold
search over a box of wave vectors and several eps directions.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .alpha import DEFAULT_DIGITS, DEFAULT_TOLERANCE, find_alpha0
from .core import Beta, TorusGeometry, UNIT_TORUS, WaveVector, as_fraction
from .curvature import CurvatureRoute, cos_cos_bracket, sectional_cos_cos_normalized
from .polynomial import sign, sqrt_approx

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    """One sample of the cos/cos curvature; all values exact"""
    alpha: Fraction
    curvature_raw: Fraction
    curvature_normalized: Fraction
    bracket_sign: int


def alpha_grid(alpha_min: Fraction, alpha_max: Fraction, steps: int) -> List[Fraction]:
    """``steps`` evenly spaced rational alphas from alpha_min to alpha_max inclusive"""
    lo, hi = as_fraction(alpha_min), as_fraction(alpha_max)
    if steps < 2:
        raise ValueError(f"A sweep needs at least 2 steps, got {steps}")
    if lo < 0:
        raise ValueError(f"alpha-min must be non-negative, got {lo}")
    if hi <= lo:
        raise ValueError(f"alpha-max must exceed alpha-min, got [{lo}, {hi}]")
    width = hi - lo
    return [lo + width * i / (steps - 1) for i in range(steps)]


def sweep(
    k: WaveVector,
    l: WaveVector,
    alpha_min: Fraction,
    alpha_max: Fraction,
    steps: int,
    geom: TorusGeometry = UNIT_TORUS,
) -> List[SweepRow]:
    rows = []
    for alpha in alpha_grid(alpha_min, alpha_max, steps):
        beta = Beta(alpha * alpha)
        result = sectional_cos_cos_normalized(k, l, beta, geom, CurvatureRoute.R_SUM)
        rows.append(
            SweepRow(
                alpha=alpha,
                curvature_raw=result.raw,
                curvature_normalized=result.normalized,
                bracket_sign=sign(cos_cos_bracket(k, l, beta)),
            )
        )
    logger.info("swept k=%s l=%s over %d alphas", k, l, len(rows))
    return rows


def sign_changes(rows: Sequence[SweepRow]) -> int:
    signs = [row.bracket_sign for row in rows if row.bracket_sign != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class ScanRecord:
    """Threshold search outcome for l = k + eps"""
    k: WaveVector
    eps: WaveVector
    alpha0: Optional[Fraction]
    alpha0_times_knorm: Optional[Fraction]
    b3_positive: bool
    k_dot_eps: int
    exists: bool
    below_cap: bool
    reason: Optional[str]

    @property
    def key(self) -> Tuple[WaveVector, WaveVector]:
        return (self.k, self.eps)

    @property
    def eligible(self) -> bool:
        return self.k_dot_eps != 0


@dataclass
class ScanSummary:
    records: int
    eligible: int
    with_threshold: int
    alpha0_times_knorm: Dict[str, Optional[float]]
    exceptions: List[Dict[str, str]] = field(default_factory=list)

    @property
    def fraction_below_cap(self) -> Optional[float]:
        if self.eligible == 0:
            return None
        return self.with_threshold / self.eligible

    def to_dict(self, fingerprint: Optional[str] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "records": self.records,
            "eligible": self.eligible,
            "with_threshold": self.with_threshold,
            "fraction_below_cap": self.fraction_below_cap,
            "alpha0_times_knorm": self.alpha0_times_knorm,
            "exceptions": self.exceptions,
        }
        if fingerprint is not None:
            data["fingerprint"] = fingerprint
        return data


def scan_pairs(kmin: int, kmax: int, eps_list: Sequence[WaveVector]) -> List[Tuple[WaveVector, WaveVector]]:
    """Admissible (k, eps): k in the box, k and eps nonzero, k + eps not +-k"""
    if kmax < kmin:
        raise ValueError(f"kmax must be at least kmin, got [{kmin}, {kmax}]")
    pairs = []
    for k1 in range(kmin, kmax + 1):
        for k2 in range(kmin, kmax + 1):
            k = WaveVector(k1, k2)
            if k.is_zero:
                continue
            for eps in eps_list:
                l = k + eps
                if eps.is_zero or l.is_zero or l == -k:
                    continue
                pairs.append((k, eps))
    return pairs


class ScanEngine:
    """Runs the threshold search over a lattice box on a worker pool"""

    def __init__(
        self,
        threads: int = 1,
        tolerance: Fraction = DEFAULT_TOLERANCE,
        digits: int = DEFAULT_DIGITS,
        alpha_cap: Fraction = Fraction(1),
    ):
        if threads < 1:
            raise ValueError(f"threads must be at least 1, got {threads}")
        self.threads = threads
        self.tolerance = tolerance
        self.digits = digits
        self.alpha_cap = as_fraction(alpha_cap)

    def scan_one(self, k: WaveVector, eps: WaveVector) -> ScanRecord:
        result = find_alpha0(k, k + eps, tolerance=self.tolerance, digits=self.digits)
        times_knorm = None
        if result.exists and result.beta_hi is not None:
            times_knorm = sqrt_approx(result.beta_hi * k.norm2(), self.digits)
        return ScanRecord(
            k=k,
            eps=eps,
            alpha0=result.alpha0,
            alpha0_times_knorm=times_knorm,
            b3_positive=result.poly.b3 > 0,
            k_dot_eps=k.dot(eps),
            exists=result.exists,
            below_cap=result.below_cap(self.alpha_cap),
            reason=result.reason,
        )

    def run(self, kmin: int, kmax: int, eps_list: Sequence[WaveVector]) -> List[ScanRecord]:
        """Scan every admissible pair; records come back sorted by (k, eps)"""
        pairs = scan_pairs(kmin, kmax, eps_list)
        logger.info("scanning %d pairs on %d thread(s)", len(pairs), self.threads)
        collected: Dict[Tuple[WaveVector, WaveVector], ScanRecord] = {}
        if self.threads == 1:
            for k, eps in pairs:
                collected[(k, eps)] = self.scan_one(k, eps)
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                futures = {pool.submit(self.scan_one, k, eps): (k, eps) for k, eps in pairs}
                for future in as_completed(futures):
                    collected[futures[future]] = future.result()
        return [collected[key] for key in sorted(collected)]


def summarize(records: Sequence[ScanRecord]) -> ScanSummary:
    """Statistics over records with (k, eps) != 0"""
    eligible = [r for r in records if r.eligible]
    with_threshold = [r for r in eligible if r.exists and r.below_cap]
    values = np.array(
        [float(r.alpha0_times_knorm) for r in eligible if r.alpha0_times_knorm is not None],
        dtype=float,
    )
    stats: Dict[str, Optional[float]] = {"min": None, "max": None, "median": None, "spread": None}
    if values.size:
        low, high = float(np.min(values)), float(np.max(values))
        stats = {
            "min": low,
            "max": high,
            "median": float(np.median(values)),
            "spread": high / low if low > 0 else None,
        }
    exceptions = [
        {"k": str(r.k), "eps": str(r.eps)} for r in eligible if not (r.exists and r.below_cap)
    ]
    return ScanSummary(
        records=len(records),
        eligible=len(eligible),
        with_threshold=len(with_threshold),
        alpha0_times_knorm=stats,
        exceptions=exceptions,
    )
