"""Integer relation detection: PSLQ in tolerance-only mode, with an LLL
backend for cross-validation, and the return-on-investment significance score.

The PSLQ here follows the standard lattice iteration (LQ decomposition,
nearest-integer Hermite reduction, gamma-weighted row selection with pair
exchange) in fixed-point big-integer arithmetic, but succeeds on exactly one
condition: a candidate whose independently recomputed residual is at or below
2**-(tolerance_fraction * prec_bits).  Step-count and coefficient-bound stops
are disabled; the run can only fail by precision exhaustion or by the
rebounding failsafe (best precision decaying to less than half its peak after
a grace period).
"""
from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2
import mpmath as mp
from mpmath.libmp import to_fixed

from .errors import PrecisionError
from .numerics import Real, effective_error, precision_of
from .lll import lll_reduce

_GUARD = 64
_GAMMA_MIN = 2 / math.sqrt(3)


def _as_fraction(x) -> Fraction:
    # floats go through their decimal text so 0.65 means 13/20, not the
    # nearest double's 2**-53 expansion
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class EngineConfig:
    prec_bits: int = 1000
    tolerance_fraction: Fraction = Fraction(3, 4)
    roi_cutoff: Fraction = Fraction(2)
    grace_steps: int = 100
    gamma: float = 1.1548
    backend: str = 'pslq'
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'tolerance_fraction', _as_fraction(self.tolerance_fraction))
        object.__setattr__(self, 'roi_cutoff', _as_fraction(self.roi_cutoff))
        if not 0 < self.tolerance_fraction < 1:
            raise ValueError('tolerance_fraction must be in (0, 1)')
        if self.tolerance_fraction * self.prec_bits < 16:
            raise ValueError('tolerance_fraction * prec_bits must be at least 16')
        if self.gamma <= _GAMMA_MIN:
            raise ValueError(f'gamma must exceed 2/sqrt(3) ~ {_GAMMA_MIN:.4f}')
        if self.backend not in ('pslq', 'lll'):
            raise ValueError(f'unknown backend {self.backend!r}')

    @property
    def tolerance_bits(self) -> Fraction:
        return self.tolerance_fraction * self.prec_bits


@dataclass(frozen=True)
class IntRelation:
    """Normalized integer relation: gcd 1, first nonzero coefficient positive."""
    coeffs: tuple
    residual: mp.mpf          # upper bound on |sum a_i x_i|, recomputed exactly
    precision_bits: int
    roi: Fraction

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError('relation must have a nonzero coefficient')


def rebound_triggered(step: int, grace_steps: int, p_current: int,
                      p_best: int) -> bool:
    """Failsafe rule: after the grace period, abort a run whose current
    candidate precision has fallen below half its best-ever value."""
    return step > grace_steps and 2 * p_current < p_best


def normalize_coeffs(vec: Sequence[int]) -> tuple:
    g = 0
    for v in vec:
        g = math.gcd(g, abs(int(v)))
    if g == 0:
        raise ValueError('zero vector is not a relation')
    out = [int(v) // g for v in vec]
    first = next(v for v in out if v)
    if first < 0:
        out = [-v for v in out]
    return tuple(out)


def score_roi(rel: IntRelation, n: int) -> Fraction:
    """precision / (count of nonzero integers + their total bit length).

    ``n`` is the input vector length; zero coefficients spend nothing, which
    matches the information-counting argument behind the score.
    """
    if len(rel.coeffs) != n:
        raise ValueError('coefficient count does not match input count')
    return _roi(rel.coeffs, rel.precision_bits)


def _roi(coeffs, precision_bits: int) -> Fraction:
    spend = sum(1 + abs(c).bit_length() for c in coeffs if c)
    return Fraction(max(precision_bits, 0), spend)


def is_significant(rel: IntRelation, cfg: EngineConfig) -> bool:
    return rel.roi >= cfg.roi_cutoff


def _threshold_fixed(cfg: EngineConfig, fixed_prec: int) -> int:
    """floor(2**(fixed_prec - tolerance_bits)) exactly (iroot for fractional)."""
    t = Fraction(fixed_prec) - cfg.tolerance_bits
    if t.denominator == 1:
        return 1 << int(t)
    root, _ = gmpy2.iroot(gmpy2.mpz(1) << (t.numerator), t.denominator)
    return int(root)


def _validate_inputs(x: Sequence[Real], cfg: EngineConfig):
    if len(x) < 2:
        raise ValueError('need at least two values')
    for r in x:
        if not isinstance(r, Real):
            raise TypeError('engine inputs must be Real')
        if r.value == 0:
            raise ValueError('engine inputs must be nonzero')
        if r.prec_bits < cfg.prec_bits:
            raise PrecisionError(
                f'input carries {r.prec_bits} bits < working {cfg.prec_bits}')
    thr_bits = cfg.tolerance_bits
    for r in x:
        if r.err != 0 and precision_of(r.err) < thr_bits:
            raise PrecisionError(
                'insufficient precision: input error exceeds the tolerance target')


def _certify(vec, X, x, cfg: EngineConfig, F: int) -> Optional[IntRelation]:
    """Exact residual check of a candidate against the success tolerance."""
    try:
        coeffs = normalize_coeffs(vec)
    except ValueError:
        return None
    acc = 0
    slack = 0
    for a, xf in zip(coeffs, X):
        acc += a * xf
        slack += abs(a)
    bound = abs(acc) + slack  # fixed-point rounding of each X_i is < 1 ulp
    if bound > _threshold_fixed(cfg, F):
        return None
    with mp.workprec(_GUARD):
        residual = mp.ldexp(mp.mpf(int(bound)), -F) if bound else mp.mpf(0)
    err = effective_error(residual, [r.err for r in x])
    precision = min(precision_of(err, prec_bits=cfg.prec_bits), cfg.prec_bits)
    coeffs = tuple(int(c) for c in coeffs)
    return IntRelation(coeffs, residual, precision, _roi(coeffs, precision))


@dataclass
class RunDiagnostics:
    steps: int = 0
    outcome: str = ''
    failsafe_step: Optional[int] = None
    best_precision: int = 0
    candidate_rejections: int = 0


def pslq(x: Sequence[Real], cfg: EngineConfig,
         diagnostics: Optional[RunDiagnostics] = None) -> Optional[IntRelation]:
    """Tolerance-only PSLQ.  Returns a certified relation or None.

    None means the run terminated without a certified relation, either by the
    rebounding failsafe or by exhausting the working precision; an input whose
    own error bound is too large to certify anything raises PrecisionError
    instead.
    """
    _validate_inputs(x, cfg)
    diag = diagnostics if diagnostics is not None else RunDiagnostics()
    n = len(x)
    F = cfg.prec_bits + _GUARD
    one = gmpy2.mpz(1) << F

    def fmul(a, b):
        return (a * b) >> F

    def fdiv(a, b):
        return (a << F) // b

    def fround(a, b):
        # nearest integer to a/b (ties toward +inf)
        if b < 0:
            a, b = -a, -b
        return (2 * a + b) // (2 * b)

    def fsqrt(a):
        return gmpy2.isqrt(a << F)

    X = [gmpy2.mpz(to_fixed(r.value._mpf_, F)) for r in x]

    # partial norms s_k = sqrt(sum_{j>=k} x_j^2), then normalize y = x/s_0
    s = [gmpy2.mpz(0)] * n
    acc = gmpy2.mpz(0)
    for k in range(n - 1, -1, -1):
        acc += fmul(X[k], X[k])
        s[k] = fsqrt(acc)
    t = s[0]
    y = [fdiv(xk, t) for xk in X]
    s = [fdiv(sk, t) for sk in s]

    H = [[gmpy2.mpz(0)] * (n - 1) for _ in range(n)]
    for i in range(n):
        if i < n - 1 and s[i]:
            H[i][i] = fdiv(s[i + 1], s[i])
        for j in range(i):
            denom = fmul(s[j], s[j + 1])
            if denom:
                H[i][j] = -fdiv(fmul(y[i], y[j]), denom)

    B = [[gmpy2.mpz(1) if i == j else gmpy2.mpz(0) for j in range(n)] for i in range(n)]

    def hermite_reduce(i, j):
        if not H[j][j]:
            return False
        q = fround(H[i][j], H[j][j])
        if q:
            y[j] += q * y[i]
            for k in range(j + 1):
                H[i][k] -= q * H[j][k]
            for k in range(n):
                B[k][j] += q * B[k][i]
        return True

    for i in range(1, n):
        for j in range(i - 1, -1, -1):
            hermite_reduce(i, j)

    # candidate trigger: generous (4x) threshold in normalized y units
    thr_bits_ceil = math.ceil(cfg.tolerance_bits)
    trigger = ((gmpy2.mpz(1) << (2 * F - thr_bits_ceil + 2)) // t) + 1

    gamma_fixed = gmpy2.mpz(to_fixed(mp.mpf(cfg.gamma)._mpf_, F))
    best_precision = None
    last_rejected = None
    step = 0
    emergency = 20000 + 200 * n * cfg.prec_bits

    while True:
        step += 1
        diag.steps = step
        if step > emergency:
            raise RuntimeError('PSLQ emergency step cap hit; this is a bug')

        # gamma-weighted row selection
        m, best = -1, gmpy2.mpz(-1)
        w = one
        for i in range(n - 1):
            w = fmul(w, gamma_fixed)
            sz = fmul(w, abs(H[i][i]))
            if sz > best:
                m, best = i, sz
        if best <= 0:
            diag.outcome = 'exhausted'
            return None

        y[m], y[m + 1] = y[m + 1], y[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        for row in B:
            row[m], row[m + 1] = row[m + 1], row[m]

        if m <= n - 3:
            t0 = fsqrt(fmul(H[m][m], H[m][m]) + fmul(H[m][m + 1], H[m][m + 1]))
            if not t0:
                diag.outcome = 'exhausted'
                return None
            t1, t2 = fdiv(H[m][m], t0), fdiv(H[m][m + 1], t0)
            for i in range(m, n):
                him, him1 = H[i][m], H[i][m + 1]
                H[i][m] = fmul(t1, him) + fmul(t2, him1)
                H[i][m + 1] = fmul(t1, him1) - fmul(t2, him)

        for i in range(m + 1, n):
            for j in range(min(i - 1, m + 1), -1, -1):
                hermite_reduce(i, j)

        # candidate inspection and rebounding bookkeeping
        min_y, min_idx = None, -1
        for i in range(n):
            ay = abs(y[i])
            if min_y is None or ay < min_y:
                min_y, min_idx = ay, i
        if min_y <= trigger:
            vec = tuple(int(B[k][min_idx]) for k in range(n))
            if vec != last_rejected:
                rel = _certify(vec, X, x, cfg, F)
                if rel is not None:
                    diag.outcome = 'found'
                    return rel
                # a near-relation below the trigger but above tolerance;
                # leave the loop to the rebound/exhaustion terminators
                last_rejected = vec
                diag.candidate_rejections += 1

        p_current = F - (min_y.bit_length() if min_y else 0)
        if best_precision is None or p_current > best_precision:
            best_precision = p_current
            diag.best_precision = max(diag.best_precision, p_current)
        elif rebound_triggered(step, cfg.grace_steps, p_current, best_precision):
            diag.outcome = 'rebound'
            diag.failsafe_step = step
            return None


def lll_relation(x: Sequence[Real], cfg: EngineConfig,
                 diagnostics: Optional[RunDiagnostics] = None) -> Optional[IntRelation]:
    """LLL backend: reduce the identity-plus-scaled-column relation lattice and
    test the shortest reduced vector against the same tolerance as pslq."""
    _validate_inputs(x, cfg)
    diag = diagnostics if diagnostics is not None else RunDiagnostics()
    n = len(x)
    P = cfg.prec_bits
    F = P + _GUARD
    X = [gmpy2.mpz(to_fixed(r.value._mpf_, F)) for r in x]
    scale = [int(c >> _GUARD) for c in X]  # round toward zero at 2**prec_bits
    basis = [[1 if j == i else 0 for j in range(n)] + [scale[i]] for i in range(n)]
    reduced = lll_reduce(basis)
    best, best_norm = None, None
    for row in reduced:
        if not any(row[:n]):
            continue
        norm = sum(v * v for v in row)
        if best_norm is None or norm < best_norm:
            best, best_norm = row, norm
    diag.steps = 1
    rel = _certify(best[:n], X, x, cfg, F) if best else None
    diag.outcome = 'found' if rel else 'no-relation'
    return rel


def find_relation(x: Sequence[Real], cfg: EngineConfig,
                  diagnostics: Optional[RunDiagnostics] = None) -> Optional[IntRelation]:
    backend = pslq if cfg.backend == 'pslq' else lll_relation
    return backend(x, cfg, diagnostics)


@dataclass(frozen=True)
class ExperimentRow:
    backend: str
    n: int
    d: int
    trials: int
    found: int
    mean_roi: float   # run RoI: working precision d over the bits spent
    std_roi: float
    max_roi: float
    mean_residual_roi: float  # the relations' own residual-based RoI
    std_residual_roi: float
    max_residual_roi: float
    seed: int
    rois: tuple = field(repr=False, default=())
    residual_rois: tuple = field(repr=False, default=())


def roi_experiment(backend: str, n_values: Sequence[int], trials: int,
                   precision_rule, tolerance_fraction=Fraction(13, 20),
                   seed: int = 0) -> list:
    """Run `trials` relation searches per n on uniform-random inputs of d
    random bits, d = precision_rule(n) being the working precision.

    Two statistics are collected for every junk relation the backend returns
    at tolerance.  The headline RoI of a run charges the relation at the full
    working precision d (the information-counting view: d digits of precision
    were available, n + d1 + d2 + ... were spent), which is what the
    constant-RoI reference curves describe; for a genuine relation the two
    views coincide.  The residual-based RoI of each relation, the quantity the
    significance cutoff is applied to, is reported alongside.
    """
    if trials < 1:
        raise ValueError('trials must be positive')
    rows = []
    for n in n_values:
        d = int(precision_rule(n))
        cfg = EngineConfig(prec_bits=d, tolerance_fraction=tolerance_fraction,
                           backend=backend, seed=seed)
        run_rois = []
        rel_rois = []
        found = 0
        for trial in range(trials):
            rng = random.Random(f'{seed}:{backend}:{n}:{d}:{trial}')
            xs = []
            for _ in range(n):
                k = 0
                while k == 0:
                    k = rng.getrandbits(d)
                with mp.workprec(d + 8):
                    xs.append(Real(mp.ldexp(mp.mpf(k), -d), prec_bits=d + 8))
            rel = find_relation(xs, cfg)
            if rel is not None:
                found += 1
                spend = sum(1 + abs(c).bit_length() for c in rel.coeffs if c)
                run_rois.append(d / spend)
                rel_rois.append(float(rel.roi))

        def _stats(vals):
            if not vals:
                return math.nan, 0.0, math.nan
            return (statistics.fmean(vals),
                    statistics.stdev(vals) if len(vals) > 1 else 0.0,
                    max(vals))

        m, s, mx = _stats(run_rois)
        mr, sr, mxr = _stats(rel_rois)
        rows.append(ExperimentRow(backend, n, d, trials, found, m, s, mx,
                                  mr, sr, mxr, seed, tuple(run_rois),
                                  tuple(rel_rois)))
    return rows


def experiment_table(rows: Sequence[ExperimentRow]) -> str:
    header = f'{"backend":8} {"n":>3} {"d":>5} {"trials":>6} {"found":>5} ' \
             f'{"mean_roi":>9} {"std_roi":>8} {"max_roi":>8} ' \
             f'{"mean_res":>9} {"max_res":>8}'
    lines = [header, '-' * len(header)]
    for r in rows:
        lines.append(f'{r.backend:8} {r.n:>3} {r.d:>5} {r.trials:>6} {r.found:>5} '
                     f'{r.mean_roi:>9.3f} {r.std_roi:>8.3f} {r.max_roi:>8.3f} '
                     f'{r.mean_residual_roi:>9.3f} {r.max_residual_roi:>8.3f}')
    return '\n'.join(lines)


def experiment_csv(rows: Sequence[ExperimentRow]) -> str:
    lines = ['backend,n,d,trials,mean_roi,std_roi,seed,found,max_roi,'
             'mean_residual_roi,std_residual_roi,max_residual_roi']
    for r in rows:
        lines.append(f'{r.backend},{r.n},{r.d},{r.trials},'
                     f'{r.mean_roi:.6f},{r.std_roi:.6f},{r.seed},{r.found},'
                     f'{r.max_roi:.6f},{r.mean_residual_roi:.6f},'
                     f'{r.std_residual_roi:.6f},{r.max_residual_roi:.6f}')
    return '\n'.join(lines) + '\n'
