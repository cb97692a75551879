"""Finite-order mutual-information experiments for square-law detection.

The central question: how many bits per coefficient dimension does a
receiver lose by seeing only |y(t)|^2 instead of y(t)? Ambiguity classes
are finite (at most 2^(2m+1) members), so conditioning on the measurement
leaves at most 2m+1 + log2(m) bits of residual uncertainty, i.e. a loss of
at most 1 + log2(m)/(2m+1) bits per dimension. The experiments here make
that concrete on finite constellations: exact entropies, a grid-quantized
DC phase as the auxiliary observable, and discrete noise surrogates for
the channel.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .ambiguity import enumerate_classes
from .errors import (
    DomainError,
    DuplicateSignals,
    InvalidNoiseSpec,
    NonInvertibleOnRange,
    OutOfRange,
    UnsupportedOrder,
    ZeroArgument,
    ZeroDC,
)
from .roots import conj_reciprocal  # noqa: F401  (re-exported for experiment scripts)
from .signals import TrigPoly, autocorrelation


@dataclass(frozen=True, eq=False)
class PhaseGrid:
    """The m-point angular grid {0, +-2pi/m, ...} folded into [-pi, pi)."""

    m: int
    step: float = field(init=False)
    levels: tuple = field(init=False)

    def __post_init__(self):
        m = int(self.m)
        if m < 1:
            raise UnsupportedOrder("phase grid needs m >= 1")
        step = 2 * np.pi / m
        levels = set()
        for j in range(-(m // 2), m // 2 + 1):
            angle = j * step
            if angle >= np.pi:
                angle -= 2 * np.pi
            levels.add(float(angle))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "step", float(step))
        object.__setattr__(self, "levels", tuple(sorted(levels)))


def _quantize_raw(grid, theta):
    # floor((theta + pi/m) / step) * step; ties resolve counterclockwise
    half = np.pi / grid.m
    return math.floor((theta + half) / grid.step) * grid.step


def quantize_phase(grid, theta):
    """Snap an angle in [-pi, pi) to the nearest grid level.

    The raw floor formula can emit +pi for angles near the top of the
    range; that value is folded back to -pi so the result always lies in
    the level set.
    """
    theta = float(theta)
    if not (-np.pi <= theta < np.pi):
        raise OutOfRange("angle %r outside [-pi, pi)" % theta)
    value = _quantize_raw(grid, theta)
    if value >= np.pi:
        value -= 2 * np.pi
    return float(value)


def theta_m(grid, w):
    """Rotation angle that carries arg(w) onto the grid.

    Defined by the unfolded quantizer, so the value lies in
    (-pi/m, pi/m]; rotating w by it lands the argument on a level modulo
    a full turn.
    """
    w = complex(w)
    if w == 0:
        raise ZeroArgument("zero has no argument to rotate")
    theta = float(np.angle(w))
    if theta == np.pi:
        theta = -np.pi
    return float(_quantize_raw(grid, theta) - theta)


def auxiliary_rotate(y, grid=None, strict=False):
    """Rotate a signal so the argument of its DC coefficient sits on the grid.

    The rotation is global, so |z(t)| = |y(t)| everywhere and the
    square-law measurement is untouched. A zero DC coefficient leaves no
    angle to align; the signal passes through unchanged unless
    strict=True, in which case ZeroDC is raised.
    """
    b0 = complex(y.coeffs[y.m])
    if b0 == 0:
        if strict:
            raise ZeroDC("DC coefficient is zero, rotation undefined")
        return y
    if grid is None:
        grid = PhaseGrid(y.m)
    w = np.exp(1j * theta_m(grid, b0))
    return TrigPoly(m=y.m, coeffs=y.coeffs * w, period=y.period)


@dataclass(frozen=True, eq=False)
class Constellation:
    """A finite input ensemble: signals with probabilities."""

    signals: tuple
    probs: np.ndarray

    def __post_init__(self):
        signals = tuple(self.signals)
        if not signals:
            raise DomainError("constellation needs at least one point")
        m = signals[0].m
        period = signals[0].period
        for s in signals:
            if s.m != m or s.period != period:
                raise DomainError("all constellation points must share m and period")
        probs = np.array(self.probs, dtype=float)
        if probs.shape != (len(signals),):
            raise DomainError("need one probability per signal")
        if np.any(probs <= 0):
            raise DomainError("probabilities must be positive")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise DomainError("probabilities must sum to one")
        probs.setflags(write=False)
        object.__setattr__(self, "signals", signals)
        object.__setattr__(self, "probs", probs)

    @property
    def m(self):
        return self.signals[0].m

    @property
    def period(self):
        return self.signals[0].period

    @classmethod
    def uniform(cls, signals):
        signals = tuple(signals)
        return cls(signals=signals, probs=np.full(len(signals), 1.0 / len(signals)))


def entropy_bits(probs):
    """Shannon entropy in bits of a probability vector (zeros allowed)."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum()) + 0.0


def _round_key(vec, scale, digits):
    v = np.asarray(vec) / scale
    re = np.round(v.real, digits) + 0.0
    im = np.round(v.imag, digits) + 0.0
    return re.tobytes() + im.tobytes()


def sld_keys(signals, digits=7):
    """Measurement bin key per signal: autocorrelation rounded on a common scale.

    The scale is the largest energy in the batch, so the binning is
    invariant under rescaling the whole ensemble but still separates
    genuinely different intensity levels.
    """
    seqs = [autocorrelation(s).coeffs for s in signals]
    scale = max((float(np.abs(c).max()) for c in seqs), default=1.0) or 1.0
    return [_round_key(c, scale, digits) for c in seqs]


def _vector_keys(vectors, digits=9):
    scale = max((float(np.abs(np.asarray(v)).max()) for v in vectors), default=1.0) or 1.0
    return [_round_key(v, scale, digits) for v in vectors]


def _partition_entropy(keys, probs):
    mass = {}
    for key, p in zip(keys, probs):
        mass[key] = mass.get(key, 0.0) + p
    return entropy_bits(list(mass.values()))


def _check_distinct(c):
    # same comparison ae_equal makes, batched: members share one order, so
    # the pairwise max coefficient gap against the energy-scaled band can
    # run in blocks instead of n^2 python calls
    mat = np.stack([np.asarray(s.coeffs, dtype=complex) for s in c.signals])
    energy = np.sum(np.abs(mat) ** 2, axis=1)
    n = len(c.signals)
    step = max(1, 4_000_000 // (mat.shape[1] * n))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        gap = np.abs(mat[lo:hi, None, :] - mat[None, :, :]).max(axis=2)
        band = 1e-12 * np.sqrt(np.maximum(energy[lo:hi, None], energy[None, :]))
        for row, col in zip(*np.nonzero(gap <= band)):
            i, j = lo + int(row), int(col)
            if i < j:
                raise DuplicateSignals(
                    "constellation points %d and %d coincide" % (i, j)
                )


def mi_noiseless(c, digits=7):
    """(I_xy, I_xs) for the identity channel, in bits.

    Coherent detection resolves every point, so I_xy is the input entropy.
    Square-law detection resolves only the measurement bins, so I_xs is
    the entropy of the induced partition.
    """
    _check_distinct(c)
    i_xy = entropy_bits(c.probs)
    i_xs = _partition_entropy(sld_keys(c.signals, digits), c.probs)
    return i_xy, i_xs


@dataclass(frozen=True, eq=False)
class DiscreteNoise:
    """Finite noise model for the surrogate channel.

    kind "additive": offsets is a (K, 2m+1) complex array of coefficient
    perturbations with probability vector offset_probs; the channel emits
    y + eta. kind "transition": matrix[i, j] is the probability that input
    i is received as constellation point j.
    """

    kind: str
    offsets: np.ndarray = None
    offset_probs: np.ndarray = None
    matrix: np.ndarray = None

    @classmethod
    def zero(cls, m):
        return cls.additive(np.zeros((1, 2 * m + 1), dtype=complex), [1.0])

    @classmethod
    def additive(cls, offsets, probs):
        offsets = np.atleast_2d(np.asarray(offsets, dtype=complex))
        probs = np.asarray(probs, dtype=float)
        if len(probs) != len(offsets):
            raise InvalidNoiseSpec("need one probability per offset")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
            raise InvalidNoiseSpec("offset probabilities must sum to one")
        return cls(kind="additive", offsets=offsets, offset_probs=probs)

    @classmethod
    def transition(cls, matrix):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidNoiseSpec("transition matrix must be square")
        if np.any(matrix < 0) or np.abs(matrix.sum(axis=1) - 1.0).max() > 1e-9:
            raise InvalidNoiseSpec("transition rows must sum to one")
        return cls(kind="transition", matrix=matrix)

    @classmethod
    def flip(cls, eps):
        eps = float(eps)
        if not (0 <= eps <= 1):
            raise InvalidNoiseSpec("flip probability must lie in [0, 1]")
        return cls.transition([[1 - eps, eps], [eps, 1 - eps]])


def _mi_from_joint(joint):
    joint = np.asarray(joint, dtype=float)
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    mask = joint > 0
    outer = np.outer(px, py)
    return float((joint[mask] * np.log2(joint[mask] / outer[mask])).sum())


def mi_dmc(c, noise, digits=7):
    """(I_xy, I_xs) over a discrete memoryless surrogate channel.

    Builds the exact joint distribution of input and coherent output,
    then coarsens the output alphabet by measurement bin for the
    square-law side. Binning is deterministic post-processing, so
    I_xs <= I_xy holds by construction.
    """
    _check_distinct(c)
    width = 2 * c.m + 1

    if noise.kind == "transition":
        K = len(c.signals)
        if noise.matrix.shape != (K, K):
            raise InvalidNoiseSpec(
                "transition matrix is %s but the constellation has %d points"
                % (noise.matrix.shape, K)
            )
        joint = c.probs[:, None] * noise.matrix
        out_vectors = [s.coeffs for s in c.signals]
    elif noise.kind == "additive":
        if noise.offsets.shape[1] != width:
            raise InvalidNoiseSpec(
                "offsets have %d coefficients, signals have %d"
                % (noise.offsets.shape[1], width)
            )
        out_vectors = []
        cells = []
        for i, s in enumerate(c.signals):
            for k, off in enumerate(noise.offsets):
                out_vectors.append(s.coeffs + off)
                cells.append((i, c.probs[i] * noise.offset_probs[k]))
        joint = np.zeros((len(c.signals), len(out_vectors)))
        for col, (i, mass) in enumerate(cells):
            joint[i, col] = mass
    else:
        raise InvalidNoiseSpec("unknown noise kind %r" % noise.kind)

    # coherent side: merge outputs that are the same waveform
    coh_keys = _vector_keys(out_vectors)
    i_xy = _mi_from_joint(_merge_columns(joint, coh_keys))

    sld = sld_keys(
        [TrigPoly(m=c.m, coeffs=v, period=c.period) for v in out_vectors], digits
    )
    i_xs = _mi_from_joint(_merge_columns(joint, sld))
    return i_xy, i_xs


def _merge_columns(joint, keys):
    order = {}
    for key in keys:
        order.setdefault(key, len(order))
    merged = np.zeros((joint.shape[0], len(order)))
    for col, key in enumerate(keys):
        merged[:, order[key]] += joint[:, col]
    return merged


@dataclass(frozen=True)
class GapReport:
    """Per-constellation outcome of the detection-gap experiment.

    i_xz and h_z_given_s document the auxiliary-rotation bookkeeping:
    i_xy - i_xs should equal the conditional entropy of the rotated
    signal given the measurement bin, and chain_residual measures how far
    the computed quantities drift from that identity. zero_dc counts
    constellation points whose DC coefficient vanished, where the
    rotation degenerates to a pass-through.
    """

    m: int
    i_xy: float
    i_xs: float
    i_xz: float
    h_z_given_s: float
    chain_residual: float
    per_dim_gap: float
    bound: float
    passed: bool
    zero_dc: int


def gap_experiment(c, digits=7):
    """Measure the square-law information loss of a constellation.

    Computes the noiseless mutual informations, the per-dimension gap
    (i_xy - i_xs) / (2m+1), and the finite-order ceiling
    1 + log2(m)/(2m+1) it must respect.
    """
    m = c.m
    if m < 1:
        raise UnsupportedOrder("the gap bound needs m >= 1")
    i_xy, i_xs = mi_noiseless(c, digits)

    grid = PhaseGrid(m)
    rotated = []
    zero_dc = 0
    for s in c.signals:
        if complex(s.coeffs[m]) == 0:
            zero_dc += 1
        rotated.append(auxiliary_rotate(s, grid))
    z_keys = _vector_keys([r.coeffs for r in rotated], digits)
    s_keys = sld_keys(c.signals, digits)

    i_xz = _partition_entropy(z_keys, c.probs)
    h_zs = _partition_entropy(
        [zk + sk for zk, sk in zip(z_keys, s_keys)], c.probs
    )
    h_z_given_s = h_zs - _partition_entropy(s_keys, c.probs)
    chain_residual = abs((i_xy - i_xs) - h_z_given_s)

    per_dim_gap = (i_xy - i_xs) / (2 * m + 1)
    bound = 1.0 + np.log2(m) / (2 * m + 1)
    return GapReport(
        m=m,
        i_xy=i_xy,
        i_xs=i_xs,
        i_xz=i_xz,
        h_z_given_s=h_z_given_s,
        chain_residual=chain_residual,
        per_dim_gap=per_dim_gap,
        bound=float(bound),
        passed=bool(per_dim_gap <= bound + 1e-9),
        zero_dc=zero_dc,
    )


def measurement_transform(samples, phi, inverse):
    """Push intensity samples through an invertible readout map.

    phi must be strictly monotone on the observed sample range and
    inverse must undo it there to 1e-10; anything downstream (recovering
    the sequence, factoring it) is unaffected because the original
    samples are recoverable exactly.
    """
    samples = np.asarray(samples, dtype=float)
    out = np.asarray(phi(samples), dtype=float)
    back = np.asarray(inverse(out), dtype=float)
    span = 1.0 + np.abs(samples).max()
    if np.abs(back - samples).max() > 1e-10 * span:
        raise NonInvertibleOnRange("inverse does not undo the map on these samples")
    order = np.argsort(samples)
    s_sorted = samples[order]
    o_sorted = out[order]
    # ulp-level ties (symmetric sample grids produce them) are not evidence
    # about monotonicity either way
    distinct = np.diff(s_sorted) > 1e-12 * span
    steps = np.diff(o_sorted)[distinct]
    if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
        raise NonInvertibleOnRange("map is not strictly monotone on the sample range")
    return out


def _deterministic_roots(m, q, spread=0.37):
    """q well-separated off-circle roots plus 2m - q on-circle roots."""
    locs = []
    for j in range(q):
        radius = 0.35 + 0.3 * (j / max(q - 1, 1))
        angle = 2 * np.pi * j / max(q, 1) + spread
        loc = radius * np.exp(1j * angle)
        if j % 2:
            loc = conj_reciprocal(loc)
        locs.append(loc)
    for j in range(2 * m - q):
        locs.append(np.exp(1j * (0.81 + 2 * np.pi * j / max(2 * m - q, 1))))
    return locs


def _signal_from_roots(m, locs, period=1.0):
    coeffs = np.array([1.0 + 0.0j])
    for loc in locs:
        coeffs = np.convolve(coeffs, np.array([-loc, 1.0 + 0.0j]))
    p = TrigPoly(m=m, coeffs=coeffs, period=period)
    return TrigPoly(m=m, coeffs=p.coeffs / np.sqrt(p.energy), period=period)


def single_class_constellation(m, q, period=1.0):
    """One whole ambiguity class as a uniform constellation.

    The source signal has q simple off-circle orbits and full degree, so
    the class holds exactly 2^q members sharing one measurement. Coherent
    detection gets q bits, square-law detection gets none, and the
    per-dimension gap is q / (2m+1): stepping q up to 2m walks the gap
    toward one bit.
    """
    if not (1 <= q <= 2 * m):
        raise DomainError("need 1 <= q <= 2m")
    source = _signal_from_roots(m, _deterministic_roots(m, q), period)
    cs = enumerate_classes(source, cluster_radius=1e-4)
    return Constellation.uniform(cs.representatives)


def bundled_constellation(m, period=1.0):
    """The stock m-th constellation used by the sweep and the test suite.

    A full ambiguity class of a generic signal (2m off-circle orbits, so
    2^(2m) members) plus two constant-envelope tones at distinct power
    levels. The tones add measurement diversity so neither information
    quantity is degenerate.
    """
    if m < 1:
        raise UnsupportedOrder("bundled constellations start at m = 1")
    source = _signal_from_roots(m, _deterministic_roots(m, 2 * m), period)
    cs = enumerate_classes(source, cluster_radius=1e-4)
    tones = []
    for level, amp in enumerate((2.0, 3.0)):
        coeffs = np.zeros(2 * m + 1, dtype=complex)
        coeffs[m] = amp
        tones.append(TrigPoly(m=m, coeffs=coeffs, period=period))
    return Constellation.uniform(tuple(cs.representatives) + tuple(tones))
