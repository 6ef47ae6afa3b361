"""
Geometry Module

This module produces words from geometry: codings of lattice segments,
mechanical word prefixes, slalom words around interior lattice points, and
cutting sequences of increasing curves on a square grid of mesh h, together
with a multi-grid scan that collects and classifies the factors.

Letters: 0 = crossing a vertical grid line (moving right),
         1 = crossing a horizontal grid line (moving up).
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from derivation_functions import is_analytic_tangent, is_tangent
from toolkit_config import geometry_setting
from word_functions import EMPTY, TangentWordsError, Word, factors

logger = logging.getLogger(__name__)

# Plastic number; (1/g, 1/g^2) drives the 2-D additive recurrence for scan offsets.
_PLASTIC = 1.32471795724474602596
_R2_STEP = np.array([1.0 / _PLASTIC, 1.0 / _PLASTIC ** 2])

SCAN_LABEL = "empirical approximation"


class NotPrimitive(TangentWordsError):
    def __init__(self, p: int, q: int):
        self.p = p
        self.q = q
        super().__init__(f"segment ({p}, {q}) is not primitive: gcd = {math.gcd(p, q)}")


class NoInteriorPoint(TangentWordsError):
    def __init__(self, p: int, q: int):
        self.p = p
        self.q = q
        super().__init__(f"segment ({p}, {q}) has no interior lattice point")


class CornerHit(TangentWordsError):
    def __init__(self, x: float, gap: float):
        self.x = x
        self.gap = gap
        super().__init__(f"two crossings {gap:.3e} apart near x = {x:.12g}: the curve meets a grid vertex")


class NonMonotone(TangentWordsError):
    pass


class TooManyCornerHits(TangentWordsError):
    def __init__(self, mesh: float, attempts: int):
        self.mesh = mesh
        self.attempts = attempts
        super().__init__(f"no generic grid placement for mesh {mesh} after {attempts} attempts")


@dataclass(frozen=True)
class LatticeSegment:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"segment endpoints must be positive, got ({self.p}, {self.q})")

    @property
    def g(self) -> int:
        return math.gcd(self.p, self.q)

    @property
    def interior_points(self) -> int:
        return self.g - 1

    @property
    def coding_length(self) -> int:
        return self.p + self.q - 2


@dataclass(frozen=True)
class GridPlacement:
    mesh: float
    offset: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not self.mesh > 0:
            raise ValueError(f"mesh must be positive, got {self.mesh}")

    def transposed(self) -> "GridPlacement":
        return GridPlacement(self.mesh, (self.offset[1], self.offset[0]))


class CurveKind(Enum):
    LINE = "line"
    PARABOLA = "parabola"
    EXP = "exp"


PARAM_COUNTS = {CurveKind.LINE: 2, CurveKind.PARABOLA: 3, CurveKind.EXP: 2}


@dataclass(frozen=True)
class CurveSpec:
    """
    Graph of an increasing function over [x0, x1].

    LINE      params (alpha, intercept):   alpha * x + intercept
    PARABOLA  params (a, b, c):            a * x^2 + b * x + c
    EXP       params (base, scale):        scale * base^x
    """
    kind: CurveKind
    params: Tuple[float, ...]
    domain: Tuple[float, float]

    @classmethod
    def line(cls, alpha: float, intercept: float, domain: Tuple[float, float]) -> "CurveSpec":
        return cls(CurveKind.LINE, (alpha, intercept), domain)

    @classmethod
    def parabola(cls, a: float, b: float, c: float, domain: Tuple[float, float]) -> "CurveSpec":
        return cls(CurveKind.PARABOLA, (a, b, c), domain)

    @classmethod
    def exp(cls, base: float, scale: float, domain: Tuple[float, float]) -> "CurveSpec":
        return cls(CurveKind.EXP, (base, scale), domain)

    def value(self, x: float) -> float:
        if self.kind is CurveKind.LINE:
            alpha, intercept = self.params
            return alpha * x + intercept
        if self.kind is CurveKind.PARABOLA:
            a, b, c = self.params
            return (a * x + b) * x + c
        base, scale = self.params
        return scale * base ** x

    def derivative(self, x: float) -> float:
        if self.kind is CurveKind.LINE:
            return self.params[0]
        if self.kind is CurveKind.PARABOLA:
            a, b, _ = self.params
            return 2 * a * x + b
        base, scale = self.params
        return scale * math.log(base) * base ** x

    def validate(self) -> None:
        """
        Raises:
            NonMonotone: the curve is not strictly increasing on its domain
        """
        if len(self.params) != PARAM_COUNTS[self.kind]:
            raise NonMonotone(f"{self.kind.value} takes {PARAM_COUNTS[self.kind]} parameters, got {len(self.params)}")
        x0, x1 = self.domain
        if not x0 < x1:
            raise NonMonotone(f"empty domain [{x0}, {x1}]")
        if self.kind is CurveKind.LINE and not self.params[0] > 0:
            raise NonMonotone(f"line slope {self.params[0]} is not positive")
        if self.kind is CurveKind.PARABOLA:
            if not self.params[0] > 0:
                raise NonMonotone(f"parabola needs a > 0, got {self.params[0]}")
            # derivative is increasing, so its minimum is at x0
            if not self.derivative(x0) > 0:
                raise NonMonotone(f"parabola is not increasing at x = {x0}")
        if self.kind is CurveKind.EXP:
            base, scale = self.params
            if not (base > 1 and scale > 0):
                raise NonMonotone(f"exp needs base > 1 and scale > 0, got base={base} scale={scale}")

    def transposed(self) -> "CurveSpec":
        """The same line seen with the axes exchanged (lines only)."""
        if self.kind is not CurveKind.LINE:
            raise ValueError("only lines can be transposed")
        alpha, intercept = self.params
        x0, x1 = self.domain
        return CurveSpec.line(1.0 / alpha, -intercept / alpha, (self.value(x0), self.value(x1)))

    def describe(self) -> Dict[str, object]:
        return {"kind": self.kind.value, "params": list(self.params), "domain": list(self.domain)}


@dataclass
class FactorVerdict:
    w: Word
    tangent: bool
    analytic: bool


@dataclass
class ScanEntry:
    mesh: float
    offset: Tuple[float, float]
    word: Word
    factors: List[FactorVerdict] = field(default_factory=list)


@dataclass
class FactorReport:
    curve: Dict[str, object]
    entries: List[ScanEntry] = field(default_factory=list)
    label: str = SCAN_LABEL

    def summary(self) -> Dict[float, Dict[str, float]]:
        """Per mesh: distinct factors, tangent and analytic verdict counts, analytic share."""
        per_mesh: Dict[float, Dict[str, set]] = {}
        for entry in self.entries:
            bucket = per_mesh.setdefault(entry.mesh, {"all": set(), "tangent": set(), "analytic": set()})
            for verdict in entry.factors:
                bucket["all"].add(verdict.w)
                if verdict.tangent:
                    bucket["tangent"].add(verdict.w)
                if verdict.analytic:
                    bucket["analytic"].add(verdict.w)
        return {
            mesh: {
                "factors": len(b["all"]),
                "tangent": len(b["tangent"]),
                "analytic": len(b["analytic"]),
                "analytic_share": len(b["analytic"]) / len(b["all"]) if b["all"] else 1.0,
            }
            for mesh, b in per_mesh.items()
        }


def segment_coding(p: int, q: int) -> Word:
    """
    Coding of the open segment from (0,0) to (p,q): crossings of x = 1..p-1
    (letter 0) and y = 1..q-1 (letter 1), ordered by abscissa.

    Horizontal line y = j is met at x = j*p/q, so i < j*p/q iff i*q < j*p;
    the comparison stays in integers.

    Raises:
        NotPrimitive: if gcd(p, q) != 1
    """
    segment = LatticeSegment(p, q)
    if segment.g != 1:
        raise NotPrimitive(p, q)
    letters = []
    i, j = 1, 1
    while i < p or j < q:
        if j >= q or (i < p and i * q < j * p):
            letters.append("0")
            i += 1
        else:
            letters.append("1")
            j += 1
    return Word("".join(letters))


def mechanical_prefix(alpha: float, rho: float, n: int) -> Word:
    """s_k = floor((k+1) alpha + rho) - floor(k alpha + rho), k = 0..n-1."""
    if n < 0:
        raise ValueError(f"negative length {n}")
    levels = np.floor(np.arange(n + 1) * alpha + rho).astype(np.int64)
    return Word("".join(map(str, np.diff(levels))))


def slalom_bispecials(p: int, q: int) -> List[Word]:
    """
    The 2^(g-1) words c x_1 c ... x_{g-1} c, c the coding of (p/g, q/g).

    Bit i of the choice mask set means the curve passes over the (i+1)-th
    interior lattice point ("10"); clear means under ("01"). Mask 0 comes
    first.

    Raises:
        NoInteriorPoint: if gcd(p, q) = 1
    """
    segment = LatticeSegment(p, q)
    g = segment.g
    if g < 2:
        raise NoInteriorPoint(p, q)
    c = segment_coding(p // g, q // g)
    words = []
    for mask in range(1 << (g - 1)):
        pieces = [c]
        for i in range(g - 1):
            pieces.append("10" if mask >> i & 1 else "01")
            pieces.append(c)
        words.append(Word("".join(pieces)))
    return words


def analytic_slalom_pair(p: int, q: int) -> Tuple[Word, Word]:
    """(bending above every interior point, bending under every interior point)."""
    words = slalom_bispecials(p, q)
    return words[-1], words[0]


def _interior_levels(lo: float, hi: float, origin: float, mesh: float) -> np.ndarray:
    first = math.floor((lo - origin) / mesh) + 1
    last = math.ceil((hi - origin) / mesh) - 1
    levels = origin + np.arange(first, last + 1) * mesh
    return levels[(levels > lo) & (levels < hi)]


def cutting_sequence(curve: CurveSpec, grid: GridPlacement,
                     bisection_tol: Optional[float] = None,
                     corner_tol: Optional[float] = None) -> Word:
    """
    Cutting sequence of an increasing curve on a square grid.

    Vertical crossings are the grid abscissas strictly inside the domain;
    horizontal crossings solve f(x) = level by bisection. Domain endpoints
    are not events.

    Args:
        curve (CurveSpec): increasing curve
        grid (GridPlacement): mesh and offset
        bisection_tol (float): absolute root tolerance (default TW_BISECTION_TOL)
        corner_tol (float): minimal separation of two events (default TW_CORNER_TOL)

    Returns:
        Word: the cutting sequence

    Raises:
        NonMonotone: invalid curve
        CornerHit: two crossings closer than corner_tol
    """
    curve.validate()
    bisection_tol = geometry_setting("bisection_tol", bisection_tol)
    corner_tol = geometry_setting("corner_tol", corner_tol)
    x0, x1 = curve.domain
    ox, oy = grid.offset
    h = grid.mesh

    verticals = _interior_levels(x0, x1, ox, h)
    heights = _interior_levels(curve.value(x0), curve.value(x1), oy, h)
    horizontals = np.array([
        bisect(lambda x, level=level: curve.value(x) - level, x0, x1, xtol=bisection_tol)
        for level in heights
    ], dtype=float)

    xs = np.concatenate((verticals, horizontals))
    letters = np.concatenate((np.zeros(len(verticals), dtype=np.int64), np.ones(len(horizontals), dtype=np.int64)))
    if len(xs) == 0:
        return EMPTY
    order = np.argsort(xs, kind="stable")
    xs, letters = xs[order], letters[order]

    gaps = np.diff(xs)
    if len(gaps) and gaps.min() < corner_tol:
        at = int(gaps.argmin())
        raise CornerHit(float(xs[at]), float(gaps[at]))

    logger.debug(f"{curve.kind.value} mesh={h} offset={grid.offset}: "
                 f"{len(verticals)} vertical, {len(horizontals)} horizontal crossings")
    return Word("".join(map(str, letters)))


def scan_offsets(mesh: float, count: int, seed: Optional[float] = None) -> np.ndarray:
    """First `count` points of the additive-recurrence sequence, scaled to [0, mesh)^2."""
    seed = geometry_setting("scan_seed", seed)
    k = np.arange(count)[:, None]
    return np.mod(seed + k * _R2_STEP, 1.0) * mesh


def _classify_factors(word: Word, max_factor_len: int) -> List[FactorVerdict]:
    found = set()
    for n in range(1, min(max_factor_len, len(word)) + 1):
        found |= factors(word, n)
    return [
        FactorVerdict(w, is_tangent(w), is_analytic_tangent(w))
        for w in sorted(found, key=lambda w: (len(w), w))
    ]


def multigrid_factor_scan(curve: CurveSpec, meshes: Sequence[float], offsets_per_mesh: int,
                          max_factor_len: int, retries: Optional[int] = None,
                          seed: Optional[float] = None) -> FactorReport:
    """
    Code the curve on several grids and classify every factor found.

    Offsets come from a deterministic low-discrepancy sequence; a placement
    that hits a grid vertex is replaced by the next point of the sequence.
    The result only approximates the asymptotic language of the curve.

    Args:
        curve (CurveSpec): increasing curve
        meshes (list): grid meshes, each > 0
        offsets_per_mesh (int): generic placements per mesh
        max_factor_len (int): longest factor collected
        retries (int): placements tried per offset (default TW_CORNER_RETRIES)
        seed (float): sequence start in [0, 1) (default TW_SCAN_SEED)

    Returns:
        FactorReport: entries ordered by mesh, then offset index

    Raises:
        TooManyCornerHits: no generic placement found within the retry budget
    """
    retries = int(geometry_setting("corner_retries", retries))
    curve.validate()
    report = FactorReport(curve.describe())

    for mesh in meshes:
        if not mesh > 0:
            raise ValueError(f"mesh must be positive, got {mesh}")
        candidates = scan_offsets(mesh, offsets_per_mesh * (retries + 1), seed)
        cursor = 0
        for index in range(offsets_per_mesh):
            for attempt in range(retries):
                grid = GridPlacement(mesh, (float(candidates[cursor][0]), float(candidates[cursor][1])))
                cursor += 1
                try:
                    word = cutting_sequence(curve, grid)
                    break
                except CornerHit as e:
                    logger.debug(f"mesh {mesh} offset #{index} attempt {attempt}: {e}")
            else:
                raise TooManyCornerHits(mesh, retries)
            report.entries.append(ScanEntry(mesh, grid.offset, word, _classify_factors(word, max_factor_len)))
        logger.info(f"mesh {mesh}: {offsets_per_mesh} placements coded")

    return report
