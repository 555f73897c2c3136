"""Box counts, discrepancy, the multidimensional Erdos-Turan bound and rate sweeps.

Angles follow one convention throughout: an eigenvalue a = 2 cos(theta) with
theta in [0, pi] is placed at u = theta / (2 pi) in [0, 1/2], so that
cos(2 pi m u) = cos(m theta).
"""
from __future__ import annotations

import itertools
import math
import statistics
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .chebyshev import cosine_moment_sum
from .levelone import EigenTable, cusp_dimension, eigen_table
from .measure import (
    JointBox,
    box_measure,
    unit_angle_density_sup,
    weyl_limit,
)
from .trace import DomainError, dimension


@dataclass
class DiscrepancyReport:
    weight: int
    level: int
    primes: Tuple[int, ...]
    box: JointBox
    count: int
    size: int
    expected: float
    discrepancy: float
    rate_predictor: float
    M: Optional[int] = None
    et_bound: Optional[float] = None
    et_bound_centered: Optional[float] = None

    @property
    def relative(self) -> float:
        """D_I / s."""
        return self.discrepancy / self.size

    @property
    def ratio(self) -> float:
        """D_I / (s * rate predictor), the quantity the rate theorem keeps bounded."""
        return self.discrepancy / (self.size * self.rate_predictor)

    def to_dict(self) -> Dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        d["box"] = [list(iv) for iv in self.box.intervals]
        d["relative"] = self.relative
        d["ratio"] = self.ratio
        return d


def rate_predictor(primes: Sequence[int], k: int, N: int = 1) -> float:
    """r log(p_1 ... p_r) / log(k N)."""
    return len(primes) * math.log(math.prod(primes)) / math.log(k * N)


def choose_M(k: int, primes: Sequence[int], N: int = 1) -> int:
    """Truncation M = log(kN) / log(p_1 ... p_r), floored, at least 1."""
    return max(1, math.floor(math.log(k * N) / math.log(math.prod(primes))))


def box_count(table: EigenTable, box: JointBox) -> DiscrepancyReport:
    if box.dim != len(table.primes):
        raise DomainError(
            "dimension_mismatch", f"box has {box.dim} axes, table has {len(table.primes)} primes"
        )
    count = sum(1 for row in table.rows if box.contains(row))
    expected = table.size * box_measure(box, table.primes)
    return DiscrepancyReport(
        weight=table.weight,
        level=table.level,
        primes=tuple(table.primes),
        box=box,
        count=count,
        size=table.size,
        expected=expected,
        discrepancy=abs(count - expected),
        rate_predictor=rate_predictor(table.primes, table.weight, table.level),
    )


def weight_w(m_vec: Sequence[int], widths: Sequence[float], M: int) -> float:
    """(2 pi)^r prod_t min(1 / (pi |m_t|), width_t) + 2 / (M + 1)."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    prod = 1.0
    for m, w in zip(m_vec, widths):
        prod *= w if m == 0 else min(1 / (math.pi * abs(m)), w)
    return (2 * math.pi) ** len(widths) * prod + 2 / (M + 1)


@dataclass
class ETBoundInput:
    """Data entering the Erdos-Turan right-hand side.

    ``axis_deviations[m-1][t]`` is Delta_t(m, V) for m = 1..M; ``joint_deviations``
    maps each m-vector in [-M, M]^r to Delta(m, V).
    """

    V: int
    M: int
    widths: Tuple[float, ...]
    sup_norms: Tuple[float, ...]
    axis_deviations: List[Tuple[float, ...]]
    joint_deviations: Dict[Tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.V < 1 or self.M < 1:
            raise ValueError("V and M must be >= 1")
        if len(self.axis_deviations) != self.M:
            raise ValueError("need axis deviations for m = 1..M")
        if any(x < 0 for row in self.axis_deviations for x in row) or any(
            x < 0 for x in self.joint_deviations.values()
        ):
            raise ValueError("deviations must be nonnegative")

    @property
    def r(self) -> int:
        return len(self.widths)


def f_norm(sup_norms: Sequence[float]) -> float:
    """max_t ||F_t|| + prod_t ||F_t||."""
    return max(sup_norms) + math.prod(sup_norms)


def et_bound(inp: ETBoundInput) -> float:
    """Right-hand side of the Erdos-Turan inequality, term for term.

    sum_{m in [-M, M]^r} w(m) Delta(m, V)
      + 10 * 2/(M+1) * sum_{m=1}^{M} max_t Delta_t(m, V)
      + 12 ||F|| * 2V/(M+1)
    """
    M = inp.M
    joint = math.fsum(
        weight_w(m_vec, inp.widths, M) * inp.joint_deviations.get(m_vec, 0.0)
        for m_vec in itertools.product(range(-M, M + 1), repeat=inp.r)
    )
    axis = 10 * 2 / (M + 1) * math.fsum(max(row) for row in inp.axis_deviations)
    tail = 12 * f_norm(inp.sup_norms) * 2 * inp.V / (M + 1)
    return joint + axis + tail


def et_input_from_table(table: EigenTable, box: JointBox, M: int, centered: bool = False) -> ETBoundInput:
    """Build deviations from the eigenvalue table itself.

    With ``centered=False`` the joint deviation is |sum_n prod_t cos(m_t theta_t)|
    as in the inequality's statement; ``centered=True`` subtracts V prod_t c_{m_t}.
    """
    r = len(table.primes)
    V = table.size
    axis = []
    for m in range(1, M + 1):
        row = []
        for t, p in enumerate(table.primes):
            s = math.fsum(math.cos(m * ang[t]) for ang in table.angles)
            row.append(abs(s - V * float(weyl_limit(p, m).value)))
        axis.append(tuple(row))
    joint = {}
    for m_vec in itertools.product(range(-M, M + 1), repeat=r):
        s = math.fsum(
            math.prod(math.cos(m * ang[t]) for t, m in enumerate(m_vec)) for ang in table.angles
        )
        if centered:
            s -= V * math.prod(float(weyl_limit(p, abs(m)).value) for p, m in zip(table.primes, m_vec))
        joint[m_vec] = abs(s)
    return ETBoundInput(
        V=V,
        M=M,
        widths=box.angle_widths(),
        sup_norms=tuple(unit_angle_density_sup(p) for p in table.primes),
        axis_deviations=axis,
        joint_deviations=joint,
    )


def moment_deviation(p: int, m: int, N: int, k: int) -> float:
    """|(1/2) sum_n 2 cos(m theta_n) - s(N, k) c_m|, from the trace formula."""
    if m == 0:
        dimension(N, k)
        return 0.0
    half = 0.5 * float(cosine_moment_sum(p, m, N, k))
    return abs(half - dimension(N, k) * float(weyl_limit(p, m).value))


def box_grid(r: int) -> List[JointBox]:
    """Nine boxes: nine equal slices of [-2, 2] when r = 1, a 3 x 3 grid when r = 2."""
    if r == 1:
        cuts = [-2 + 4 * i / 9 for i in range(10)]
        return [JointBox(((cuts[i], cuts[i + 1]),)) for i in range(9)]
    if r == 2:
        cuts = [-2, -2 / 3, 2 / 3, 2]
        cells = [(cuts[i], cuts[i + 1]) for i in range(3)]
        return [JointBox((a, b)) for a in cells for b in cells]
    cuts = [-2, -2 / 3, 2 / 3, 2]
    cells = [(cuts[i], cuts[i + 1]) for i in range(3)]
    return [JointBox(c) for c in itertools.product(cells, repeat=r)]


def discrepancy_report(table: EigenTable, box: JointBox, M: Optional[int] = None) -> DiscrepancyReport:
    """box_count plus both Erdos-Turan bounds at truncation M (default: choose_M)."""
    report = box_count(table, box)
    M = choose_M(table.weight, table.primes, table.level) if M is None else M
    report.M = M
    report.et_bound = et_bound(et_input_from_table(table, box, M))
    report.et_bound_centered = et_bound(et_input_from_table(table, box, M, centered=True))
    return report


def rate_sweep(weights: Sequence[int], primes: Sequence[int], box: JointBox, seed: int = 0) -> List[DiscrepancyReport]:
    """One report per weight (level 1), skipping nothing: every weight must carry cusp forms."""
    reports = []
    for k in weights:
        if cusp_dimension(k) < 1:
            raise DomainError("empty_space", f"S_{k}(1) is zero")
        reports.append(discrepancy_report(eigen_table(k, primes, seed), box))
    return reports


def median_relative(reports: Sequence[DiscrepancyReport]) -> float:
    return statistics.median(r.relative for r in reports)
