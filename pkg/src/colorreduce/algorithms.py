"""One-round color reduction steps and the composed (delta+1) pipeline.

All programs broadcast only their current color each round and read only
the set of received colors, so they run unchanged under set delivery.
Palette schedules are fixed arithmetic in (m, delta): the engine's round
budget is known before the first message is sent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstructionError, ParameterError
from .simulate import NodeProgram


def logstar2(x) -> int:
    """Iterated base-2 logarithm: applications of log2 until the value is <= 1."""
    count = 0
    while x > 1:
        x = math.log2(x)
        count += 1
    return count


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k < 4:
        return True
    if k % 2 == 0:
        return False
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


def _next_prime(k: int) -> int:
    while not is_prime(k):
        k += 1
    return k


def _ceil_root(m: int, k: int) -> int:
    """Smallest q >= 1 with q**k >= m (exact integer arithmetic)."""
    if m <= 1:
        return 1
    q = max(1, int(round(m ** (1.0 / k))) - 2)
    while q**k < m:
        q += 1
    return q


@dataclass(frozen=True)
class LinialParams:
    """Prime q and polynomial degree for one reduction round.

    Two distinct degree-<=deg polynomials over GF(q) agree on at most deg
    points, so each of the <= delta neighbor sets knocks out at most deg
    of a node's q points; q > delta*deg keeps one point free.  q**(deg+1)
    source colors can be encoded as coefficient vectors.
    """

    q: int
    deg: int
    source_palette: int
    delta: int

    @property
    def target(self) -> int:
        return self.q * self.q

    def __post_init__(self):
        if self.q <= self.delta * self.deg:
            raise ParameterError(f"q={self.q} not above delta*deg={self.delta * self.deg}")
        if self.q ** (self.deg + 1) < self.source_palette:
            raise ParameterError(
                f"q^(deg+1)={self.q ** (self.deg + 1)} cannot encode {self.source_palette} colors"
            )


def linial_params(m: int, delta: int) -> LinialParams:
    """Feasible (q, deg) minimizing the target palette q^2; ties prefer
    the smaller degree."""
    if m < 2 or delta < 1:
        raise ParameterError("need m >= 2 and delta >= 1")
    best = None
    max_deg = max(1, math.ceil(math.log2(m))) + 1
    for deg in range(1, max_deg + 1):
        q_min = max(delta * deg + 1, _ceil_root(m, deg + 1))
        q = _next_prime(q_min)
        if best is not None and (delta * deg + 1) ** 2 >= best.target:
            break
        if best is None or q * q < best.target:
            best = LinialParams(q, deg, m, delta)
    return best


@dataclass(frozen=True)
class CoverFreeFamily:
    """Color sets F_c over the ground set [q^2], one per source color.

    F_c consists of the q points (a, P_c(a)) of the graph of the
    polynomial whose coefficient vector is the base-q expansion of c-1;
    point (a, b) is the ground element a*q + b + 1.  Distinct members
    intersect in at most deg points, so no member is contained in the
    union of delta others.
    """

    params: LinialParams
    m: int

    def __post_init__(self):
        if not is_prime(self.params.q):
            raise ParameterError(f"{self.params.q} is not prime; need a prime field order")
        if self.m > self.params.q ** (self.params.deg + 1):
            raise ParameterError("palette larger than available polynomials")
        object.__setattr__(self, "_memo", {})

    def member(self, color: int) -> frozenset[int]:
        got = self._memo.get(color)
        if got is not None:
            return got
        if not 1 <= color <= self.m:
            raise ParameterError(f"color {color} outside [1, {self.m}]")
        q, deg = self.params.q, self.params.deg
        value = color - 1
        coeffs = []
        for _ in range(deg + 1):
            coeffs.append(value % q)
            value //= q
        points = set()
        for a in range(q):
            acc = 0
            for coef in reversed(coeffs):
                acc = (acc * a + coef) % q
            points.add(a * q + acc + 1)
        out = frozenset(points)
        self._memo[color] = out
        return out

    def members(self):
        return [self.member(c) for c in range(1, self.m + 1)]


def build_family(params: LinialParams, m: int) -> CoverFreeFamily:
    return CoverFreeFamily(params, m)


def linial_palette_schedule(m: int, delta: int) -> list[int]:
    """Palette sizes of iterated reduction, stopping when a step would not
    shrink the palette.  The last entry is the fixpoint palette."""
    palettes = [m]
    while True:
        params = linial_params(palettes[-1], delta)
        if params.target >= palettes[-1]:
            return palettes
        palettes.append(params.target)


def kw_target(m: int, delta: int) -> int:
    """Palette reachable in one merge round: ceil(m * (1 - 1/(delta+2)))."""
    return -(-m * (delta + 1) // (delta + 2))


def kw_palette_schedule(m: int, delta: int) -> list[int]:
    palettes = [m]
    while palettes[-1] > delta + 1:
        palettes.append(kw_target(palettes[-1], delta))
    return palettes


def delta_plus_one_schedule(m: int, delta: int) -> list[int]:
    palettes = linial_palette_schedule(m, delta)
    palettes.extend(kw_palette_schedule(palettes[-1], delta)[1:])
    return palettes


def _linial_rule(family: CoverFreeFamily):
    def rule(color, received):
        own = family.member(color)
        banned = set()
        for msg in received:
            banned.update(family.member(int(msg)))
        free = own - banned
        if not free:
            raise ConstructionError(
                "color set exhausted by neighbors; cover-freeness violated"
            )
        return min(free)

    return rule


def _kw_rule(q: int, delta: int):
    def rule(color, received):
        if color <= q:
            return color
        i = color - q - 1
        low = i * (delta + 1) + 1
        taken = {int(msg) for msg in received}
        for candidate in range(low, low + delta + 1):
            if candidate not in taken:
                return candidate
        raise ConstructionError("all delta+1 range colors taken by <= delta neighbors")

    return rule


def _schedule_program(rules, palettes, name) -> NodeProgram:
    budget = len(rules)

    def init(color, m, delta, n):
        return (0, color)

    def step(state, received):
        t, color = state
        if t > 0:
            color = rules[t - 1](color, received)
        return (t + 1, color), b"%d" % color

    def finalize(state):
        return state[1]

    return NodeProgram(init, step, finalize, lambda m, d, n: budget,
                       name=name, meta={"palettes": palettes})


def linial_step_program(m: int, delta: int) -> NodeProgram:
    """One reduction round: given a proper m-coloring, every node ends on
    the minimum element of its color set minus its neighbors' sets, a
    proper q^2-coloring."""
    params = linial_params(m, delta)
    family = build_family(params, m)
    return _schedule_program([_linial_rule(family)], [m, params.target],
                             f"linial-step[{m}->{params.target}]")


def linial_full_program(m: int, delta: int) -> NodeProgram:
    """Iterate the reduction until the target palette stops shrinking."""
    palettes = linial_palette_schedule(m, delta)
    rules = []
    for p in palettes[:-1]:
        rules.append(_linial_rule(build_family(linial_params(p, delta), p)))
    return _schedule_program(rules, palettes, f"linial[{m}->{palettes[-1]}]")


def kw_step_program(m: int, delta: int) -> NodeProgram:
    """One merge round m -> ceil(m(1-1/(delta+2))).  Nodes at or below the
    target keep their color; the i-th high color recolors into its private
    range of delta+1 low colors, dodging all neighbor colors."""
    if m <= delta + 1:
        raise ParameterError(f"m={m} already at or below delta+1={delta + 1}; nothing to merge")
    q = kw_target(m, delta)
    return _schedule_program([_kw_rule(q, delta)], [m, q], f"kw-step[{m}->{q}]")


def delta_plus_one_program(m: int, delta: int) -> NodeProgram:
    """Full pipeline: iterated color-set reduction, then merge rounds down
    to a proper (delta+1)-coloring."""
    if m < delta + 2:
        raise ParameterError(f"need m >= delta+2, got m={m}, delta={delta}")
    linial_palettes = linial_palette_schedule(m, delta)
    rules = []
    for p in linial_palettes[:-1]:
        rules.append(_linial_rule(build_family(linial_params(p, delta), p)))
    palettes = list(linial_palettes)
    while palettes[-1] > delta + 1:
        q = kw_target(palettes[-1], delta)
        rules.append(_kw_rule(q, delta))
        palettes.append(q)
    return _schedule_program(rules, palettes, f"delta1[{m},{delta}]")
