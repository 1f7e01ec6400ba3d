"""A finite-roster Minkowski model over the rationals.

Coordinates are ordered ``(x, y, z, t)`` with the form ``eta = diag(1, 1, 1, -1)``
and the speed of light 1. Every body moves inertially: in the base frame its
worldline is ``anchor + s * (v, 1)``. An observer with velocity ``u`` and
anchor ``a`` coordinatizes a base-frame point ``X`` as ``boost(u) @ (X - a)``,
where ``boost(u)`` is the pure Lorentz boost to its rest frame. Velocities
are chosen so that the Lorentz factor is rational, so every number in this
module is an exact ``Fraction``.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Vec3 = tuple[Fraction, Fraction, Fraction]
Event = tuple[Fraction, Fraction, Fraction, Fraction]
Matrix = tuple[tuple[Fraction, ...], ...]

ETA: Matrix = tuple(tuple(Fraction(1 if i == j else 0) * (-1 if i == 3 else 1) for j in range(4))
                    for i in range(4))
OBSERVER, PHOTON = "observer", "photon"


class RosterError(ValueError):
    pass


# ------------------------------------------------------------ exact helpers

def dot3(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec3:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def rational_sqrt(q: Fraction) -> Fraction | None:
    """The exact square root of ``q`` when it is rational, else ``None``."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(4)), Fraction(0)) for j in range(4))
                 for i in range(4))


def apply(m: Matrix, v: Sequence[Fraction]) -> Event:
    return tuple(sum((m[i][k] * v[k] for k in range(4)), Fraction(0)) for i in range(4))  # type: ignore[return-value]


def transpose(m: Matrix) -> Matrix:
    return tuple(tuple(m[j][i] for j in range(4)) for i in range(4))


def preserves_form(m: Matrix) -> bool:
    """``m^T eta m == eta`` exactly."""
    return matmul(matmul(transpose(m), ETA), m) == ETA


def lorentz_factor(u: Vec3) -> Fraction | None:
    """``1 / sqrt(1 - |u|^2)`` when ``|u| < 1`` and the result is rational."""
    s = 1 - dot3(u, u)
    if s <= 0:
        return None
    root = rational_sqrt(s)
    return None if root is None else 1 / root


def boost(u: Vec3, gamma: Fraction | None = None) -> Matrix:
    """Pure boost into the rest frame of a body moving with velocity ``u``."""
    if gamma is None:
        gamma = lorentz_factor(u)
        if gamma is None:
            raise RosterError(f"velocity {u} has no rational Lorentz factor below light speed")
    u2 = dot3(u, u)
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            delta = Fraction(1 if i == j else 0)
            row.append(delta + ((gamma - 1) * u[i] * u[j] / u2 if u2 else Fraction(0)))
        row.append(-gamma * u[i])
        rows.append(tuple(row))
    rows.append(tuple(-gamma * u[j] for j in range(3)) + (gamma,))
    return tuple(rows)


def axis_boost(axis: int, v: Fraction) -> Matrix:
    """Boost with speed ``v`` along coordinate axis ``axis``."""
    u = [Fraction(0)] * 3
    u[axis] = v
    return boost(tuple(u))  # type: ignore[arg-type]


def rational_speed(r: Fraction) -> Fraction:
    """``2r / (1 + r^2)``: a speed whose Lorentz factor ``(1 + r^2) / (1 - r^2)`` is rational."""
    return 2 * r / (1 + r * r)


def composed_velocity(rs: Sequence[Fraction]) -> Vec3:
    """Velocity of the frame obtained by composing axis boosts with parameters ``rs``."""
    m: Matrix = ETA_IDENTITY
    for axis, r in enumerate(rs):
        m = matmul(m, axis_boost(axis, rational_speed(r)))
    e = apply(m, (Fraction(0), Fraction(0), Fraction(0), Fraction(1)))
    return (e[0] / e[3], e[1] / e[3], e[2] / e[3])


def stereographic_direction(a: Fraction, b: Fraction) -> Vec3:
    """A rational unit vector from the plane point ``(a, b)``."""
    n = 1 + a * a + b * b
    return (2 * a / n, 2 * b / n, (1 - a * a - b * b) / n)


ETA_IDENTITY: Matrix = tuple(tuple(Fraction(1 if i == j else 0) for j in range(4)) for i in range(4))


# ------------------------------------------------------------ the model

@dataclass(frozen=True)
class Body:
    kind: str
    anchor: Event
    velocity: Vec3

    def point(self, s: Fraction) -> Event:
        a, v = self.anchor, self.velocity
        return (a[0] + s * v[0], a[1] + s * v[1], a[2] + s * v[2], a[3] + s)

    def passes_through(self, x: Event) -> bool:
        s = x[3] - self.anchor[3]
        return self.point(s) == tuple(x)


@dataclass(frozen=True)
class Frame:
    gamma: Fraction
    to_rest: Matrix
    from_rest: Matrix


@dataclass(frozen=True)
class StandardModel:
    """A roster of inertial bodies with exact per-observer coordinatizations.

    With ``strict=False`` malformed bodies are kept (for negative controls);
    observers without a sub-light rational frame then simply have none.
    """

    bodies: tuple[Body, ...]
    strict: bool = True
    frames: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        frames: dict[int, Frame] = {}
        for i, b in enumerate(self.bodies):
            speed2 = dot3(b.velocity, b.velocity)
            if b.kind == PHOTON:
                if speed2 != 1 and self.strict:
                    raise RosterError(f"photon {i} has |v|^2 = {speed2}, not 1")
                continue
            if b.kind != OBSERVER:
                raise RosterError(f"body {i}: unknown kind {b.kind!r}")
            gamma = lorentz_factor(b.velocity)
            if gamma is None:
                if self.strict:
                    raise RosterError(f"observer {i} has no rational sub-light frame (|v|^2 = {speed2})")
                continue
            to_rest = boost(b.velocity, gamma)
            from_rest = boost(tuple(-c for c in b.velocity), gamma)  # type: ignore[arg-type]
            frames[i] = Frame(gamma, to_rest, from_rest)
        object.__setattr__(self, "frames", frames)

    @property
    def observers(self) -> list[int]:
        return [i for i, b in enumerate(self.bodies) if b.kind == OBSERVER]

    @property
    def photons(self) -> list[int]:
        return [i for i, b in enumerate(self.bodies) if b.kind == PHOTON]

    def frame(self, o: int) -> Frame:
        try:
            return self.frames[o]
        except KeyError:
            raise RosterError(f"body {o} is not an observer with a valid frame") from None

    def coordinates(self, o: int, x: Event) -> Event:
        """Base-frame point ``x`` in the coordinates of observer ``o``."""
        a = self.bodies[o].anchor
        return apply(self.frame(o).to_rest, [x[k] - a[k] for k in range(4)])

    def base_point(self, o: int, p: Event) -> Event:
        """Inverse of :meth:`coordinates`."""
        a = self.bodies[o].anchor
        y = apply(self.frame(o).from_rest, p)
        return (y[0] + a[0], y[1] + a[1], y[2] + a[2], y[3] + a[3])

    def transform(self, o: int, o2: int, p: Event) -> Event:
        """Coordinates for ``o2`` of the event ``o`` sees at ``p``."""
        return self.coordinates(o2, self.base_point(o, p))

    def sees(self, o: int, b: int, p: Event) -> bool:
        """``W(o, b, p)``: observer ``o`` coordinatizes body ``b`` at ``p``."""
        if o not in self.frames:
            return False
        return self.bodies[b].passes_through(self.base_point(o, p))

    def relative_velocity(self, o: int, b: int) -> Vec3 | None:
        """Velocity of ``b`` in ``o``'s coordinates; ``None`` if ``b`` is instantaneous there."""
        v = self.bodies[b].velocity
        d = apply(self.frame(o).to_rest, (v[0], v[1], v[2], Fraction(1)))
        if d[3] == 0:
            return None
        return (d[0] / d[3], d[1] / d[3], d[2] / d[3])


def speed_squared(m: StandardModel, o: int, b: int) -> Fraction | None:
    """``speed_o(b)^2`` from two distinct events of ``b``; ``None`` when undefined.

    The square is returned because the speed itself is usually irrational.
    """
    w = m.relative_velocity(o, b)
    if w is None:
        return None
    return dot3(w, w)


# ------------------------------------------------------------ rosters

def _frac(text: str) -> Fraction:
    return Fraction(text.strip())


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


_LINE = re.compile(r"^(observer|photon)\s+anchor\(([^)]*)\)\s+velocity\(([^)]*)\)\s*$")


def load_roster(text: str, strict: bool = True) -> StandardModel:
    """Parse ``observer|photon anchor(x,y,z,t) velocity(vx,vy,vz)`` lines; ``#`` starts a comment."""
    bodies = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise RosterError(f"line {n}: cannot parse {raw!r}")
        anchor = tuple(_frac(p) for p in m.group(2).split(","))
        velocity = tuple(_frac(p) for p in m.group(3).split(","))
        if len(anchor) != 4 or len(velocity) != 3:
            raise RosterError(f"line {n}: anchor needs 4 and velocity 3 components")
        bodies.append(Body(m.group(1), anchor, velocity))  # type: ignore[arg-type]
    return StandardModel(tuple(bodies), strict)


def dump_roster(m: StandardModel) -> str:
    lines = []
    for b in m.bodies:
        a = ",".join(_fmt(q) for q in b.anchor)
        v = ",".join(_fmt(q) for q in b.velocity)
        lines.append(f"{b.kind} anchor({a}) velocity({v})")
    return "\n".join(lines) + "\n"


def generate_roster(seed: int = 0, observers: int = 20, photons: int = 10) -> StandardModel:
    """A deterministic roster.

    Observer 0 rests at the origin. Other observers compose x, y and z boosts
    with parameters ``r = p/q`` (``|p| <= 4``, ``5 <= q <= 9``) and have
    anchors with coordinates ``k/d`` (``|k| <= 10``, ``1 <= d <= 4``). Photon
    directions are stereographic images of plane points ``p/q``
    (``|p| <= 5``, ``1 <= q <= 5``).
    """
    rng = random.Random(seed)
    zero = Fraction(0)
    bodies = [Body(OBSERVER, (zero, zero, zero, zero), (zero, zero, zero))]

    def anchor() -> Event:
        return tuple(Fraction(rng.randint(-10, 10), rng.randint(1, 4)) for _ in range(4))  # type: ignore[return-value]

    for _ in range(observers - 1):
        rs = [Fraction(rng.randint(-4, 4), rng.randint(5, 9)) for _ in range(3)]
        bodies.append(Body(OBSERVER, anchor(), composed_velocity(rs)))
    for _ in range(photons):
        a, b = (Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(2))
        bodies.append(Body(PHOTON, anchor(), stereographic_direction(a, b)))
    return StandardModel(tuple(bodies))


# ------------------------------------------------------------ NoFTL

@dataclass(frozen=True)
class Violation:
    body: int
    reason: str
    witnesses: tuple[tuple[int, int], ...]  # (observer, observed body) pairs


@dataclass(frozen=True)
class NoFTLReport:
    observer_pairs: int
    photon_pairs: int
    triples: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "observer_pairs": self.observer_pairs,
            "photon_pairs": self.photon_pairs,
            "triples": self.triples,
            "violations": [
                {"body": v.body, "reason": v.reason, "pairs": [list(p) for p in v.witnesses]}
                for v in self.violations
            ],
        }


def check_noftl(m: StandardModel) -> NoFTLReport:
    """Check ``speed_o(o')^2 < 1 = speed_o(p)^2`` for all observers ``o != o'`` and photons ``p``.

    Violations are grouped by offending body, so one bad body is one violation
    however many pairs it spoils.
    """
    bad: dict[int, tuple[str, list[tuple[int, int]]]] = {}

    def flag(body: int, reason: str, pair: tuple[int, int]) -> None:
        entry = bad.setdefault(body, (reason, []))
        entry[1].append(pair)

    obs, phs = m.observers, m.photons
    n_obs_pairs = n_ph_pairs = n_triples = 0
    for o in obs:
        if o not in m.frames:
            for b in obs + phs:
                if b != o:
                    flag(o, "observer has no sub-light rest frame", (o, b))
            continue
        obs_speeds = {}
        for o2 in obs:
            if o2 == o:
                continue
            n_obs_pairs += 1
            s2 = speed_squared(m, o, o2)
            obs_speeds[o2] = s2
            if s2 is None or s2 >= 1:
                flag(o2, "observer moves at or above light speed", (o, o2))
        for p in phs:
            n_ph_pairs += 1
            s2 = speed_squared(m, o, p)
            if s2 != 1:
                flag(p, "photon speed differs from 1", (o, p))
            for o2, so in obs_speeds.items():
                n_triples += 1
                if so is None or s2 is None or not so < s2:
                    flag(o2, "observer not slower than a photon", (o, o2))
    violations = tuple(Violation(b, reason, tuple(dict.fromkeys(pairs)))
                       for b, (reason, pairs) in sorted(bad.items()))
    return NoFTLReport(n_obs_pairs, n_ph_pairs, n_triples, violations)


def with_body(m: StandardModel, body: Body) -> StandardModel:
    """A non-strict copy of ``m`` with one more body (for negative controls)."""
    return StandardModel(m.bodies + (body,), strict=False)


def observers_in(m: StandardModel, ids: Iterable[int]) -> list[int]:
    return [i for i in ids if i in m.frames]
