"""Sampled axiom instances on the Minkowski model, computed two ways.

The direct way uses the geometry in ``minkowski``. The formula way strips the
quantifiers over the sampled variables from the shipped axiom, binds them to
the sampled values and runs the generic evaluator on a structure whose
quantity sort is the rationals (so only body quantifiers are left to range
over, and they range over the finite roster). Existential quantities are
instantiated with the witness the geometry provides.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..logic import Exists, Forall, Formula, Implies, Var
from ..models.interp import EvaluationError, evaluate
from .minkowski import Event, StandardModel, cross3, dot3, speed_squared
from .theories import noftl_formula, specrel_theory

AXIOMS = ("AxSelf", "AxPh", "AxEv", "AxSymd")


@dataclass(frozen=True)
class Instance:
    axiom: str
    bindings: dict
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class InstanceReport:
    axiom: str
    seed: int
    instances: tuple[Instance, ...]

    @property
    def passed(self) -> int:
        return sum(i.holds for i in self.instances)

    @property
    def failed(self) -> int:
        return len(self.instances) - self.passed

    def as_dict(self) -> dict:
        return {
            "axiom": self.axiom, "seed": self.seed, "samples": len(self.instances),
            "passed": self.passed, "failed": self.failed,
            "failures": [{"bindings": {k: str(v) for k, v in i.bindings.items()}, "detail": i.detail}
                         for i in self.instances if not i.holds],
        }


class RationalStructure:
    """The model as a first-order structure: bodies are roster ids, quantities are fractions."""

    def __init__(self, m: StandardModel) -> None:
        self.m = m

    def domain(self, sort: str):
        if sort == "B":
            return range(len(self.m.bodies))
        raise EvaluationError(f"sort {sort} is infinite; bind its variables instead of quantifying")

    def apply(self, fn: str, args: tuple):
        if fn == "+":
            return args[0] + args[1]
        if fn == "*":
            return args[0] * args[1]
        raise EvaluationError(f"unknown function {fn}")

    def holds(self, pred: str, args: tuple) -> bool:
        if pred == "<":
            return args[0] < args[1]
        if pred == "IOb":
            return args[0] in self.m.frames
        if pred == "Ph":
            return self.m.bodies[args[0]].kind == "photon"
        if pred == "W":
            return self.m.sees(args[0], args[1], tuple(args[2:]))
        raise EvaluationError(f"unknown relation {pred}")


def strip_quantifiers(f: Formula, names: set[str]) -> tuple[Formula, dict[str, Var]]:
    """Remove the quantifiers binding ``names`` along the implication spine of ``f``."""
    found: dict[str, Var] = {}

    def go(g: Formula) -> Formula:
        if isinstance(g, (Forall, Exists)) and g.var.name in names:
            found[g.var.name] = g.var
            return go(g.body)
        if isinstance(g, Implies):
            return Implies(g.left, go(g.right))
        return g

    return go(f), found


def formula_side(m: StandardModel, f: Formula, bindings: dict) -> bool:
    core, variables = strip_quantifiers(f, set(bindings))
    missing = set(bindings) - set(variables)
    if missing:
        raise EvaluationError(f"bindings for variables not quantified on the spine: {sorted(missing)}")
    env = {variables[k]: v for k, v in bindings.items()}
    return evaluate(RationalStructure(m), core, env)


def axiom_formula(label: str) -> Formula:
    if label == "NoFTL":
        return noftl_formula()
    return specrel_theory().axiom(label)


# ------------------------------------------------------------ samplers

def _q(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-20, 20), rng.randint(1, 6))


def _point(rng: random.Random) -> Event:
    return (_q(rng), _q(rng), _q(rng), _q(rng))


def _named(prefix: str, p: Event, names: tuple[str, str, str, str]) -> dict:
    return dict(zip(names, p))


def _diffs(a: Event, b: Event, names: tuple[str, ...]) -> dict:
    return {n: b[k] - a[k] for k, n in enumerate(names)}


def _sample_self(m: StandardModel, rng: random.Random) -> Instance:
    o = rng.choice(sorted(m.frames))
    t = _q(rng)
    if rng.random() < 0.5:
        p = (Fraction(0), Fraction(0), Fraction(0), t)
    else:
        p = _point(rng)
    on_axis = m.sees(o, o, p)
    at_origin = p[0] == 0 and p[1] == 0 and p[2] == 0
    b = {"o": o, "x": p[0], "y": p[1], "z": p[2], "t": p[3]}
    return Instance("AxSelf", b, on_axis == at_origin, f"W(o,o,p)={on_axis}, space at origin={at_origin}")


def _sample_ph(m: StandardModel, rng: random.Random) -> Instance:
    o = rng.choice(sorted(m.frames))
    p = rng.choice(m.photons)
    e1 = m.coordinates(o, m.bodies[p].point(_q(rng)))
    e2 = m.coordinates(o, m.bodies[p].point(_q(rng)))
    d = [e2[k] - e1[k] for k in range(4)]
    holds = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] == d[3] * d[3]
    b = {"o": o, "p": p, **_named("1", e1, ("x1", "y1", "z1", "t1")),
         **_named("2", e2, ("x2", "y2", "z2", "t2")), **_diffs(e1, e2, ("dx", "dy", "dz", "dt"))}
    return Instance("AxPh", b, holds, f"|ds|^2 - dt^2 = {d[0]**2 + d[1]**2 + d[2]**2 - d[3]**2}")


def _sample_ev(m: StandardModel, rng: random.Random) -> Instance:
    frames = sorted(m.frames)
    o, o2 = rng.choice(frames), rng.choice(frames)
    if rng.random() < 0.5:
        body = rng.randrange(len(m.bodies))
        p = m.coordinates(o, m.bodies[body].point(_q(rng)))
    else:
        p = _point(rng)
    q = m.transform(o, o2, p)
    holds = all(m.sees(o, b, p) == m.sees(o2, b, q) for b in range(len(m.bodies)))
    b = {"o": o, "o2": o2, "x": p[0], "y": p[1], "z": p[2], "t": p[3],
         "x2": q[0], "y2": q[1], "z2": q[2], "t2": q[3]}
    return Instance("AxEv", b, holds, "same bodies at p for o and at its image for o2")


def _sample_symd(m: StandardModel, rng: random.Random) -> Instance:
    frames = sorted(m.frames)
    o, o2 = rng.choice(frames), rng.choice(frames)
    w = m.relative_velocity(o, o2)
    assert w is not None
    while True:
        r = (_q(rng), _q(rng), _q(rng))
        delta = cross3(r, w) if dot3(w, w) else r
        if dot3(delta, delta):
            break
    p1 = _point(rng)
    p2 = (p1[0] + delta[0], p1[1] + delta[1], p1[2] + delta[2], p1[3])
    q1, q2 = m.transform(o, o2, p1), m.transform(o, o2, p2)
    simultaneous = p1[3] == p2[3] and q1[3] == q2[3]
    d_o = dot3(delta, delta)
    dq = (q2[0] - q1[0], q2[1] - q1[1], q2[2] - q1[2])
    d_o2 = dot3(dq, dq)
    b = {"o": o, "o2": o2, **_named("", p1, ("x1", "y1", "z1", "t1")), **_named("", p2, ("x2", "y2", "z2", "t2")),
         **_named("", q1, ("u1", "v1", "w1", "s1")), **_named("", q2, ("u2", "v2", "w2", "s2")),
         "dx": delta[0], "dy": delta[1], "dz": delta[2], "ex": dq[0], "ey": dq[1], "ez": dq[2]}
    return Instance("AxSymd", b, simultaneous and d_o == d_o2,
                    f"simultaneous in both={simultaneous}, distance^2 {d_o} vs {d_o2}")


def _sample_noftl(m: StandardModel, rng: random.Random) -> Instance:
    frames = sorted(m.frames)
    o, o2 = rng.choice(frames), rng.choice(frames)
    p = rng.choice(m.photons)
    s = [_q(rng) for _ in range(4)]
    while s[0] == s[1]:
        s[1] = _q(rng)
    while s[2] == s[3]:
        s[3] = _q(rng)
    e1, e2 = (m.coordinates(o, m.bodies[o2].point(x)) for x in s[:2])
    e3, e4 = (m.coordinates(o, m.bodies[p].point(x)) for x in s[2:])
    d = [e2[k] - e1[k] for k in range(4)]
    e = [e4[k] - e3[k] for k in range(4)]
    lhs = (d[0] ** 2 + d[1] ** 2 + d[2] ** 2) * e[3] ** 2
    rhs = (e[0] ** 2 + e[1] ** 2 + e[2] ** 2) * d[3] ** 2
    direct = speed_squared(m, o, o2) < speed_squared(m, o, p)  # type: ignore[operator]
    b = {"o": o, "o2": o2, "p": p,
         **_named("", e1, ("x1", "y1", "z1", "t1")), **_named("", e2, ("x2", "y2", "z2", "t2")),
         **_named("", e3, ("x3", "y3", "z3", "t3")), **_named("", e4, ("x4", "y4", "z4", "t4")),
         **dict(zip(("dx", "dy", "dz", "dt"), d)), **dict(zip(("ex", "ey", "ez", "et"), e))}
    return Instance("NoFTL", b, direct and lhs < rhs, f"cross-multiplied {lhs} < {rhs}")


SAMPLERS: dict[str, Callable[[StandardModel, random.Random], Instance]] = {
    "AxSelf": _sample_self, "AxPh": _sample_ph, "AxEv": _sample_ev, "AxSymd": _sample_symd,
    "NoFTL": _sample_noftl,
}


def check_axiom_instances(m: StandardModel, axiom: str, samples: int = 100, seed: int = 0) -> InstanceReport:
    """Evaluate ``samples`` pseudo-random instances of ``axiom`` exactly; deterministic in ``seed``."""
    if axiom == "AxField":
        return check_field_laws(samples, seed)
    try:
        sampler = SAMPLERS[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom label {axiom!r}; expected one of "
                         f"{', '.join(('AxField',) + tuple(SAMPLERS))}") from None
    rng = random.Random(f"{axiom}:{seed}")
    return InstanceReport(axiom, seed, tuple(sampler(m, rng) for _ in range(samples)))


# ------------------------------------------------------------ ordered field

def field_laws(a: Fraction, b: Fraction, c: Fraction) -> dict[str, bool]:
    """The thirteen ordered-field laws at one triple (witnesses 0, 1, -a, 1/a)."""
    zero, one = Fraction(0), Fraction(1)
    return {
        "add_assoc": (a + b) + c == a + (b + c),
        "add_comm": a + b == b + a,
        "add_zero": a + zero == a,
        "add_inverse": (a + (-a)) + c == c,
        "mul_assoc": (a * b) * c == a * (b * c),
        "mul_comm": a * b == b * a,
        "field_one_inverse": one + one != one and a * one == a and (a + a == a or a * (1 / a) == one),
        "distrib": a * (b + c) == a * b + a * c,
        "lt_irrefl": not a < a,
        "lt_trans": not (a < b and b < c) or a < c,
        "lt_total": a < b or a == b or b < a,
        "lt_add": not a < b or a + c < b + c,
        "lt_mul_pos": not (zero < a and zero < b) or zero < a * b,
    }


def check_field_laws(samples: int = 1000, seed: int = 0) -> InstanceReport:
    rng = random.Random(f"AxField:{seed}")
    out = []
    for _ in range(samples):
        a, b, c = _q(rng), _q(rng), _q(rng)
        laws = field_laws(a, b, c)
        failed = [k for k, ok in laws.items() if not ok]
        out.append(Instance("AxField", {"a": a, "b": b, "c": c}, not failed, ",".join(failed)))
    return InstanceReport("AxField", seed, tuple(out))
