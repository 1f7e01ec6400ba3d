"""Pure-Python DPLL: chronological backtracking over two-watched-literal propagation.

Clauses use DIMACS integers (``v`` or ``-v`` for variable ``v >= 1``).
Decisions take the lowest unassigned variable, false first.
The compiled kernel in ``_dpll.pyx`` implements the same search step for step.
"""
import time

SAT, UNSAT, UNKNOWN = 1, 0, -1


def solve(clauses, num_vars, max_steps=-1, wall_time=-1.0):
    """Return ``(status, assignment, steps)``; ``assignment[v - 1]`` is the value of ``v``."""
    deadline = time.monotonic() + wall_time if wall_time > 0 else 0.0
    value = [-1] * num_vars
    watches = [[] for _ in range(2 * num_vars)]
    store = []
    units = []
    for raw in clauses:
        seen = set()
        lits = []
        taut = False
        for x in raw:
            lit = 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1
            if lit ^ 1 in seen:
                taut = True
                break
            if lit not in seen:
                seen.add(lit)
                lits.append(lit)
        if taut:
            continue
        if not lits:
            return UNSAT, [False] * num_vars, 0
        if len(lits) == 1:
            units.append(lits[0])
            continue
        ci = len(store)
        store.append(lits)
        watches[lits[0]].append(ci)
        watches[lits[1]].append(ci)

    trail = []
    decisions = []  # (trail position, decided literal, flipped)
    steps = 0
    qhead = 0

    def lit_value(lit):
        v = value[lit >> 1]
        return v if v < 0 else v ^ (lit & 1)

    for lit in units:
        lv = lit_value(lit)
        if lv == 0:
            return UNSAT, [False] * num_vars, steps
        if lv < 0:
            value[lit >> 1] = 1 - (lit & 1)
            trail.append(lit)
            steps += 1

    next_var = 0
    rounds = 0
    while True:
        rounds += 1
        # unit propagation
        conflict = False
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            ws = watches[false_lit]
            keep = []
            i = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = store[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if lit_value(first) == 1:
                    keep.append(ci)
                    continue
                moved = False
                for k in range(2, len(c)):
                    if lit_value(c[k]) != 0:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if lit_value(first) == 0:
                    conflict = True
                    keep.extend(ws[i:])
                    break
                value[first >> 1] = 1 - (first & 1)
                trail.append(first)
                steps += 1
            watches[false_lit] = keep
            if conflict:
                break

        if max_steps >= 0 and steps > max_steps:
            return UNKNOWN, [v == 1 for v in value], steps
        if deadline and (rounds & 255) == 0 and time.monotonic() > deadline:
            return UNKNOWN, [v == 1 for v in value], steps

        if conflict:
            while True:
                if not decisions:
                    return UNSAT, [False] * num_vars, steps
                pos, lit, flipped = decisions.pop()
                for undo in trail[pos:]:
                    value[undo >> 1] = -1
                    if (undo >> 1) < next_var:
                        next_var = undo >> 1
                del trail[pos:]
                qhead = pos
                if not flipped:
                    lit ^= 1
                    decisions.append((pos, lit, True))
                    value[lit >> 1] = 1 - (lit & 1)
                    trail.append(lit)
                    steps += 1
                    break
            continue

        while next_var < num_vars and value[next_var] >= 0:
            next_var += 1
        if next_var == num_vars:
            return SAT, [v == 1 for v in value], steps
        lit = 2 * next_var + 1  # false first
        decisions.append((len(trail), lit, False))
        value[next_var] = 0
        trail.append(lit)
        steps += 1
