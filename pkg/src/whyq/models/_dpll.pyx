# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled DPLL kernel; mirrors ``_dpll_py.solve`` decision for decision."""
from libcpp.vector cimport vector
from libc.time cimport time as c_time
import time

cdef int SAT = 1, UNSAT = 0, UNKNOWN = -1


cdef inline int lit_value(const vector[int]& value, int lit) nogil:
    cdef int v = value[lit >> 1]
    if v < 0:
        return v
    return v ^ (lit & 1)


def solve(clauses, int num_vars, long max_steps=-1, double wall_time=-1.0):
    """Return ``(status, assignment, steps)``; see the pure-Python twin for semantics."""
    cdef double deadline = time.monotonic() + wall_time if wall_time > 0 else 0.0
    cdef vector[int] value = vector[int](num_vars, -1)
    cdef vector[vector[int]] watches = vector[vector[int]](2 * num_vars)
    cdef vector[vector[int]] store
    cdef vector[int] units
    cdef vector[int] lits
    cdef vector[int] trail
    cdef vector[int] dec_pos, dec_lit, dec_flip
    cdef set seen
    cdef int lit, x, ci, i, k, n, first, false_lit, pos, tmp, nv, v
    cdef long steps = 0, rounds = 0
    cdef size_t qhead = 0
    cdef bint taut, conflict, moved, flipped
    cdef int next_var = 0
    cdef vector[int]* c
    cdef vector[int] keep

    for raw in clauses:
        seen = set()
        lits.clear()
        taut = False
        for x in raw:
            lit = 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1
            if (lit ^ 1) in seen:
                taut = True
                break
            if lit not in seen:
                seen.add(lit)
                lits.push_back(lit)
        if taut:
            continue
        if lits.size() == 0:
            return UNSAT, [False] * num_vars, 0
        if lits.size() == 1:
            units.push_back(lits[0])
            continue
        ci = store.size()
        store.push_back(lits)
        watches[lits[0]].push_back(ci)
        watches[lits[1]].push_back(ci)

    for i in range(<int>units.size()):
        lit = units[i]
        tmp = lit_value(value, lit)
        if tmp == 0:
            return UNSAT, [False] * num_vars, steps
        if tmp < 0:
            value[lit >> 1] = 1 - (lit & 1)
            trail.push_back(lit)
            steps += 1

    while True:
        rounds += 1
        conflict = False
        while qhead < trail.size():
            false_lit = trail[qhead] ^ 1
            qhead += 1
            keep.clear()
            n = watches[false_lit].size()
            i = 0
            while i < n:
                ci = watches[false_lit][i]
                i += 1
                c = &store[ci]
                if c[0][0] == false_lit:
                    c[0][0] = c[0][1]
                    c[0][1] = false_lit
                first = c[0][0]
                if lit_value(value, first) == 1:
                    keep.push_back(ci)
                    continue
                moved = False
                for k in range(2, <int>c[0].size()):
                    if lit_value(value, c[0][k]) != 0:
                        tmp = c[0][1]
                        c[0][1] = c[0][k]
                        c[0][k] = tmp
                        watches[c[0][1]].push_back(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.push_back(ci)
                if lit_value(value, first) == 0:
                    conflict = True
                    while i < n:
                        keep.push_back(watches[false_lit][i])
                        i += 1
                    break
                value[first >> 1] = 1 - (first & 1)
                trail.push_back(first)
                steps += 1
            watches[false_lit].swap(keep)
            if conflict:
                break

        if max_steps >= 0 and steps > max_steps:
            return UNKNOWN, [value[v] == 1 for v in range(num_vars)], steps
        if deadline != 0.0 and (rounds & 255) == 0 and time.monotonic() > deadline:
            return UNKNOWN, [value[v] == 1 for v in range(num_vars)], steps

        if conflict:
            while True:
                if dec_pos.size() == 0:
                    return UNSAT, [False] * num_vars, steps
                pos = dec_pos.back()
                lit = dec_lit.back()
                flipped = dec_flip.back()
                dec_pos.pop_back()
                dec_lit.pop_back()
                dec_flip.pop_back()
                for k in range(pos, <int>trail.size()):
                    nv = trail[k] >> 1
                    value[nv] = -1
                    if nv < next_var:
                        next_var = nv
                trail.resize(pos)
                qhead = pos
                if not flipped:
                    lit ^= 1
                    dec_pos.push_back(pos)
                    dec_lit.push_back(lit)
                    dec_flip.push_back(1)
                    value[lit >> 1] = 1 - (lit & 1)
                    trail.push_back(lit)
                    steps += 1
                    break
            continue

        while next_var < num_vars and value[next_var] >= 0:
            next_var += 1
        if next_var == num_vars:
            return SAT, [value[v] == 1 for v in range(num_vars)], steps
        lit = 2 * next_var + 1
        dec_pos.push_back(trail.size())
        dec_lit.push_back(lit)
        dec_flip.push_back(0)
        value[next_var] = 0
        trail.push_back(lit)
        steps += 1
