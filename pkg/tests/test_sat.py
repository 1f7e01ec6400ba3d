import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whyq.models import _dpll_py, sat

needs_compiled = pytest.mark.skipif(sat.compiled_solve is None, reason="compiled kernel not built")


@st.composite
def cnfs(draw, max_vars=7):
    n = draw(st.integers(1, max_vars))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=0, max_size=4), max_size=5 * n))
    return clauses, n


def brute_sat(clauses, n):
    for bits in itertools.product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def satisfied(clauses, assignment):
    return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in clauses)


@settings(max_examples=300)
@given(cnfs())
def test_python_solver_agrees_with_truth_tables(problem):
    clauses, n = problem
    status, assignment, _ = _dpll_py.solve(clauses, n)
    assert status == (sat.SAT if brute_sat(clauses, n) else sat.UNSAT)
    if status == sat.SAT:
        assert satisfied(clauses, assignment)


@needs_compiled
@settings(max_examples=300)
@given(cnfs(max_vars=12))
def test_compiled_kernel_is_step_for_step_identical(problem):
    clauses, n = problem
    assert sat.compiled_solve(clauses, n) == sat.python_solve(clauses, n)


@pytest.mark.parametrize("solve", [sat.python_solve, sat.compiled_solve])
def test_step_budget_gives_unknown(solve):
    if solve is None:
        pytest.skip("compiled kernel not built")
    # pigeonhole 6 into 5: unsatisfiable and hard for DPLL
    holes, pigeons = 5, 6
    var = lambda p, h: p * holes + h + 1  # noqa: E731
    clauses = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    clauses += [[-var(p, h), -var(q, h)] for h in range(holes) for p in range(pigeons) for q in range(p)]
    status, _, steps = solve(clauses, pigeons * holes, max_steps=50)
    assert status == sat.UNKNOWN and steps > 50
    assert solve(clauses, pigeons * holes)[0] == sat.UNSAT


def test_empty_clause_and_empty_problem():
    assert sat.solve([[]], 1)[0] == sat.UNSAT
    assert sat.solve([], 3)[0] == sat.SAT


def test_environment_variable_forces_python_backend():
    code = "from whyq.models import sat; print(sat.BACKEND)"
    env = {**os.environ, "WHYQ_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
