"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
LINES: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> bool:
    LINES[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(LINES[n])
    return ok
