"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import time

import pytest

from bipolar.verify import CRITERIA, TIME_LIMITS, run_criterion

SLUGS = {
    1: "cycle algebra",
    2: "Z to Z_n transfers",
    3: "graph examples",
    4: "reflection and coreflection adjunctions",
    5: "coadjunction and Yoneda",
    6: "contraposition round trip",
    7: "atoms and Cauchy completion",
    8: "Kan extensions",
    9: "two-valued suite",
    10: "groupoids, clopen parts and comappings",
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    start = time.perf_counter()
    check = run_criterion(number)
    elapsed = time.perf_counter() - start
    limit = TIME_LIMITS.get(number)
    in_time = limit is None or elapsed < limit
    ok = check.ok and in_time
    budget = f" (limit {limit:g}s)" if limit else ""
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {SLUGS[number]} "
              f"[{elapsed:.2f}s{budget}] {check.detail}")
    assert check.ok, check.line()
    assert in_time, f"took {elapsed:.2f}s, limit {limit}s"
