"""The nine acceptance criteria, one test each, with a printed pass/fail
line per criterion (run pytest with -s or look at captured output).

Each criterion delegates to the corresponding check in ppcount.verify so
the CLI `ppcount verify` and this suite can never drift apart.
"""

import pytest

from ppcount import verify

CRITERIA = [
    (1, "oracle equivalence, exhaustive to 1e4 and spot 1e5/1e6",
     verify.check_oracle_equivalence),
    (2, "known values C_2(10), C_2(100), C_3(10), psi(10), psi1(10)",
     verify.check_known_values),
    (3, "trapezoid identity on 50 randomized (x, h, delta) triples",
     verify.check_trapezoid_identity),
    (4, "explicit-formula self-consistency at x = 1e4",
     verify.check_explicit_consistency),
    (5, "zero-table gates: RvM drift and reciprocal-sum growth",
     verify.check_zero_table_gates),
    (6, "three-range zero-sum bounds at (1e5, 1e3, 1e2)",
     verify.check_three_range_bounds),
    (7, "normalized-error boundedness on the log grid, k in {2, 3}",
     verify.check_normalized_error),
    (8, "short interval x = 1e12, h = 1e8, k = 2 within 1 percent",
     verify.check_short_interval),
    (9, "cstar identity against the weighted brute-force sum",
     verify.check_cstar_identity),
]


@pytest.mark.parametrize("number,description,check", CRITERIA,
                         ids=[f"criterion-{n}" for n, _, _ in CRITERIA])
def test_acceptance_criterion(number, description, check):
    result = check()
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] criterion {number}: {description} "
          f"-- {result.detail} ({result.elapsed_ms:.0f} ms)")
    assert result.passed, f"criterion {number}: {result.detail}"
