"""Finite-n certificates: checking the proof inequalities numerically.

The distribution results rest on explicit finite-n inequalities (norm
bounds for correction terms, symmetrization errors, sampling-vs-Hadamard
splits, truncation bounds for unbounded coefficients).  Each registered
family evaluates its inequalities on an (n, m) grid; these are exact
statements, so a single FAIL line would mean a bug in the builders.
"""
from gltkit import certificate_families, run_certificates

for family in certificate_families():
    checks = run_certificates(family, ns=(50, 200), ms=(2, 8))
    ok = sum(c.ok for c in checks)
    print(f"{family}: {ok}/{len(checks)} inequalities hold")
    # the tightest check of the family, as a sample line
    tightest = max(checks, key=lambda c: c.lhs / c.rhs if c.rhs else 0.0)
    print(f"  tightest: {tightest.line()}")
