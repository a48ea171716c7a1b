"""
A verification report
=====================

The verifier runs every check for a list of (p, i) and collects any
mismatch as a finding.  The same report is available from the command line:

    verify --p 5 --i 1,5 --routes both --format text
"""

from ssorder.verifier import RunConfig, emit_report, run_verification

report = run_verification(RunConfig(primes=[5, 11], indices=[1], routes="both"))
print(emit_report(report, "text"))
print("exit code:", report.exit_code)
