"""Run every verification suite at (1|1) and print the text report."""

from superber.verify import VerifyConfig, report_text, run_suite

report = run_suite("all", VerifyConfig(m=1, n=1, trials=5))
print(report_text(report), end="")
