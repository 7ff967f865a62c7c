"""Run every property suite over generated terms and the example corpus."""

import sys

from degree_lab.generate import GenConfig
from degree_lab.properties import SUITES, cases, run_suite

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
cfg = GenConfig(seed=seed, count=100, max_size=10, max_degree=2)
terms = cases(cfg)
ok = True
for name in SUITES:
    report = run_suite(name, terms, seed)
    print(report.summary())
    for f in report.failures[:3]:
        print("   ", f.origin, f.detail)
    ok &= report.ok
sys.exit(0 if ok else 1)
