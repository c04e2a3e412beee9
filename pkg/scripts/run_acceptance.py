#!/usr/bin/env python3
"""Run the acceptance suite standalone and print one line per criterion.

Exit status is nonzero when any criterion fails.  Same checks as
tests/test_acceptance.py, without the pytest harness.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from nilquant import acceptance
from nilquant.analysis import default_threads


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--quiet", action="store_true")
    ns = ap.parse_args()
    threads = ns.threads if ns.threads else default_threads()
    echo = (lambda *_: None) if ns.quiet else (
        lambda msg: print(msg, file=sys.stderr, flush=True))
    t0 = time.time()
    results = acceptance.run_all(threads=threads, echo=echo)
    ok = acceptance.summarize(results)
    print("total %.1f min" % ((time.time() - t0) / 60))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
