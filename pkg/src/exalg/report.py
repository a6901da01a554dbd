"""Run named check suites and print a per-check report.

A suite is a callable returning a list of (name, ok) entries; every check
inside asserts exactly (no tolerances), attaching the offending values as
the assertion payload.  The reporter prints one line per check, catches
the first failure of each suite and shows its payload, and keeps running
the remaining suites so a single run reports everything that is broken.

Output is deterministic for a fixed seed except for the elapsed-time
fields, which tests strip before comparing runs.
"""

from __future__ import annotations

import sys
import time


class Reporter:
    """Collects suite outcomes and renders them as a flat text report."""

    def __init__(self, stream=None):
        self.stream = stream if stream is not None else sys.stdout
        self.suites = 0
        self.checks = 0
        self.failures: list[str] = []

    def line(self, text: str = ""):
        print(text, file=self.stream)

    def preamble(self, seed: int):
        self.line(f"seed: {seed}")

    def run(self, title: str, fn) -> bool:
        """Execute one suite; returns True when every check passed."""
        self.suites += 1
        self.line(f"== {title}")
        t0 = time.perf_counter()
        try:
            results = fn()
        except AssertionError as exc:
            self._fail(title, "counterexample", exc.args)
            return False
        except (ValueError, RuntimeError) as exc:
            # solver-level refusals (no unique solution, span escape,
            # dimension mismatch, ...) are verification failures too
            self._fail(title, "structural failure", exc.args)
            return False
        ok = True
        for name, passed in results:
            self.checks += 1
            if passed:
                self.line(f"ok   {name}")
            else:
                ok = False
                self._fail(title, "check reported false", (name,))
        if ok:
            dt = time.perf_counter() - t0
            self.line(f"--   {len(results)} checks in {dt:.2f}s")
        return ok

    def _fail(self, title: str, kind: str, payload):
        self.checks += 1
        detail = ", ".join(repr(p) for p in payload) if payload else ""
        msg = f"FAIL {title}: {kind}" + (f": {detail}" if detail else "")
        self.failures.append(msg)
        self.line(msg)

    def summary(self) -> int:
        """Print the closing lines; returns the process exit status."""
        self.line()
        if self.failures:
            self.line(f"FAILED: {len(self.failures)} of {self.suites} suites")
            for msg in self.failures:
                self.line(f"  {msg}")
            return 1
        self.line(f"all {self.suites} suites passed ({self.checks} checks)")
        return 0
