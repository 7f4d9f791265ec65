"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line; the lines are also collected into the
terminal summary.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

import acceptance_suites as suites

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
_RUNS: dict[int, suites.SuiteResult] = {}


def _run(criterion: int) -> suites.SuiteResult:
    if criterion not in _RUNS:
        _RUNS[criterion] = suites.SUITES[criterion]()
    return _RUNS[criterion]


def _report(result) -> None:
    line = result.line()
    suites.RESULTS[result.criterion] = line
    print(line)


@pytest.mark.parametrize("criterion", sorted(suites.SUITES))
def test_criterion(criterion):
    result = _run(criterion)
    _report(result)
    assert result.passed, result.line() + "\n" + result.transcript


_DIGEST_SCRIPT = (
    "import json, sys; sys.path.insert(0, sys.argv[1]); import acceptance_suites as a; "
    "print(json.dumps(a.digests()))"
)

CLI_CASES = [
    ("hn", "symmetric.txt"),
    ("radical", "radical_member.txt"),
    ("trdeg", "trdeg_powers.txt"),
    ("cert", "cert_pair.txt"),
    ("reduce", "symmetric.txt"),
    ("zerodim", "hn_nonempty.txt"),
    ("threegen", "threegen_nonmember.txt"),
    ("hn", "extension_coeffs.txt"),
]


def _cli_outputs(hash_seed: str) -> list[bytes]:
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    return [
        subprocess.run(
            [sys.executable, "-m", "nullkit.cli", cmd, "--seed", "3", "--no-timing", str(FIXTURES / name)],
            capture_output=True,
            check=True,
            env=env,
        ).stdout
        for cmd, name in CLI_CASES
    ]


def determinism() -> suites.SuiteResult:
    """Suites rerun in two fresh interpreters (different hash seeds) match this one byte for byte."""
    import time

    t0 = time.perf_counter()
    procs = [
        subprocess.Popen(
            [sys.executable, "-c", _DIGEST_SCRIPT, str(TESTS)],
            stdout=subprocess.PIPE,
            env=dict(os.environ, PYTHONHASHSEED=hs),
        )
        for hs in ("1", "2")
    ]
    local = {k: _run(k).digest for k in suites.SUITES}
    remote = []
    for proc in procs:
        out, _ = proc.communicate()
        remote.append({int(k): v for k, v in json.loads(out).items()})
    same = [k for k in suites.SUITES if all(r.get(k) == local[k] for r in remote)]
    cli_same = _cli_outputs("1") == _cli_outputs("2")
    lines = [f"suite {k} {local[k]} {'same' if k in same else 'DIFFERS'}" for k in suites.SUITES]
    lines.append(f"cli {'same' if cli_same else 'DIFFERS'}")
    passed = len(same) == len(suites.SUITES) and cli_same
    summary = f"{len(same)}/{len(suites.SUITES)} suite transcripts and {len(CLI_CASES)} CLI reports byte-identical across processes"
    return suites.SuiteResult(7, passed, f"{summary}; {time.perf_counter() - t0:.1f}s", "\n".join(lines) + "\n")


def test_criterion_7_determinism():
    result = determinism()
    _report(result)
    assert result.passed, result.transcript


if __name__ == "__main__":
    failed = False
    for k in sorted(suites.SUITES):
        res = _run(k)
        print(res.line(), flush=True)
        failed |= not res.passed
    res = determinism()
    print(res.line())
    sys.exit(int(failed or not res.passed))
