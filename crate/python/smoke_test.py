"""Smoke test for the flagcsc_py extension.

Build with `maturin develop -m crates/py/Cargo.toml --features extension-module`,
or `cargo build -p flagcsc-py --features extension-module` and copy
target/debug/libflagcsc_py.so next to this file as flagcsc_py.so.
"""
import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import flagcsc_py as fc


def main():
    a2 = fc.RootSystem("A2")
    assert a2.rank == 2
    assert a2.cartan == [[2, -1], [-1, 2]]
    assert len(a2.positive_roots) == 3

    cp1 = fc.FlagVariety("A1")
    assert cp1.dim == 1
    assert cp1.classify_bundle_weight([-1]) == "negative"
    assert cp1.metric_index([-1]) == Fraction(1)
    assert cp1.metric_index([-3]) == Fraction(1, 3)

    burns = cp1.profile([-1], [1], 0)
    assert burns.phi_numerator == [0, 1, 1]
    assert burns.residual() == []
    assert burns.phi(Fraction(7, 3)) == Fraction(7, 3)
    assert burns.interval_end() is None
    beh = burns.behavior()
    assert beh["theorem_case"] == "scalar_flat"
    assert beh["complete"]

    full = fc.FlagVariety("A2")
    prof = full.profile([-1, -1], [1, 1], 0)
    assert prof.phi(1) == Fraction(13, 16)

    lo, hi = cp1.profile([-1], [1], 1).interval_end()
    assert lo <= hi and lo > 0

    fields = fc.FlagVariety("A2", [1]).invariant_fields([-1])
    assert fields["case"] in ("A", "B")

    try:
        cp1.profile([1], [1], 0)
    except fc.WeightDomainError:
        pass
    else:
        raise AssertionError("positive weight accepted")

    job = {"schema_version": 1, "lie_type": "A1", "pi_prime": [], "lambda": [-1],
           "kappa": [1], "scalar_curvature": 0}
    report = json.loads(fc.run_job(json.dumps(job)))
    assert report["schema_version"] == 1
    csv = fc.run_job(json.dumps(job), format="csv")
    assert csv.splitlines()[0] == "tau,phi,t,s,f,r"

    try:
        fc.run_job(json.dumps({**job, "kappa": [0.5]}))
    except fc.FlagcscError:
        pass
    else:
        raise AssertionError("float rational accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
