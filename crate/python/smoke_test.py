#!/usr/bin/env python3
"""Smoke test for the qdec_py extension module.

Builds nothing itself: run `cargo build -p qdec-py` first (or pass
--release and build in release mode). The script locates the produced
cdylib, loads it as the module `qdec_py`, and exercises the main
entry points against known values.
"""

import argparse
import importlib.util
import pathlib
import shutil
import sys
import tempfile


def load_module(profile: str):
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / "libqdec_py.so",
        root / "target" / profile / "libqdec_py.dylib",
        root / "target" / profile / "qdec_py.dll",
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit(
            f"could not find the qdec_py cdylib under target/{profile}; "
            f"run `cargo build -p qdec-py` first"
        )
    tmp = tempfile.mkdtemp(prefix="qdec_py_")
    target = pathlib.Path(tmp) / ("qdec_py" + lib.suffix.replace(".dylib", ".so"))
    shutil.copy2(lib, target)
    spec = importlib.util.spec_from_file_location("qdec_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--release", action="store_true", help="load the release build")
    args = parser.parse_args()
    q = load_module("release" if args.release else "debug")

    # describe: the two headline groups
    rep = q.describe_sl(8, 2)
    assert rep.group == "SL_8/μ_2", rep.group
    assert (rep.ell, rep.n_g, rep.inv_ind_order) == (1, 2, 2), rep
    assert rep.inv_dec == "F^×/F^{×2}"
    assert rep.split_note == "F^×/F^{×2} ⊕ Z/2Z"
    assert rep.all_pass and all(c[3] for c in rep.crosschecks)

    rep = q.describe_hspin(16)
    assert (rep.ell, rep.n_g, rep.inv_ind_order) == (1, 4, 4), rep
    assert rep.inv_ind_presentation == "(Z/4Z)q"

    # closed forms
    assert q.ell_sl(2, 2) == 4
    assert q.ell_halfspin(3) == 4
    assert q.n_g_sl(9, 3, 1) == 3
    assert q.n_g_sl(2, 2, 1) == 4
    assert q.n_g_halfspin(2) == 2
    assert q.q_tau_sl(8, 2) == (7, 1)
    assert q.q_tau_sl(5, 1) == (10, 1)

    # representation data
    assert q.weyl_dim("D", 8, [0] * 7 + [1]) == 128
    assert q.dynkin_index("D", 8, [0] * 7 + [1]) == 32
    assert q.dynkin_index("A", 1, [2]) == 4
    assert q.orbit_index("A", 2, [2, 0]) == 4
    assert q.dynkin_index("A", 2, [2, 0]) == 5
    assert q.n_chi_type_a(8, [1, 1, 0, 0, 0, 0, 0, 0]) == 6

    # restriction and split cases
    assert q.restrict_halfspin(4) == (4, 2, 1, 1)
    assert q.restrict_halfspin(6) == (2, 1, 0, 1)
    assert q.split_cases() == [
        ("SL_8/μ_2", "F^×/F^{×2} ⊕ Z/2Z"),
        ("SL_9/μ_3", "F^×/F^{×3} ⊕ Z/3Z"),
        ("HSpin_16", "F^×/F^{×2} ⊕ Z/4Z"),
    ]

    # error paths surface as ValueError
    for bad in (lambda: q.describe_sl(8, 3), lambda: q.describe_hspin(10)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    # a quick verification pass
    total, failed = q.verify("restrict")
    assert failed == 0 and total == 14, (total, failed)
    total, failed = q.verify("qtau", max_n=12)
    assert failed == 0 and total > 20, (total, failed)

    print(f"smoke test passed: {q.__name__} OK")


if __name__ == "__main__":
    main()
