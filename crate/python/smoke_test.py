"""Smoke test for the omegaq extension module.

Build the module first:

    cargo build --release -p omegaq-python --features extension-module

then run `python3 python/smoke_test.py`. Set OMEGAQ_LIB to load a library
from somewhere other than target/release.
"""

import importlib.machinery
import importlib.util
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import omegaq  # installed with maturin / pip

        return omegaq
    except ImportError:
        pass
    candidates = [os.environ.get("OMEGAQ_LIB")] + [
        str(ROOT / "target" / "release" / name) for name in ("libomegaq.so", "libomegaq.dylib", "omegaq.dll")
    ]
    for path in filter(None, candidates):
        if Path(path).exists():
            loader = importlib.machinery.ExtensionFileLoader("omegaq", path)
            spec = importlib.util.spec_from_file_location("omegaq", path, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("omegaq extension not found; build it with "
             "`cargo build --release -p omegaq-python --features extension-module`")


def main():
    om = load()

    omega = {k: Fraction(v) for k, v in om.omega(5).items()}
    assert omega["[[]]"] == Fraction(-1, 2)
    assert omega["[[][]]"] == Fraction(1, 12)
    assert omega["[[][][][]]"] == Fraction(-1, 720)

    oq = om.omega_q(5)
    assert len(oq) == 1 + 1 + 2 + 4 + 9
    assert str(oq.coeff("[[][]]")) == "q/(2*Phi2*Phi3)"
    assert str(oq.coeff(om.RootedTree.corolla(5))) == "q*(q^4 - q^3 - 2*q^2 - q + 1)/(24*Phi2*Phi3*Phi4*Phi5)"
    assert {k: Fraction(v) for k, v in oq.specialize("1").items()} == omega
    assert oq.specialize("0") == {"[" * n + "]" * n: ("1/1" if n % 2 else "-1/1") for n in range(1, 6)}
    assert oq.infinity_limit() == om.omega_infinity(5)
    assert oq.denominators_within_bound()
    assert oq == om.omega_q(5, mode="forks")

    carlitz = [str(b) for b in oq.carlitz()]
    assert carlitz == [str(b) for b in om.carlitz_numbers(5)]
    assert carlitz[2] == "q/(Phi2*Phi3)"
    assert [b.eval_at("1") for b in oq.carlitz()][:3] == ["1/1", "-1/2", "1/6"]

    t = om.RootedTree("[[]]")
    assert t.degree == 2 and t.graft(om.RootedTree.leaf()) == {"[[[]]]": 1, "[[][]]": 1}
    assert [len(om.enumerate_trees(n)) for n in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]
    assert [len(om.enumerate_planar_binary_trees(n)) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    assert om.PlanarBinaryTree.right_comb(2).descent_set() == [1]

    rec = [(str(t), str(c)) for t, c in om.dend_omega_q(5)]
    assert rec == [(str(t), str(c)) for t, c in om.dend_omega_q(5, mode="explicit")]
    assert rec[1] == ("((..).)", "-1/Phi2")

    bundle = json.loads(om.compute_json("omega-q", 3))
    assert bundle["kind"] == "omega-q" and bundle["order"] == 3 and len(bundle["terms"]) == 4

    for name in om.checks():
        passed, report = om.run_check(name, 4)
        assert passed, report

    try:
        om.RootedTree("[[]")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed encoding accepted")

    print("omegaq smoke test passed")


if __name__ == "__main__":
    main()
