"""Smoke test for the zdaut_py extension module.

Build and install with `pip install --no-build-isolation -e crates/py`, then
run `python crates/py/python/smoke_test.py`.
"""

import math

import zdaut_py as z


def main():
    b = z.Semiring.builtin("bool")
    assert b.elements == ["0", "1"]
    assert b.add("1", "1") == "1" and b.mul("1", "1") == "1"
    assert all(w is None for _, w in b.check_axioms())

    z2 = z.Semiring.from_text(
        "semiring z2\norder 2\nzero 0\none 1\nadd\n0 1\n1 0\nmul\n0 0\n0 1\n"
    )
    assert dict(z2.check_axioms())["antinegativity"] == "(1,1)"

    chain = z.Semiring.builtin("chain3")
    assert chain.annihilator("0") == ["0", "a", "1"]
    assert chain.zero_divisors() == ["0"]
    assert chain.decompose() == ("a", ["a"])

    bb = z.Semiring.builtin("bool x bool")
    assert bb.decompose() == ("(1,1)", ["(0,1)", "(1,0)"])

    sizes = z.twin_sizes(b, 2)
    assert sorted(sizes) == [1] * 9 + [7]
    order = z.aut_order(b, 2)
    assert order == 10080 == math.factorial(7) * 2
    assert z.oracle_order(b, 2) == order
    assert len(z.generators(b, 2)) == 7

    assert z.aut_order(z.Semiring.builtin("bool x bool x bool")) == 6
    assert z.aut_order(z.Semiring.builtin("bool x bool"), 2) > 2**64

    checks = z.verify(b, 2)
    assert all(status == "PASS" for _, status, _ in checks), checks

    assert z.dot(b).count("->") == 3

    try:
        z.Semiring.builtin("chain1")
    except ValueError:
        pass
    else:
        raise AssertionError("chain1 should be rejected")

    try:
        z.aut_order(chain, 4)
    except RuntimeError:
        pass
    else:
        raise AssertionError("vertex cap should refuse M_4(chain3)")

    print("smoke test passed")


if __name__ == "__main__":
    main()
