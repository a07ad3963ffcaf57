"""Quick check that the compiled extension imports and answers known values."""
import json
from math import comb

import binowords as bw


def main():
    assert bw.binomial_coefficient("0110", "01") == 2
    assert bw.binomial_coefficient("0" * 100, "0" * 50) == comb(100, 50)
    assert bw.equivalent("0110", "1001", 2)
    assert not bw.equivalent("0110", "1001", 3)
    assert bw.signature("011", 2)["01"] == 2

    tm = bw.Generator("tm")
    assert tm.prefix(8) == "01101001"
    assert tm.factor_complexity(6) == [1, 2, 4, 6, 10, 12, 16]
    b2 = tm.binomial_complexity(2, 16)
    assert b2[8] == 9 and b2[6] == 8
    assert sum(len(c) for c in tm.classes(2, 6)) == 16
    graph = json.loads(tm.rauzy_json(6))
    assert (graph["vertex_count"], graph["edge_count"]) == (3, 6)

    fib = bw.Generator("fib")
    assert fib.prefix(19) == "0100101001001010010"
    assert fib.factor_complexity(10) == list(range(1, 12))
    assert fib.edge_quotients(10)[0] == 4

    phi = bw.Morphism("0 -> 01\n1 -> 10\n")
    assert phi.power(2).apply("0") == "0110"
    cls = phi.classify()
    assert cls.rank == 1 and cls.uniform and cls.prolongable_on == "0"
    assert phi.adjacency_matrix() == [[1, 1], [1, 1]]

    assert ("", "011", "0") in bw.phi_factorizations("0110100", 1)
    assert bw.tm_decode(tm.prefix(64), 2) == ("", tm.prefix(16))

    ok, report = bw.run_suite("michel")
    assert ok and "PASS" in report
    assert "ochsenschlager" in bw.suite_names()

    try:
        bw.Generator("tm", prefix_cap=64).factor_complexity(3)
    except bw.StabilizationError:
        pass
    else:
        raise AssertionError("expected a stabilization failure")
    try:
        bw.Generator("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("expected a bad spec error")

    print("smoke test ok")


if __name__ == "__main__":
    main()
