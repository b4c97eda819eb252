"""Smoke test for the tauwide extension module."""

import json
import sys

import tauwide

LAMBDA9 = """\
vertex 1
vertex 2
vertex 3
arrow a : 1 -> 2
arrow b : 2 -> 3
arrow c : 1 -> 3
relation b*a
"""


def main() -> int:
    alg = tauwide.Algebra(LAMBDA9)
    assert alg.vertices == ["1", "2", "3"], alg.vertices
    cat = tauwide.Category(alg)
    labels = cat.labels()
    assert len(labels) == 9, labels
    assert len(cat) == 18, len(cat)
    assert cat.tau("2") == "1/3"
    assert cat.reduce("2", "1/2") == "1"
    assert cat.lift("2", "1") == "1/2"
    ranks = sorted(r for r, _ in cat.wide_subcategories())
    assert ranks.count(0) == 1 and ranks.count(3) == 1, ranks

    graph = json.loads(cat.export(drop_zero_object=True))
    assert len(graph["objects"]) == 17

    ok, report = cat.verify()
    assert ok, report

    try:
        tauwide.Algebra("vertex 1\narrow a : 1 -> 1\n")
    except tauwide.TauWideError:
        pass
    else:
        raise AssertionError("a loop without relations must be rejected")

    fp = tauwide.Category(tauwide.Algebra(LAMBDA9, field="F101"))
    assert len(fp) == 18

    print(f"ok: {cat!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
