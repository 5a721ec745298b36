"""Smoke test for the `agg` extension module.

Build and install first, e.g.
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/agg-*.whl
then run `python python/smoke_test.py`.
"""

import agg


def main():
    ir5 = agg.Structure.corpus("ir5")
    assert ir5.order == 5
    laws = dict(ir5.laws())
    assert laws["left_invertive"] and laws["ag_star_star"]
    assert ir5.is_intra_regular()

    # c = (c 1 (c 1 c)) 1 d
    w = ir5.intra_witness(2)
    assert (w["x"], w["y"]) == (2, 3), w

    assert [0, 1] in ir5.ideals("two_sided")
    assert "two_sided" in ir5.classify([0, 1])

    # (1/2 at c) ∘ (7/10 at d) = 1/2 at e
    f = (2, [0, 0, 1, 0, 0])
    g = (10, [0, 0, 0, 7, 0])
    assert ir5.product(f, g) == (2, [0, 0, 0, 0, 1])

    v = ir5.verify("grand_equiv", lattice=2)
    assert v["status"] == "holds", v
    assert ir5.semilattice(lattice=1)["violations"] == []

    pair = agg.Structure([[[1, 1], [1, 1]]], labels=["1"])
    v = pair.verify("sf", lattice=1)
    assert v["status"] == "counterexample", v

    counts = [len(agg.enumerate_models(n, laws=["left_invertive"])) for n in (1, 2, 3)]
    assert counts == [1, 3, 20], counts

    assert "grand_equiv" in agg.theorem_ids()
    try:
        ir5.verify("no_such_statement")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown id accepted")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
