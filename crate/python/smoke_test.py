"""Smoke test for the symdeg extension module.

Build and copy the module next to this file first:

    cargo build -p symdeg-python --release
    cp target/release/libsymdeg.so python/symdeg.so
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import symdeg  # noqa: E402

QUARTIC = "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2"


def main():
    h = symdeg.Hessian(QUARTIC)
    assert h.vars == ["w0", "w1", "w2", "w3"]
    assert h.degree == 4
    assert h.matrix()[3][3] == "2*w0^2"
    assert [h.rank_at(p) for p in ([1, 0, 0, 0], [0, 1, 0, 0], "0,0,1,0", [0, 0, 0, 1])] == [1, 3, 3, 1]
    assert h.rank_at([Fraction(1, 2), 0, 0, 0]) == 1
    strata = h.stratify([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert strata == {1: [[1, 0, 0, 0]], 3: [[0, 1, 0, 0]]}
    assert h.generic_rank_on_hypersurface()[0] == 3
    assert symdeg.dual_dimension(QUARTIC) == 1

    rel = symdeg.rank_relation("x0^3+x1^3+x2^3+x3^3", [1, -1, 0, 0])
    assert rel["holds"] and rel["rank_Q"] == rel["rank_A"] + 2

    assert symdeg.quad_betti(6) == [1, 1, 2, 1, 1]
    assert symdeg.lh_projective_dim([1, 0, 1], 2, 4) == 2
    cert = symdeg.nonsurjectivity_certificate(4, 1)
    assert cert["surjection_impossible"] and cert["gap"] == 1
    tors = symdeg.torsion_certificate(3, 0, betti=[1])
    assert tors["element_order"] == 2

    rep = symdeg.replay_main_theorem(4, 3, 2)
    assert not rep["consistent"] and rep["verdict"].endswith("X_2 must be nonempty")
    assert symdeg.main_bound(7, 3) == 4
    assert symdeg.corollary_threshold(5, 2)["threshold"] == 6
    assert symdeg.sym_stratum_dim(4, 4) == 9

    try:
        symdeg.Hessian("x0^3 + x1")
    except ValueError as e:
        assert "not homogeneous" in str(e)
    else:
        raise AssertionError("inhomogeneous input accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
