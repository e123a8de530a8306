import random

import pytest

from coact import bockstein as bk
from coact import f2poly as fp
from coact import presets as pr
from conftest import P


@pytest.fixture(scope="module")
def mj1():
    return pr.build("Mj1")


def bit_rank(vectors):
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def homology_oracle(M, dmax):
    """ker/im of beta_1 via bitmask ranks on monomial coordinates."""
    out = []
    for d in range(dmax + 1):
        here = M.basis(d)
        below = {m: i for i, m in enumerate(M.basis(d - 1))} if d else {}
        above = M.basis(d + 1)

        def code(p, index):
            return sum(1 << index[m] for m in p)
        idx = {m: i for i, m in enumerate(here)}
        rk_out = bit_rank([code(bk.beta1(frozenset([m])), below) for m in here]) if below else 0
        rk_in = bit_rank([code(bk.beta1(frozenset([m])), idx) for m in above])
        out.append(len(here) - rk_out - rk_in)
    return out


def test_beta1_examples():
    assert bk.beta1(P("x[3]")) == P("x[2]")
    assert bk.beta1(P("x[2]")) == fp.ZERO
    assert bk.beta1(P("Q[4](x[2])")) == P("Q[3](x[2])")
    assert bk.beta1(P("Q[4](x[3])")) == P("x[3]^2")
    assert bk.beta1(P("Q[3](x[2])")) == fp.ZERO
    assert bk.beta1(P("Q[6,3](x[2])")) == P("Q[3](x[2])^2")


def test_beta1_squares_to_zero(mj1):
    for d in range(13):
        for m in mj1.basis(d):
            assert not bk.beta1(bk.beta1(frozenset([m])))


def test_beta1_derivation(mj1):
    rnd = random.Random(3)
    pool = [m for d in range(1, 12) for m in mj1.basis(d)]
    for _ in range(300):
        a, b = frozenset([rnd.choice(pool)]), frozenset([rnd.choice(pool)])
        assert bk.beta1(fp.mul(a, b)) == fp.add(fp.mul(bk.beta1(a), b), fp.mul(a, bk.beta1(b)))


def test_beta1_is_zeta1_component(mj1):
    for d in range(13):
        for m in mj1.basis(d):
            assert bk.beta1(frozenset([m])) == bk.zeta1_component(mj1.coact_mono(m))


def test_beta1_homology_examples(mj1):
    h = bk.beta1_homology(12)
    assert h[0] == 1
    assert h[2] == 0
    # x_3^2 is a cycle but also the boundary of Q^4 x_3, so degree 6 is acyclic
    assert h[6] == 0
    assert bk.beta1(P("x[2]^2*x[3]")) == P("x[2]^3")
    assert h == homology_oracle(mj1, 12)
    assert h == [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1]


def test_beta1_homology_quotient_agrees():
    assert bk.beta1_homology(12, quotient=True) == bk.beta1_homology(12)


def test_cotensor_homology():
    assert bk.beta1_cotensor_homology(12) == [1] + [0] * 12


def test_higher_bockstein_examples():
    y = P("Q[4](x[2])")
    assert bk.higher_bockstein(2, y) == P("Q[4](x[2])*Q[3](x[2]) + Q[6,3](x[2])")
    assert bk.higher_bockstein(2, P("x[2]")) == fp.ZERO
    x = P("Q[4](x[2])")
    b2 = bk.higher_bockstein(2, x)
    assert bk.higher_bockstein(3, fp.power(x, 2), lower=fp.mul(x, b2)) == fp.mul(fp.power(x, 2), fp.mul(x, b2))


def test_higher_bockstein_refuses_odd_degree():
    with pytest.raises(bk.OddDegree):
        bk.higher_bockstein(2, P("x[3]"))
    with pytest.raises(ValueError):
        bk.higher_bockstein(3, P("x[2]"))


@pytest.fixture(scope="module")
def bss():
    return bk.bss_pages(12, 4)


def test_bss_pages(bss):
    assert not bss.undetermined
    dims = [[p.dim(d) for d in range(13)] for p in bss.pages]
    assert dims[0] == pr.build("Mj1").poincare(12)
    assert dims[1] == bk.beta1_homology(12)
    for a, b in zip(dims, dims[1:]):
        assert all(x >= y for x, y in zip(a, b))
    assert dims[-1] == [1] + [0] * 12


def test_bss_summands(bss):
    free = {d: c for d, c in bss.torsion_free.items() if c}
    assert free == {0: 1}
    assert (5, 1) in bss.summands
    counts = {}
    for d, r in bss.summands:
        counts[(d, r)] = counts.get((d, r), 0) + 1
    assert counts[(11, 2)] == 1
    z2 = {d: c for (d, r), c in counts.items() if r == 1}
    assert z2 == {2: 1, 4: 1, 5: 1, 6: 2, 7: 2, 8: 4, 9: 4, 10: 7, 11: 7, 12: 12}


def test_e2_product(bss):
    e2, predicted, w, q = bk.e2_product_check(12)
    assert e2 == predicted


def test_bss_json(bss):
    js = bss.to_json()
    assert js["torsion_free"] == {"0": 1}
    assert js["pages"][0]["r"] == 1
    assert "torsion" in bss.summary()
