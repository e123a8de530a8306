import random

import pytest

from coact import comodule as cm
from coact import dyerlashof as dl
from coact import f2poly as fp
from coact import presets as pr
from coact import steenrod as st
from conftest import P


@pytest.fixture(scope="module")
def mj1():
    return pr.build("Mj1")


def test_nishida_examples(mj1):
    assert mj1.rcoact(P("Q[4](x[3])")) == P(
        "Q[4](x[3]) | 1 + x[3]^2 | z1 + x[2]^2 | xi2 + 1 | xi3 + Q[3](x[2]) | z1^2")
    assert mj1.rcoact(P("Q[3](x[2])")) == P("Q[3](x[2]) | 1")
    assert mj1.rcoact(P("Q[5](x[2])")) == P("Q[5](x[2]) | 1 + Q[3](x[2]) | z1^2")


def test_nishida_formula_direct(mj1):
    t = mj1.rcoact(P("x[3]"))
    assert cm.nishida_from_tensor(4, t, 3) == mj1.rcoact(P("Q[4](x[3])"))
    with pytest.raises(cm.DegreeError):
        cm.nishida_from_tensor(2, t, 3)


@pytest.mark.parametrize("g", ["x[2]", "x[3]", "Q[3](x[2])", "Q[4](x[3])", "Q[6,3](x[2])"])
def test_nishida_square_case(mj1, g):
    z = P(g)
    d = fp.poly_degree(z)
    assert cm.nishida_from_tensor(d, mj1.rcoact(z), d) == fp.tpower(mj1.rcoact(z), 2)


def test_coact_examples(mj1):
    tmf = pr.build("tmf-skel15", "corrected")
    assert tmf.coact(P("x[8]")) == P("z1^8 | 1 + 1 | x[8]")
    assert mj1.coact(P("Q[4](x[3]) + Q[5](x[2])")) == P(
        "1 | (Q[4](x[3]) + Q[5](x[2])) + z1 | x[3]^2 + z2 | x[2]^2 + z3 | 1")
    assert mj1.coact(P("x[2]^2")) == P("z1^4 | 1 + 1 | x[2]^2")


def test_unknown_generator(mj1):
    with pytest.raises(cm.UnknownGenerator):
        mj1.coact(P("x[5]"))


def test_twist_examples(mj1):
    left = P("1 | x[3] + z1 | x[2] + z2 | 1")
    right = P("x[3] | 1 + x[2] | z1 + 1 | xi2")
    assert mj1.coact(P("x[3]")) == left
    assert cm.twist(left, "left_to_right") == right
    assert cm.twist(right, "right_to_left") == left
    assert cm.twist(P("1 | x[3]"), "left_to_right") == P("x[3] | 1")


def test_twist_involution_random(mj1):
    rnd = random.Random(5)
    for d in range(1, 13):
        for m in mj1.basis(d):
            t = mj1.coact_mono(m)
            assert cm.twist(cm.twist(t, "left_to_right"), "right_to_left") == t
            r = cm.twist(t, "left_to_right")
            assert fp.tcontract_right(r, lambda a: a == fp.ONE) == frozenset([m])


def test_induced_coaction_examples(mj1):
    A0 = st.A(0)
    want = fp.tadd(fp.tensor(fp.UNIT, pr.X_family(1, 3)),
                   fp.tensor(P("z1"), fp.power(pr.X_family(1, 2), 2)))
    assert cm.induced_coaction(pr.X_family(1, 3), mj1, A0) == want
    assert cm.induced_coaction(P("x[2]"), mj1, A0) == P("1 | x[2]")
    M2 = pr.build("Mj2")
    X = lambda s: pr.X_family(2, s)
    for s in (5, 6):
        want = fp.tadd(fp.tensor(fp.UNIT, X(s)), fp.tensor(P("z1"), fp.power(X(s - 1), 2)),
                       fp.tensor(P("z2"), fp.power(X(s - 2), 4)))
        assert cm.induced_coaction(X(s), M2, st.A(1)) == want


AXIOM_CAPS = [("HZ-skel3", None, 3), ("kO-skel7", None, 7), ("tmf-skel15", "corrected", 15),
              ("Mjc-skel7", None, 7), ("Mj1", None, 16), ("Mj2", None, 16), ("Mj3", None, 16),
              ("Mjc", None, 14), ("Mjc-mod-w", None, 14), ("Rinf-z", None, 30)]


@pytest.mark.parametrize("name,variant,dmax", AXIOM_CAPS)
def test_preset_axioms(name, variant, dmax):
    rep = cm.check_comodule_axioms(pr.build(name, variant), dmax)
    assert rep.ok, rep.summary()


def test_tmf_as_printed_fails_at_x15():
    rep = cm.check_comodule_axioms(pr.build("tmf-skel15", "as-printed"), 15)
    assert not rep.ok
    label, defect = rep.witness
    assert label == "x[15]"
    assert P(defect) == P("z1 | z3^2 | 1 + z1 | z2^2 | x[8] + z1 | z1^2 | x[12]")


@pytest.mark.parametrize("name", ["Mj1", "Mj2", "Mjc"])
def test_coact_is_algebra_map(name):
    M = pr.build(name)
    rnd = random.Random(11)
    pool = [m for d in range(1, 11) for m in M.basis(d)]
    for _ in range(60):
        a, b = rnd.choice(pool), rnd.choice(pool)
        if fp.mono_degree(a) + fp.mono_degree(b) > 20:
            continue
        assert M.coact_mono(fp.mono_mul(a, b)) == fp.tmul(M.coact_mono(a), M.coact_mono(b))


@pytest.mark.parametrize("name,dmax", [("Mj1", 16), ("Mj2", 16), ("Mj3", 16), ("Mjc-mod-w", 16), ("Rinf-z", 16)])
def test_orientation_equivariance(name, dmax):
    M = pr.build(name)
    rho = pr.orientation_rho(name)
    for d in range(dmax + 1):
        for m in M.basis(d):
            assert not cm.equivariance_defect(frozenset([m]), M, rho), fp.mono_str(m)


def test_ideal_invariance(mj1):
    assert cm.ideal_invariant(mj1, pr.ideal(1), st.A(0), smax=6).ok
    rep = cm.ideal_invariant(mj1, pr.ideal(1), None, smax=6)
    assert not rep.ok
    third = dict((l, (ok, d)) for l, ok, d in rep.outcomes)["generator 3"]
    assert not third[0] and "z3 | 1" in third[1]
    M3 = pr.build("Mj3")
    assert cm.ideal_invariant(M3, pr.ideal(3), st.A(2), smax=6).ok


def test_ideal_triangularity_enforced():
    with pytest.raises(ValueError):
        cm.IdealPresentation([P("x[2] + x[3]")], [fp.cell(2)])


@pytest.mark.parametrize("name,r,dmax", [("Mj1", 1, 12), ("Mj2", 2, 16), ("Mjc-mod-w", "c", 12)])
def test_dashed_iso(name, r, dmax):
    M = pr.build(name)
    rep = cm.dashed_iso_check(M, pr.ideal(r), pr.over(name), dmax)
    assert rep.ok, rep.summary()


def test_dashed_iso_dimension_identity(mj1):
    dmax = 12
    I = pr.ideal(1)
    q = fp.poincare(I.quotient_spec(mj1, dmax), dmax)
    w = fp.poincare(st.CotensorSpec(st.A(0), dmax), dmax)
    for d in range(dmax + 1):
        assert len(mj1.basis(d)) == sum(w[a] * q[d - a] for a in range(d + 1))


def test_hom_space_examples():
    tmf = pr.build("tmf-skel15", "corrected")
    assert cm.comodule_hom_space(tmf, cm.trivial_comodule(), st.A(1)).total == 1
    hz = pr.build("HZ-skel3")
    assert cm.comodule_hom_space(hz, cm.trivial_comodule(), st.A(0)).total == 1
    F2 = cm.trivial_comodule()
    assert cm.comodule_hom_space(F2, F2, st.A(1)).total == 1


def test_hom_space_brute_force():
    # every assignment on HZ-skel3's 3-element basis, checked directly
    hz = pr.build("HZ-skel3")
    F2 = cm.trivial_comodule()
    Q = st.A(0)
    basis = hz.all_basis()
    count = 0
    for bits in range(2 ** len(basis)):
        f = {m: (fp.UNIT if bits >> i & 1 else fp.ZERO) for i, m in enumerate(basis)}
        f = {m: v for m, v in f.items() if fp.mono_degree(m) == 0 or not v}
        if len(f) != len(basis):
            continue
        ok = True
        for m in basis:
            lhs = set()
            for a, m2 in cm.reduce_left(hz.coact_mono(m), Q):
                for n in f[m2]:
                    lhs ^= {(a, n)}
            rhs = {(fp.ONE, n) for n in f[m]}
            ok &= lhs == rhs
        count += ok
    assert count == 2  # zero map and the augmentation
    assert cm.comodule_hom_space(hz, F2, Q).total == count - 1


def test_tilde_lift_examples():
    tmf = pr.build("tmf-skel15", "corrected")
    theta = cm.augmentation_lift(tmf, st.A(1))
    for g, img in {"x[8]": "z1^8", "x[12]": "z2^4", "x[14]": "z3^2", "x[15]": "z4"}.items():
        assert theta[next(iter(P(g)))] == P(img)
    F2 = cm.trivial_comodule()
    lift = cm.tilde_lift({fp.ONE: fp.UNIT}, F2, F2, st.A(1))
    assert lift == {fp.ONE: P("1 | 1")}
    hz = pr.build("HZ-skel3")
    aug = cm.augmentation_lift(hz, st.A(0))
    for m in hz.all_basis():
        psi = hz.coact_mono(m)
        assert aug[m] == fp.tcontract_right(psi, lambda n: n == fp.ONE)


def test_tilde_lift_rejects_non_map():
    # 1 -> x_3 is not an A(0)-comodule map since psi' x_3 has a zeta_1 term
    hz = pr.build("HZ-skel3")
    with pytest.raises(cm.NotInCotensor):
        cm.tilde_lift({fp.ONE: P("x[3]")}, cm.trivial_comodule(), hz, st.A(0))


@pytest.mark.parametrize("name,r,dmax", [("Mj1", 1, 12), ("Mj2", 2, 16), ("Mjc-mod-w", "c", 12)])
def test_splitting(name, r, dmax):
    M = pr.build(name)
    rep = cm.splitting_check(M, pr.ideal(r), pr.over(name), pr.orientation_rho(name), dmax)
    assert rep.ok, rep.summary()


def test_splitting_alg_iso_trivial():
    rep = cm.splitting_alg_iso(cm.trivial_comodule(), st.A(0), 16)
    assert rep.ok, rep.summary()


def test_splitting_alg_iso_mj1_truncated(mj1):
    rep = cm.splitting_alg_iso(mj1, st.A(0), 8, samples=50)
    assert rep.ok, rep.summary()
    assert sum(1 for l, _, _ in rep.outcomes if l == "random sum") >= 50


def test_report_witness_and_json():
    rep = cm.check_comodule_axioms(pr.build("tmf-skel15", "as-printed"), 15)
    js = rep.to_json()
    assert js["ok"] is False and js["witness"][0] == "x[15]"
    assert "FAIL" in rep.summary() or not rep.ok
