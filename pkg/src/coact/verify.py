"""Named verification targets.

Each target takes a Caps and returns a VerificationReport.  The expected
values for the displayed coactions are kept here as text in the parser
grammar so that they read like the displays they transcribe.
"""
import random
from dataclasses import asdict, dataclass

from . import bockstein as bk
from . import comodule as cm
from . import dyerlashof as dl
from . import f2poly as fp
from . import presets as pr
from . import steenrod as st
from .cli import parser as ps
from .f2poly import ONE, UNIT, ZERO


@dataclass
class Caps:
    max_degree: int = None
    smax: int = None
    pages: int = None
    variant: str = None
    samples: int = None

    def get(self, name, default):
        v = getattr(self, name)
        return default if v is None else v


TARGETS = {}


def target(name):
    def deco(f):
        TARGETS[name] = f
        return f
    return deco


def run(name, caps=None):
    """Run a target; 'tmf-coaction:as-printed' style names carry a variant."""
    caps = caps or Caps()
    base, _, variant = name.partition(":")
    if base not in TARGETS:
        raise KeyError("unknown target %r" % name)
    if variant:
        caps = Caps(**{**asdict(caps), "variant": variant})
    return TARGETS[base](caps)


def _report(name, **caps):
    rep = cm.VerificationReport(name)
    rep.caps = dict(caps)
    return rep


def _eq(rep, label, got, want):
    ok = got == want
    detail = "" if ok else "got %s, expected %s" % (ps.print_element(got), ps.print_element(want))
    return rep.record(label, ok, detail)


def _P(text):
    return ps.parse(text)


# Hopf algebra

def _random_element(rng, dmax):
    d = rng.randint(1, dmax)
    b = st.basis(d)
    k = rng.randint(1, min(4, len(b)))
    return frozenset(rng.sample(b, k))


@target("hopf-axioms")
def hopf_axioms(caps):
    n = caps.get("smax", 6)
    dmax = caps.get("max_degree", 40)
    count = caps.get("samples", 100)
    rep = _report("hopf-axioms", smax=n, max_degree=dmax, samples=count)
    items = [(fp.poly_str(st.z(i)), st.z(i)) for i in range(1, n + 1)]
    rng = random.Random(0)
    for j in range(count):
        a = _random_element(rng, dmax)
        items.append(("random %d (degree %d)" % (j, fp.poly_degree(a)), a))
    for label, a in items:
        rep.record("coassociativity %s" % label, not st.coassociativity_defect(a))
        rep.record("counit %s" % label, not any(st.counit_defect(a)))
        rep.record("antipode left %s" % label, not st.antipode_defect(a, "left"))
        rep.record("antipode right %s" % label, not st.antipode_defect(a, "right"))
        rep.record("chi^2 %s" % label, st.antipode(st.antipode(a)) == a)
    _eq(rep, "chi zeta_2", st.antipode(st.z(2)), _P("z2 + z1^3"))
    return rep


# Mj_1

NISHIDA_RIGHT = {
    "Q[3](x[2])": "Q[3](x[2]) | 1",
    "Q[5](x[2])": "Q[5](x[2]) | 1 + Q[3](x[2]) | z1^2",
    "Q[4](x[3])": "Q[4](x[3]) | 1 + x[3]^2 | z1 + x[2]^2 | xi2 + 1 | xi3 + Q[3](x[2]) | z1^2",
    "Q[4](x[3]) + Q[5](x[2])": "(Q[4](x[3]) + Q[5](x[2])) | 1 + x[3]^2 | z1 + x[2]^2 | xi2 + 1 | xi3",
}
NISHIDA_LEFT = {
    "Q[4](x[3]) + Q[5](x[2])": "1 | (Q[4](x[3]) + Q[5](x[2])) + z1 | x[3]^2 + z2 | x[2]^2 + z3 | 1",
}


@target("nishida-mj1")
def nishida_mj1(caps):
    rep = _report("nishida-mj1")
    M = pr.build("Mj1")
    for src, want in NISHIDA_RIGHT.items():
        _eq(rep, "psi~ %s" % src, M.rcoact(_P(src)), _P(want))
    for src, want in NISHIDA_LEFT.items():
        _eq(rep, "psi %s" % src, M.coact(_P(src)), _P(want))
    # the middle step of the display: Q^4 applied to psi~ x_3
    t = _P("x[3] | 1 + x[2] | z1 + 1 | xi2")
    want = _P("x[3]^2 | z1 + x[2]^2 | z1^3 + 1 | z1*xi2^2")
    _eq(rep, "Q^3 of psi~ x_3 times zeta_1 part", fp.tmul(dl.q_tensor(3, t), fp.tensor(UNIT, st.z(1))), want)
    return rep


def x1_expected(s, side):
    """The displayed right or left coaction of X_{1,s}."""
    X = lambda j: pr.X_family(1, j)
    terms = [(X(s), UNIT)]
    for j in range(1, s - 2):
        terms.append((fp.power(X(s - j), 2 ** j), st.xi(j) if side == "right" else st.z(j)))
    a = (lambda i: st.xi(i)) if side == "right" else (lambda i: st.z(i))
    terms.append((fp.power(X(2), 2 ** (s - 2)), a(s - 2)))
    terms.append((fp.power(X(1), 2 ** (s - 2)), a(s - 1)))
    terms.append((UNIT, a(s)))
    if side == "right":
        return fp.tadd(*[fp.tensor(m, b) for m, b in terms])
    return fp.tadd(*[fp.tensor(b, m) for m, b in terms])


@target("x1-coaction")
def x1_coaction(caps):
    smax = caps.get("smax", 7)
    rep = _report("x1-coaction", smax=smax)
    M = pr.build("Mj1")
    for s in range(3, smax + 1):
        X = pr.X_family(1, s)
        _eq(rep, "psi~ X_{1,%d}" % s, M.rcoact(X), x1_expected(s, "right"))
        _eq(rep, "psi X_{1,%d}" % s, M.coact(X), x1_expected(s, "left"))
        _eq(rep, "psi' X_{1,%d} over A(0)" % s, cm.induced_coaction(X, M, st.A(0)),
            fp.tadd(fp.tensor(UNIT, X), fp.tensor(st.z(1), fp.power(pr.X_family(1, s - 1), 2))))
    return rep


def _extended(name, r, default):
    def check(caps):
        dmax = caps.get("max_degree", default)
        M = pr.build(pr.FAMILY_PRESET[r])
        Q = pr.over(pr.FAMILY_PRESET[r])
        rep = cm.dashed_iso_check(M, pr.ideal(r), Q, dmax)
        rep.target = name
        rep.caps = {"max_degree": dmax}
        return rep
    return check


def _splitting(name, r, default):
    def check(caps):
        dmax = caps.get("max_degree", default)
        preset = pr.FAMILY_PRESET[r]
        M = pr.build(preset)
        Q = pr.over(preset)
        rho = pr.orientation_rho(preset)
        rep = cm.splitting_check(M, pr.ideal(r), Q, rho, dmax)
        smax = pr.family_length(r, dmax)
        for s in range(1, smax + 1):
            _eq(rep, "rho X_{%s,%d}" % (r, s), rho(pr.X_family(r, s)), pr.family_target(r, s))
        rep.target = name
        rep.caps = {"max_degree": dmax}
        return rep
    return check


TARGETS["mj1-extended"] = _extended("mj1-extended", 1, 12)
TARGETS["mj2-extended"] = _extended("mj2-extended", 2, 16)
TARGETS["mj3-extended"] = _extended("mj3-extended", 3, 16)
TARGETS["mjc-extended"] = _extended("mjc-extended", "c", 12)
TARGETS["mj1-splitting"] = _splitting("mj1-splitting", 1, 12)
TARGETS["mj2-splitting"] = _splitting("mj2-splitting", 2, 16)
TARGETS["mjc-splitting"] = _splitting("mjc-splitting", "c", 12)


# Mj_2

MJ2_DISPLAYS = {
    "Q[8](x[7])": "1 | Q[8](x[7]) + z1 | x[7]^2 + z2 | x[6]^2 + z1^2 | Q[7](x[6])",
    "Q[9](x[6])": "1 | Q[9](x[6]) + z1^2 | Q[7](x[6])",
    "Q[8](x[7]) + Q[9](x[6])": "1 | (Q[8](x[7]) + Q[9](x[6])) + z1 | x[7]^2 + z2 | x[6]^2",
}


def x_pattern(r, s, powers):
    """1 (x) X_s + zeta_1 (x) X_{s-1}^{p1} + zeta_2 (x) X_{s-2}^{p2}."""
    X = lambda j: pr.X_family(r, j)
    p1, p2 = powers
    return fp.tadd(fp.tensor(UNIT, X(s)), fp.tensor(st.z(1), fp.power(X(s - 1), p1)),
                   fp.tensor(st.z(2), fp.power(X(s - 2), p2)))


@target("mj2-x-coaction")
def mj2_x_coaction(caps):
    smax = caps.get("smax", 6)
    rep = _report("mj2-x-coaction", smax=smax)
    M = pr.build("Mj2")
    Q = st.A(1)
    for src, want in MJ2_DISPLAYS.items():
        _eq(rep, "psi' %s" % src, cm.induced_coaction(_P(src), M, Q), _P(want))
    # s = 4 is the display above; X_{2,2} = x_6 enters squared, not to the fourth
    _eq(rep, "psi' X_{2,4}", cm.induced_coaction(pr.X_family(2, 4), M, Q), x_pattern(2, 4, (2, 2)))
    for s in range(5, smax + 1):
        _eq(rep, "psi' X_{2,%d}" % s, cm.induced_coaction(pr.X_family(2, s), M, Q), x_pattern(2, s, (2, 4)))
    inv = cm.ideal_invariant(M, pr.ideal(2), Q, smax=smax)
    rep.outcomes += [("I_2 " + a, b, c) for a, b, c in inv.outcomes]
    return rep


# Mj_3 and tmf

@target("i3-invariant")
def i3_invariant(caps):
    smax = caps.get("smax", 6)
    rep = cm.ideal_invariant(pr.build("Mj3"), pr.ideal(3), st.A(2), smax=smax)
    rep.target = "i3-invariant"
    rep.caps = {"smax": smax}
    return rep


THETA_IMAGES = {"x[8]": "z1^8", "x[12]": "z2^4", "x[14]": "z3^2", "x[15]": "z4"}


def _tmf_rho():
    images = {ps.parse_generator(k): _P(v) for k, v in THETA_IMAGES.items()}
    return cm.Orientation(images, einf=False)


@target("tmf-coaction")
def tmf_coaction(caps):
    variant = caps.get("variant", "corrected")
    M = pr.build("tmf-skel15", variant)
    rep = cm.check_comodule_axioms(M, 15)
    rep.target = "tmf-coaction:%s" % variant
    rep.caps = {"variant": variant}
    if rep.ok:
        rho = _tmf_rho()
        for m in M.all_basis():
            bad = cm.equivariance_defect(frozenset([m]), M, rho)
            rep.record("rho-equivariance %s" % fp.mono_str(m), not bad, "" if not bad else fp.tensor_str(bad))
    return rep


@target("theta-star")
def theta_star(caps):
    rep = _report("theta-star")
    M = pr.build("tmf-skel15")
    Q = st.A(1)
    H = cm.comodule_hom_space(M, cm.trivial_comodule(), Q)
    rep.record("dim Comod_A(1)(tmf-skel15, F2) = 1", H.total == 1, "total %d, by degree %s" % (H.total, H.dims))
    theta = cm.augmentation_lift(M, Q)
    for g, want in THETA_IMAGES.items():
        m = next(iter(_P(g)))
        _eq(rep, "theta_* %s" % g, theta.get(m, ZERO), _P(want))
    # the E-infinity extension sends X_{3,s} to zeta_s
    rho = pr.orientation_rho("Mj3")
    for s in range(5, 7):
        _eq(rep, "theta~_* X_{3,%d}" % s, rho(pr.X_family(3, s)), st.z(s))
    return rep


# Mj^c

@target("mjc-freeness")
def mjc_freeness(caps):
    dmax = caps.get("max_degree", 14)
    smax = caps.get("smax", 6)
    rep = pr.freeness_check(dmax=dmax, series_cap=min(dmax, 12))
    rep.target = "mjc-freeness"
    rep.caps = {"max_degree": dmax, "smax": smax}
    M = pr.build("Mjc-mod-w")
    Q = st.E(1)
    X = lambda j: pr.X_family("c", j)
    for s in (1, 2):
        _eq(rep, "psi' X_{c,%d}" % s, cm.induced_coaction(X(s), M, Q), fp.tensor(UNIT, X(s)))
    _eq(rep, "psi' X_{c,3}", cm.induced_coaction(X(3), M, Q), x_pattern("c", 3, (1, 2)))
    _eq(rep, "psi' X_{c,4}", cm.induced_coaction(X(4), M, Q), x_pattern("c", 4, (2, 2)))
    for s in range(5, smax + 1):
        _eq(rep, "psi' X_{c,%d}" % s, cm.induced_coaction(X(s), M, Q), x_pattern("c", s, (2, 4)))
    # the unpowered display cannot hold: its terms are not of one degree
    for s in range(4, smax + 1):
        degs = {cm.tensor_degree(frozenset([t])) for t in x_pattern("c", s, (1, 1))}
        rep.record("unpowered display for X_{c,%d} is inhomogeneous" % s, len(degs) > 1, str(sorted(degs)))
    inv = cm.ideal_invariant(M, pr.ideal("c"), Q, smax=smax)
    rep.outcomes += [("I_c " + a, b, c) for a, b, c in inv.outcomes]
    return rep


@target("rinf")
def rinf(caps):
    dmax = caps.get("max_degree", pr.DEFAULT_CAPS["Rinf-z"])
    M = pr.build("Rinf-z")
    Q = pr.over("Rinf-z")
    I = pr.rinf_ideal()
    rep = cm.dashed_iso_check(M, I, Q, dmax)
    rep.target = "rinf"
    rep.caps = {"max_degree": dmax}
    split = cm.splitting_check(M, I, Q, pr.rinf_orientation(), dmax)
    rep.outcomes += [("splitting " + a, b, c) for a, b, c in split.outcomes]
    for s in range(1, pr.RINF_SMAX + 1):
        z, t = pr.rinf_z(s)
        rep.record("deg z_%d" % s, fp.poly_degree(z) == 2 ** (s + 1) - 2)
        _eq(rep, "rho z_%d" % s, pr.rinf_orientation()(z), st.z(s, 2))
    return rep


# Dyer-Lashof on A_*

@target("steinberger")
def steinberger(caps):
    smax = caps.get("smax", 4)
    rep = _report("steinberger", smax=smax)
    for s in range(1, smax + 1):
        _eq(rep, "Q^%d xi_%d" % (2 ** s, s), dl.q_apply(2 ** s, st.xi(s)),
            fp.add(st.xi(s + 1), fp.mul(st.xi(1), fp.frobenius(st.xi(s)))))
        _eq(rep, "Q~^%d zeta_%d" % (2 ** s, s), dl.q_tilde(2 ** s, st.z(s)),
            fp.add(st.z(s + 1), fp.mul(st.z(1), st.z(s, 2))))
    # Adem coherence of the action on A_*
    for a_text in ("z1", "z2", "z1*z2"):
        a = _P(a_text)
        for s in range(0, 6):
            for r in range(2 * s + 1, 13):
                lhs = dl.q_apply(r, dl.q_apply(s, a))
                rhs = ZERO
                for i, j in dl.adem_pair(r, s):
                    rhs = fp.add(rhs, dl.q_apply(i, dl.q_apply(j, a)))
                rep.record("Adem Q^%d Q^%d %s" % (r, s, a_text), lhs == rhs)
    return rep


@target("qk-zeta-ideal")
def qk_zeta_ideal(caps):
    smax = caps.get("smax", 4)
    kmax = caps.get("max_degree", 64)
    rep = _report("qk-zeta-ideal", smax=smax, max_degree=kmax)
    for s in range(1, smax + 1):
        bad = [k for k in range(kmax + 1) if not st.ideal_In_member(dl.q_zeta(k, s), s - 1)]
        rep.record("Q^k zeta_%d in I(%d), k <= %d" % (s, s - 1, kmax), not bad, "k = %s" % bad[:5])
    for s in (1, 2):
        for r in (1, 2):
            a = st.z(s, 2 ** r)
            bad = [k for k in range(0, 33) if not st.ideal_In_member(dl.q_apply(k, a), s + r - 1)]
            rep.record("Q^k zeta_%d^%d in I(%d)" % (s, 2 ** r, s + r - 1), not bad, "k = %s" % bad[:5])
    return rep


@target("cotensor-closure")
def cotensor_closure(caps):
    kmax = caps.get("max_degree", 32)
    rep = _report("cotensor-closure", max_degree=kmax)
    for n in range(0, 3):
        Q = st.A(n)
        for i in range(1, 4):
            g = st.z(i, Q.e(i))
            for k in range(kmax + 1):
                q = dl.q_apply(k, g)
                ok = st.is_cotensor_element(q, Q)
                rep.record("A(%d): Q^%d %s" % (n, k, fp.poly_str(g)), ok, "" if ok else fp.poly_str(q))
    return rep


@target("pcoalg-iso")
def pcoalg_iso(caps):
    dmax = caps.get("max_degree", 24)
    rep = _report("pcoalg-iso", max_degree=dmax)
    for n in range(3):
        for d, ok, detail in st.extended_iso_report(st.A(n), dmax):
            rep.record("A(%d) degree %d" % (n, d), ok, detail)
    return rep


# Bockstein

@target("bockstein-mj1")
def bockstein_mj1(caps):
    dmax = caps.get("max_degree", 12)
    rmax = caps.get("pages", 4)
    rep = _report("bockstein-mj1", max_degree=dmax, pages=rmax)
    M = pr.build("Mj1")
    for src, want in (("x[3]", "x[2]"), ("x[2]", "0"), ("Q[4](x[2])", "Q[3](x[2])"), ("Q[4](x[3])", "x[3]^2")):
        _eq(rep, "beta_1 %s" % src, bk.beta1(_P(src)), _P(want))
    basis = [m for d in range(dmax + 1) for m in M.basis(d)]
    sq = [m for m in basis if bk.beta1(bk.beta1(frozenset([m])))]
    rep.record("beta_1^2 = 0 to degree %d" % dmax, not sq, "" if not sq else fp.mono_str(sq[0]))
    off = [m for m in basis if bk.beta1(frozenset([m])) != bk.zeta1_component(M.coact_mono(m))]
    rep.record("beta_1 = zeta_1 component of psi", not off, "" if not off else fp.mono_str(off[0]))
    rng = random.Random(1)
    pos = [m for m in basis if m]
    bad = 0
    for _ in range(200):
        a, b = rng.choice(pos), rng.choice(pos)
        if fp.mono_degree(a) + fp.mono_degree(b) > dmax:
            continue
        pa, pb = frozenset([a]), frozenset([b])
        if bk.beta1(fp.mul(pa, pb)) != fp.add(fp.mul(bk.beta1(pa), pb), fp.mul(pa, bk.beta1(pb))):
            bad += 1
    rep.record("beta_1 derivation (sampled)", not bad, "%d failures" % bad)
    h = bk.beta1_homology(dmax)
    rep.record("H(beta_1) degrees 0, 2, 6", (h[0], h[2], h[6]) == (1, 0, 0), str(h))
    y = _P("Q[4](x[2])")
    _eq(rep, "beta_2 (Q^4 x_2)^2", bk.higher_bockstein(2, y), _P("Q[4](x[2])*Q[3](x[2]) + Q[6,3](x[2])"))
    _eq(rep, "beta_2 x_2^2", bk.higher_bockstein(2, _P("x[2]")), ZERO)
    e2, predicted, _, _ = bk.e2_product_check(dmax)
    rep.record("E^2 = H(A box_A(0) F2) (x) H(H/I_1)", e2 == predicted, "%s vs %s" % (e2, predicted))
    res = bk.bss_pages(dmax, rmax)
    rep.record("no undetermined differentials", not res.undetermined, str(res.undetermined[:3]))
    rep.record("E^2 pages agree", [res.pages[1].dim(d) for d in range(dmax + 1)] == e2)
    dims = [[p.dim(d) for d in range(dmax + 1)] for p in res.pages]
    rep.record("page dimensions weakly decrease", all(
        a >= b for p, q in zip(dims, dims[1:]) for a, b in zip(p, q)))
    free = {d: c for d, c in res.torsion_free.items() if c}
    rep.record("one torsion-free class, in degree 0", free == {0: 1}, str(free))
    rep.record("Z/2 in degree 5", (5, 1) in res.summands)
    return rep


# Appendix A

COVER_LISTS = {
    2: [(1, 0, 1), (3, 0, 0)],
    4: [(1, 0, 2), (3, 0, 1), (7, 0, 0)],
    8: [(1, 0, 3), (3, 0, 2), (7, 0, 1), (15, 0, 0)],
}


@target("cover-gens")
def cover_gens(caps):
    rep = _report("cover-gens")
    for n, want in COVER_LISTS.items():
        gens = pr.cover_generators(n, 64)
        lowest = [tuple(g) for g in gens if g.s == 0 and g.k & (g.k + 1) == 0]
        lowest = sorted(lowest)[:len(want)]
        rep.record("MO<%d> lowest generators" % n, lowest == want, "%s" % lowest)
    spinc = [tuple(g) for g in pr.cover_generators("Spinc", 7)]
    rep.record("Spin^c generators to degree 7", spinc == [(1, 0, 1), (1, 1, 1), (3, 0, 1), (7, 0, 0)], str(spinc))
    for text in pr.raw("BSpinc")["contains"]:
        m = next(iter(_P(text)))
        rep.record("Spin^c image contains %s" % text, pr.in_cover_algebra(m, "Spinc"))
    for s in range(1, 6):
        _eq(rep, "coaction_a(%d) -> Delta zeta_%d" % (s, s), pr.a_to_zeta(pr.coaction_a(s)), st.coproduct(st.z(s)))
    return rep


ORDER = [
    "hopf-axioms", "tmf-coaction", "nishida-mj1", "x1-coaction", "mj1-extended", "mj1-splitting",
    "mj2-x-coaction", "mj2-extended", "mj2-splitting", "i3-invariant", "mj3-extended", "theta-star",
    "mjc-freeness", "mjc-extended", "mjc-splitting", "rinf", "steinberger", "qk-zeta-ideal",
    "cotensor-closure", "pcoalg-iso", "bockstein-mj1", "cover-gens",
]
