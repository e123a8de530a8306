"""Named comodules and comodule algebras, loaded from the JSON files in data/.

Also holds the X families that generate the regular ideals, orientations,
the z-sequence model and the bookkeeping for generators of covers of BO.
"""
import json
from functools import lru_cache
from importlib import resources

from . import comodule as cm
from . import dyerlashof as dl
from . import f2poly as fp
from . import steenrod as st
from .cli import parser as ps
from .f2poly import ONE, UNIT, ZERO


class UnknownPreset(KeyError):
    pass


CATALOG = (
    "HZ-skel3", "kO-skel7", "tmf-skel15", "Mjc-skel7",
    "Mj1", "Mj2", "Mj3", "Mjc", "Mjc-mod-w", "Rinf-z",
    "BO-cover(1)", "BO-cover(2)", "BO-cover(4)", "BO-cover(8)", "BSpinc",
)

# cap on degrees used when a preset is verified without an explicit cap
DEFAULT_CAPS = {"Mj1": 12, "Mjc": 12, "Mjc-mod-w": 12, "Mj2": 16, "Mj3": 16, "Rinf-z": 30}

FAMILY_PRESET = {1: "Mj1", 2: "Mj2", 3: "Mj3", "c": "Mjc-mod-w"}


def _normalize_family(r):
    if isinstance(r, str) and r.isdigit():
        r = int(r)
    if r not in FAMILY_PRESET:
        raise UnknownPreset("no X family %r" % (r,))
    return r


def data_path(name):
    return resources.files("coact").joinpath("data", "%s.json" % name)


@lru_cache(maxsize=None)
def raw(name):
    """The JSON record of a preset."""
    if name not in CATALOG:
        raise UnknownPreset(name)
    return json.loads(data_path(name).read_text())


def schema():
    return json.loads(resources.files("coact").joinpath("data", "preset.schema.json").read_text())


def split_name(text):
    """'tmf-skel15:as-printed' -> ('tmf-skel15', 'as-printed')."""
    name, _, variant = text.partition(":")
    return name, variant or None


def _basis_mono(text):
    p = ps.parse_poly(text)
    if len(p) != 1:
        raise ValueError("basis entry %r is not a monomial" % text)
    return next(iter(p))


@lru_cache(maxsize=None)
def build(name, variant=None):
    if ":" in name and variant is None:
        name, variant = split_name(name)
    rec = raw(name)
    kind = rec["kind"]
    over = st.parse_profile(rec["over"]) if "over" in rec else None
    if kind == "finite":
        return _build_finite(rec, variant, over)
    if variant is not None:
        raise UnknownPreset("%s has no variants" % name)
    if kind == "einf":
        return _build_einf(rec, over)
    if kind == "polynomial":
        return _build_rinf(rec, over)
    raise UnknownPreset("%s is bookkeeping only (kind %s)" % (name, kind))


def _build_finite(rec, variant, over):
    basis = [_basis_mono(b) for b in rec["basis"]]
    label = rec["name"]
    if "derived_from" in rec:
        parent = build(rec["derived_from"])
        coaction = {m: parent.coact(frozenset([m])) for m in basis}
        M = cm.FiniteComodule(label, basis, coaction, over)
        span = set(basis)
        for m, t in coaction.items():
            for _, n in t:
                if n not in span:
                    raise ValueError("%s is not closed under the coaction: %s" % (label, fp.mono_str(n)))
        return M
    table = dict(rec.get("coaction", {}))
    if "variants" in rec:
        variant = variant or rec.get("default_variant")
        if variant not in rec["variants"]:
            raise UnknownPreset("%s has no variant %r" % (label, variant))
        table.update(rec["variants"][variant])
        label = "%s:%s" % (label, variant)
    elif variant is not None:
        raise UnknownPreset("%s has no variants" % label)
    coaction = {_basis_mono(k): ps.parse_tensor(v) for k, v in table.items()}
    return cm.FiniteComodule(label, basis, coaction, over)


def _build_einf(rec, over):
    if "derived_from" in rec:
        parent = raw(rec["derived_from"])
        sigma = {ps.parse_generator(e["gen"]): ps.parse_poly(e["image"]) for e in rec["eliminate"]}
        dropped = set(sigma)
        rco = {}
        for c in parent["cells"]:
            g = ps.parse_generator(c["gen"])
            if g in dropped:
                continue
            t = ps.parse_tensor(c["rcoaction"])
            rco[g] = fp.tmap(t, lambda m: fp.substitute(frozenset([m]), sigma, strict=False), None)
        return cm.PolynomialComodule(rec["name"], rcoactions=rco, over=over)
    rco, lco = {}, {}
    for c in rec["cells"]:
        g = ps.parse_generator(c["gen"])
        if fp.gen_degree(g) != c["degree"]:
            raise ValueError("degree mismatch for %s" % c["gen"])
        if "rcoaction" in c:
            rco[g] = ps.parse_tensor(c["rcoaction"])
        else:
            lco[g] = ps.parse_tensor(c["lcoaction"])
    return cm.PolynomialComodule(rec["name"], rcoactions=rco, lcoactions=lco, over=over)


# the z-sequence

RINF_SMAX = 5


def _rinf_coaction(r):
    out = set()
    for j in range(r + 1):
        zr = fp.gen_poly(fp.family("z", r - j), 2 ** j) if r - j else UNIT
        out ^= set(fp.tensor(st.z(j, 2), zr))
    return frozenset(out)


def _build_rinf(rec, over, smax=RINF_SMAX):
    lco = {fp.family("z", s): _rinf_coaction(s) for s in range(1, smax + 1)}
    return cm.PolynomialComodule(rec["name"], lcoactions=lco, over=over, einf=False)


def rinf_z(s):
    """z_s and its left coaction."""
    return fp.gen_poly(fp.family("z", s)), _rinf_coaction(s)


def rinf_ideal(smax=RINF_SMAX):
    gens = [fp.family("z", s) for s in range(1, smax + 1)]
    return cm.IdealPresentation([fp.gen_poly(g) for g in gens], gens, name="I_inf")


def rinf_orientation(smax=RINF_SMAX):
    return cm.Orientation({fp.family("z", s): st.z(s, 2) for s in range(1, smax + 1)}, einf=False)


# X families and ideals

@lru_cache(maxsize=None)
def _family_initial(r):
    rec = raw(FAMILY_PRESET[r])
    return [(ps.parse_poly(e["poly"]), ps.parse_generator(e["leading"])) for e in rec["ideal"]["initial"]]


@lru_cache(maxsize=None)
def _X(r, s):
    init = _family_initial(r)
    if s <= len(init):
        return init[s - 1]
    prev, lead = _X(r, s - 1)
    return dl.q_apply(2 ** (s - 1), prev), fp.qgen(lead[1], (2 ** (s - 1),) + fp.qseq(lead))


def X_family(r, s):
    r = _normalize_family(r)
    if s < 1:
        raise ValueError("families start at s = 1")
    return _X(r, s)[0]


def X_leading(r, s):
    return _X(_normalize_family(r), s)[1]


def X_degree(r, s):
    return fp.poly_degree(X_family(r, s))


def family_length(r, dmax):
    """Number of X_{r,s} of degree <= dmax."""
    r = _normalize_family(r)
    s = 0
    while True:
        s += 1
        if fp.poly_degree(X_family(r, s)) > dmax:
            return s - 1


@lru_cache(maxsize=None)
def ideal(r, dmax=64):
    """The ideal (X_{r,s}) truncated to generators of degree <= dmax."""
    r = _normalize_family(r)
    n = family_length(r, dmax)
    gens = [X_family(r, s) for s in range(1, n + 1)]
    leads = [X_leading(r, s) for s in range(1, n + 1)]
    return cm.IdealPresentation(gens, leads, name="I_%s" % r)


@lru_cache(maxsize=None)
def orientation_rho(name):
    rec = raw(name)
    if name == "Rinf-z":
        return rinf_orientation()
    if "orientation" not in rec:
        raise UnknownPreset("%s has no orientation" % name)
    images = {ps.parse_generator(e["gen"]): ps.parse_poly(e["image"]) for e in rec["orientation"]}
    return cm.Orientation(images)


def over(name):
    return st.parse_profile(raw(split_name(name)[0])["over"])


def cotensor_generator(Q, s, r=None):
    """zeta_s^{e(s)}: the polynomial generator of A_* box_Q F2 that X_{r,s} should map to."""
    return st.z(s, Q.e(s))


def family_target(r, s):
    """The generator of A_* box_Q F2 which rho(X_{r,s}) is supposed to equal."""
    Q = over(FAMILY_PRESET[_normalize_family(r)])
    i = s
    return st.z(i, Q.e(i))


# freeness of H_*(Mj^c) over H_*(P S^4)

def freeness_check(dmax=14, series_cap=12):
    """Q^I(x_2^2) + Q^I x_4 can replace Q^I x_4 as polynomial generators of H_*(Mj^c)."""
    rep = cm.VerificationReport("freeness of H_*(Mjc) over H_*(PS^4)")
    M = build("Mjc")
    x2sq = fp.gen_poly(fp.cell(2), 2)
    gens = M.generators(dmax)
    swapped = {}
    for seq in dl.enumerate_seqs(4, dmax):
        q = dl.qword_eval(seq, x2sq)
        ok = (not q) or all(e % 2 == 0 for m in q for _, e in m)
        rep.record("Q%s(x2^2)" % (list(seq),), ok, "" if ok else "not a square: %s" % fp.poly_str(q))
        swapped[fp.qgen(4, seq)] = fp.add(q, fp.gen_poly(fp.qgen(4, seq)))
    # the new generating set: images of monomials in it are a basis in each degree
    new_spec = fp.GradedAlgebraSpec(gens, complete_to=dmax)
    for d in range(dmax + 1):
        mons = fp.graded_basis(new_spec, d)
        imgs = [fp.substitute(frozenset([m]), swapped, strict=False) for m in mons]
        r = fp.span_rank(imgs)
        rep.record("degree %d" % d, r == len(mons), "" if r == len(mons) else "rank %d of %d" % (r, len(mons)))
    # H_*(Mj^c) / (Q^I z_4 images) against the presentation F2[Q x_2, Q x_6, Q x_7]
    quotient = build("Mjc-mod-w").poincare(series_cap)
    ideal_gens = [p for g, p in swapped.items() if fp.gen_degree(g) <= series_cap]
    dims = []
    for d in range(series_cap + 1):
        mons = M.basis(d)
        span = []
        for y in ideal_gens:
            dy = fp.poly_degree(y)
            if dy <= d:
                for m in M.basis(d - dy):
                    span.append(fp.mul(y, frozenset([m])))
        dims.append(len(mons) - fp.span_rank(span))
    rep.record("series of H_*(Mjc//w) to degree %d" % series_cap, dims == quotient,
               "" if dims == quotient else "%s vs %s" % (dims, quotient))
    return rep


# generators for covers of BO

def alpha(k):
    return bin(k).count("1")


def cover_heights(n):
    """h(j) for alpha(k) = j + 1, from the stored rule."""
    name = "BSpinc" if n in ("Spinc", "spinc", "BSpinc") else "BO-cover(%d)" % n
    return raw(name)["heights_by_alpha"]


def cover_height(n, k):
    rule = cover_heights(n)
    a = alpha(k)
    return rule[a - 1] if a <= len(rule) else 0


class CoverGenerator(tuple):
    """(k, s, h): a_{k,s}^{2^h}, of degree 2^{s+h} k."""

    def __new__(cls, k, s, h):
        return super().__new__(cls, (k, s, h))

    k = property(lambda self: self[0])
    s = property(lambda self: self[1])
    h = property(lambda self: self[2])

    @property
    def degree(self):
        return 2 ** (self.s + self.h) * self.k

    @property
    def mono(self):
        return ((fp.bo(self.k, self.s), 2 ** self.h),)

    def label(self):
        base = "a_{%d,%d}" % (self.k, self.s)
        return base if self.h == 0 else "%s^{(%d)}" % (base, self.h)

    def __repr__(self):
        return self.label()


def cover_generators(n, dmax):
    out = []
    for k in range(1, dmax + 1, 2):
        h = cover_height(n, k)
        s = 0
        while 2 ** (s + h) * k <= dmax:
            out.append(CoverGenerator(k, s, h))
            s += 1
    out.sort(key=lambda g: (g.degree, g.k))
    return out


def in_cover_algebra(mono, n):
    """Whether a monomial in the a_{k,s} lies in the image sub-Hopf algebra for n."""
    for g, e in mono:
        if g[0] != fp.BO:
            return False
        if e % 2 ** cover_height(n, g[1]):
            return False
    return True


def coaction_a(s):
    """Left coaction on a_{2^s - 1, 0} in H_*(MO)."""
    out = set()
    for j in range(s + 1):
        rest = 2 ** (s - j) - 1
        right = fp.gen_poly(fp.bo(rest, 0), 2 ** j) if rest else UNIT
        out ^= set(fp.tensor(st.z(j), right))
    return frozenset(out)


def a_to_zeta(t):
    """Apply a_{2^s-1,0} -> zeta_s in the right slot."""
    sigma = {}
    for _, m in t:
        for g, _ in m:
            k = g[1]
            if g[0] != fp.BO or g[2] != 0 or k & (k + 1):
                raise fp.MissingAssignment(g)
            sigma[g] = st.z(alpha(k))
    return fp.tmap(t, None, lambda m: fp.substitute(frozenset([m]), sigma))
