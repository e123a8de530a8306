"""The dual Steenrod algebra A_* = F2[zeta_1, zeta_2, ...] and its quotient Hopf algebras.

Coproduct convention: Delta(zeta_n) = sum_{i=0}^n zeta_i (x) zeta_{n-i}^{2^i}, with
the left tensor slot being the coacting factor everywhere in the package.
xi_i denotes the conjugate chi(zeta_i); storage is always in the zeta basis.
"""
import math
import re
from functools import lru_cache

from . import f2poly as fp
from .f2poly import ONE, UNIT, ZERO, ZETA

INF = math.inf


class UnsupportedProfile(ValueError):
    pass


def z(i, e=1):
    """zeta_i^e as a Poly (zeta_0 = 1)."""
    if i == 0:
        return UNIT
    return fp.gen_poly(fp.zeta(i), e)


def zmono(*exps):
    """Monomial zeta_1^{r_1} zeta_2^{r_2} ... from an exponent list."""
    return tuple((fp.zeta(i + 1), r) for i, r in enumerate(exps) if r)


def exponents(m):
    """Exponent vector (r_1, ..., r_l) of a zeta monomial."""
    if not m:
        return ()
    top = max(g[1] for g, _ in m)
    out = [0] * top
    for g, e in m:
        if g[0] != ZETA:
            raise ValueError("not a monomial of A_*: %r" % (m,))
        out[g[1] - 1] = e
    return tuple(out)


# coproduct

@lru_cache(maxsize=None)
def _delta_zeta(n):
    terms = set()
    for i in range(n + 1):
        left = () if i == 0 else ((fp.zeta(i), 1),)
        right = () if n - i == 0 else ((fp.zeta(n - i), 2 ** i),)
        terms ^= {(left, right)}
    return frozenset(terms)


@lru_cache(maxsize=None)
def coproduct_mono(m):
    out = frozenset([(ONE, ONE)])
    for g, e in m:
        out = fp.tmul(out, fp.tpower(_delta_zeta(g[1]), e))
    return out


def coproduct(a):
    out = set()
    for m in a:
        out ^= coproduct_mono(m)
    return frozenset(out)


def counit(a):
    return fp.counit(a)


# antipode

@lru_cache(maxsize=None)
def xi(n):
    """chi(zeta_n) by the recursion sum_i chi(zeta_i) zeta_{n-i}^{2^i} = 0."""
    if n == 0:
        return UNIT
    acc = set()
    for i in range(n):
        acc ^= fp.mul(xi(i), z(n - i, 2 ** i))
    return frozenset(acc)


@lru_cache(maxsize=None)
def xi_power(n, e):
    return fp.power(xi(n), e)


@lru_cache(maxsize=None)
def antipode_mono(m):
    out = UNIT
    for g, e in m:
        out = fp.mul(out, xi_power(g[1], e))
    return out


def antipode(a):
    out = set()
    for m in a:
        out ^= antipode_mono(m)
    return frozenset(out)


def tensor_antipode(t, slot):
    """Apply chi in one slot of a tensor."""
    fs = [None] * len(next(iter(t))) if t else []
    if not t:
        return ZERO
    fs[slot] = antipode_mono
    return fp.tmap(t, *fs)


def basis(d):
    """Monomial basis of A_* in degree d."""
    return fp.graded_basis(algebra_spec(d), d)


def algebra_spec(dmax):
    gens = []
    i = 1
    while 2 ** i - 1 <= max(dmax, 1):
        gens.append(fp.zeta(i))
        i += 1
    return fp.GradedAlgebraSpec(gens, complete_to=dmax, name="A_*")


# profiles and quotient Hopf algebras

class Profile:
    """Exponent function: an explicit prefix then a constant tail in {1, 2}."""

    def __init__(self, prefix, tail=1):
        prefix = tuple(prefix)
        for v in prefix + (tail,):
            if v != INF and (v < 1 or v & (v - 1)):
                raise ValueError("profile values must be powers of 2 or infinity, got %r" % (v,))
        if tail not in (1, 2):
            raise ValueError("tail must be 1 or 2")
        while prefix and prefix[-1] == tail:
            prefix = prefix[:-1]
        self.prefix = prefix
        self.tail = tail

    def e(self, i):
        if i < 1:
            raise ValueError("profile index starts at 1")
        return self.prefix[i - 1] if i <= len(self.prefix) else self.tail

    def __eq__(self, other):
        return isinstance(other, Profile) and (self.prefix, self.tail) == (other.prefix, other.tail)

    def __hash__(self):
        return hash((self.prefix, self.tail))

    def __repr__(self):
        return "Profile(%r, tail=%r)" % (list(self.prefix), self.tail)


class QuotientHopf:
    """A_* modulo the monomial ideal (zeta_i^{e(i)} : e(i) finite)."""

    def __init__(self, profile, name=None, validate_to=24, kind=None):
        self.profile = profile
        self.name = name or repr(profile)
        self.kind = kind
        if validate_to:
            bad = hopf_ideal_witness(self, validate_to)
            if bad is not None:
                raise ValueError("%s does not define a Hopf ideal: %s" % (self.name, bad))

    def e(self, i):
        return self.profile.e(i)

    @property
    def is_finite(self):
        return self.profile.tail == 1 and INF not in self.profile.prefix

    def mono_in_ideal(self, m):
        for g, r in m:
            if r >= self.e(g[1]):
                return True
        return False

    def reduce_mono(self, m):
        return ZERO if self.mono_in_ideal(m) else frozenset([m])

    def reduce(self, a):
        return frozenset(m for m in a if not self.mono_in_ideal(m))

    def __eq__(self, other):
        return isinstance(other, QuotientHopf) and self.profile == other.profile

    def __hash__(self):
        return hash(self.profile)

    def __repr__(self):
        return "QuotientHopf(%s)" % self.name


def e_n(n, i):
    return 2 ** (n + 2 - i) if 1 <= i <= n + 2 else 1


@lru_cache(maxsize=None)
def A(n):
    prefix = [2 ** (n + 2 - i) for i in range(1, n + 3)]
    return QuotientHopf(Profile(prefix, 1), "A(%d)" % n, kind=("A", n))


@lru_cache(maxsize=None)
def E(n=None):
    """E(1)_*, E(2)_* (n given) or the exterior quotient E_* (n None)."""
    if n is None:
        return QuotientHopf(Profile([], 2), "E", kind=("E", None))
    return QuotientHopf(Profile([2] * (n + 1), 1), "E(%d)" % n, kind=("E", n))


FULL = None  # stands for A_* itself as the coacting algebra


_PROFILE_RX = re.compile(r"^profile:\[([0-9,\s]*)\](?:/tail=([12]))?$")


def parse_profile(text):
    text = text.strip()
    m = re.fullmatch(r"A\((\d+)\)", text)
    if m:
        return A(int(m.group(1)))
    m = re.fullmatch(r"E\((\d+)\)", text)
    if m:
        return E(int(m.group(1)))
    if text == "E":
        return E()
    if text in ("A", "A_*", "full"):
        return FULL
    m = _PROFILE_RX.match(text)
    if m:
        vals = [int(v) for v in m.group(1).replace(" ", "").split(",") if v]
        tail = int(m.group(2) or 1)
        return QuotientHopf(Profile(vals, tail), text)
    raise ValueError("unrecognised profile %r" % text)


def hopf_ideal_witness(Q, dmax=24):
    """None if Delta(zeta_i^{e(i)}) lies in I(x)A + A(x)I for every generator of degree <= dmax."""
    i = 1
    while 2 ** i - 1 <= dmax:
        e = Q.e(i)
        if e != INF and e * (2 ** i - 1) <= dmax:
            for a, b in coproduct_mono(((fp.zeta(i), e),)):
                if not (Q.mono_in_ideal(a) or Q.mono_in_ideal(b)):
                    return "zeta_%d^%d has coproduct term %s | %s" % (
                        i, e, fp.mono_str(a), fp.mono_str(b))
        i += 1
    return None


def quotient_reduce(a, Q):
    if Q is FULL:
        return a
    return Q.reduce(a)


def quotient_basis(Q, d):
    return [m for m in basis(d) if not Q.mono_in_ideal(m)]


def quotient_coproduct(b, Q):
    """Coproduct of the quotient Hopf algebra, on representatives."""
    t = coproduct(b)
    return frozenset((x, y) for x, y in t if not (Q.mono_in_ideal(x) or Q.mono_in_ideal(y)))


def right_coaction(a, Q):
    """(id (x) ||.||) Delta: the right Q-coaction on A_*."""
    t = coproduct(a)
    return frozenset((x, y) for x, y in t if not Q.mono_in_ideal(y))


def left_coaction_on_quotient(a, Q):
    """(||.|| (x) id) Delta: the left Q-coaction on A_*."""
    t = coproduct(a)
    return frozenset((x, y) for x, y in t if not Q.mono_in_ideal(x))


# cotensor A_* box_Q F2

class CotensorSpec(fp.GradedAlgebraSpec):
    """F2[zeta_i^{e(i)}] presented on formal generators zeta_i of degree e(i)(2^i - 1)."""

    def __init__(self, Q, dmax):
        self.Q = Q
        self.powers = {}
        gens = []
        i = 1
        while 2 ** i - 1 <= dmax:
            e = Q.e(i)
            if e != INF and e * (2 ** i - 1) <= dmax:
                g = fp.zeta(i)
                self.powers[g] = e
                gens.append((g, e * (2 ** i - 1)))
            i += 1
        super().__init__(gens, complete_to=dmax, name="A_* box %s F2" % Q.name)

    def embed(self, m):
        """Formal monomial -> actual monomial of A_*."""
        return tuple((g, e * self.powers[g]) for g, e in m)

    def generator_monomials(self):
        return [((g, self.powers[g]),) for g, _ in self.generators]

    def basis(self, d):
        return [self.embed(m) for m in fp.graded_basis(self, d)]


def cotensor_unit_basis(Q, dmax):
    return CotensorSpec(Q, dmax)


def in_cotensor_mono(m, Q):
    """A monomial of A_* lies in F2[zeta_i^{e(i)}] iff each exponent is a multiple of e(i)."""
    for g, r in m:
        e = Q.e(g[1])
        if e == INF or r % e:
            return False
    return True


def is_cotensor_element(a, Q):
    """a in A_* box_Q F2, tested by the right coaction: (id (x) ||.||) Delta a = a (x) 1."""
    return right_coaction(a, Q) == fp.tensor(a, UNIT)


# extended comodule isomorphism

def _split(r, e):
    if e == INF:
        return 0, r
    return divmod(r, e)


def split_mono(m, Q):
    """zeta^r -> (zeta^{r' e}, zeta^{r''}) with r = r' e + r''."""
    left, right = [], []
    for g, r in m:
        q, rem = _split(r, Q.e(g[1]))
        if q:
            left.append((g, q * Q.e(g[1])))
        if rem:
            right.append((g, rem))
    return tuple(left), tuple(right)


def _check_formula_profile(Q, assume_formula):
    if Q.kind is None or Q.kind[0] != "A":
        if not assume_formula:
            raise UnsupportedProfile(
                "exponent-splitting formula is asserted only for A(n)_*; got %s "
                "(pass assume_formula=True for the dimension-level map)" % Q.name)


def extended_iso(a, Q, assume_formula=False):
    _check_formula_profile(Q, assume_formula)
    out = set()
    for m in a:
        out ^= {split_mono(m, Q)}
    return frozenset(out)


def extended_iso_inverse(t, Q=None):
    out = set()
    for a, b in t:
        out ^= {fp.mono_mul(a, b)}
    return frozenset(out)


def pi_cotensor(m, Q):
    """Projection of A_* onto F2[zeta_i^{e(i)}] keeping monomials with e(i) | r_i."""
    return frozenset([m]) if in_cotensor_mono(m, Q) else ZERO


def extended_comodule_iso(a, Q):
    """(pi (x) ||.||) Delta: a right Q-comodule map A_* -> (A_* box_Q F2) (x) Q.

    Its leading part for the filtration by degree in the Q slot is the
    exponent-splitting formula of extended_iso, so it is bijective whenever
    that formula is.
    """
    out = set()
    for x, y in coproduct(a):
        if in_cotensor_mono(x, Q) and not Q.mono_in_ideal(y):
            out ^= {(x, y)}
    return frozenset(out)


def _leading_right(t):
    if not t:
        return t
    top = max(fp.mono_degree(b) for _, b in t)
    return frozenset((a, b) for a, b in t if fp.mono_degree(b) == top)


def extended_iso_report(Q, dmax, assume_formula=False):
    """Degreewise checks of the splitting formula and of the comodule iso it grades.

    For each degree: formula bijective onto a space of the right dimension,
    (pi (x) ||.||) Delta is bijective and intertwines the right Q-coactions, and
    its leading Q-slot part equals the formula.  Returns (degree, ok, detail).
    """
    _check_formula_profile(Q, assume_formula)
    results = []
    for d in range(dmax + 1):
        source = basis(d)
        spec = CotensorSpec(Q, d)
        target = sum(len(fp.graded_basis(spec, a)) * len(quotient_basis(Q, d - a)) for a in range(d + 1))
        formula = [extended_iso(frozenset([m]), Q, True) for m in source]
        como = [extended_comodule_iso(frozenset([m]), Q) for m in source]
        detail = ""
        if target != len(source):
            detail = "dimension %d vs %d" % (len(source), target)
        elif fp.span_rank(formula) != len(source):
            detail = "formula not injective"
        elif fp.span_rank(como) != len(source):
            detail = "comodule iso not injective"
        else:
            for m, f, c in zip(source, formula, como):
                if _leading_right(c) != f:
                    detail = "leading part differs at %s" % fp.mono_str(m)
                    break
                lhs = _rightslot_coact(c, Q)
                rhs = _como_on_triples(_right_coaction_reduced(m, Q), Q)
                if lhs != rhs:
                    detail = "comodule-map failure at %s" % fp.mono_str(m)
                    break
        results.append((d, not detail, detail))
    return results


def formula_comodule_defect(a, Q):
    """(id (x) Delta_Q) iso(a) + (iso (x) id) rho(a) for the bare splitting formula."""
    out = set()
    for m in a:
        out ^= _rightslot_coact(extended_iso(frozenset([m]), Q, True), Q)
        out ^= _iso_on_triples(_right_coaction_reduced(m, Q), Q)
    return frozenset(out)


def _right_coaction_reduced(m, Q):
    return frozenset((x, y) for x, y in coproduct_mono(m) if not Q.mono_in_ideal(y))


def _rightslot_coact(t, Q):
    """(id (x) Delta_Q) on (cotensor (x) Q)."""
    out = set()
    for a, b in t:
        for x, y in quotient_coproduct(frozenset([b]), Q):
            out ^= {(a, x, y)}
    return frozenset(out)


def _iso_on_triples(t, Q):
    out = set()
    for a, q in t:
        left, right = split_mono(a, Q)
        out ^= {(left, right, q)}
    return frozenset(out)


def _como_on_triples(t, Q):
    out = set()
    for a, q in t:
        for x, y in extended_comodule_iso(frozenset([a]), Q):
            out ^= {(x, y, q)}
    return frozenset(out)


def ideal_In_member(a, n):
    Q = A(n)
    return all(Q.mono_in_ideal(m) for m in a)


# numerical checks used by tests and the CLI

def coassociativity_defect(a):
    """(Delta (x) id)Delta a + (id (x) Delta)Delta a as a 3-tensor."""
    t = coproduct(a)
    left = set()
    right = set()
    for x, y in t:
        for x1, x2 in coproduct_mono(x):
            left ^= {(x1, x2, y)}
        for y1, y2 in coproduct_mono(y):
            right ^= {(x, y1, y2)}
    return frozenset(left ^ right)


def antipode_defect(a, side="left"):
    """mu (chi (x) id) Delta a + eps(a); zero for a Hopf algebra."""
    out = set()
    for x, y in coproduct(a):
        if side == "left":
            out ^= fp.mul(antipode_mono(x), frozenset([y]))
        else:
            out ^= fp.mul(frozenset([x]), antipode_mono(y))
    if counit(a):
        out ^= {ONE}
    return frozenset(out)


def counit_defect(a):
    t = coproduct(a)
    left = fp.tcontract_left(t, lambda m: m == ONE)
    right = fp.tcontract_right(t, lambda m: m == ONE)
    return fp.add(left, a), fp.add(right, a)
