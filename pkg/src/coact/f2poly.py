"""Sparse polynomials and tensors over F2.

Generator ids are plain tuples whose first entry is a namespace tag:

    (ZETA, i)            zeta_i, degree 2^i - 1
    (CELL, n)            a cell x_n, degree n
    (QGEN, n, I)         Q^I x_n for a nonempty sequence I
    (BO, k, s)           a_{k,s}, degree 2^s k
    (FAMILY, tag, i)     z_i and other named sequences

A monomial is a tuple of (gen, exponent) pairs sorted by generator; the
empty tuple is 1.  A polynomial is a frozenset of monomials (coefficients
are implicit 1s).  A 2-tensor is a frozenset of (monomial, monomial) pairs;
3-tensors use triples.
"""
from functools import lru_cache
from itertools import product as _cartesian

import numpy as np

from . import _kernels

ZETA, CELL, QGEN, BO, FAMILY = 0, 1, 2, 3, 4

ONE = ()
ZERO = frozenset()
UNIT = frozenset([ONE])


class MissingAssignment(KeyError):
    pass


class NotLocallyFinite(ValueError):
    pass


# generators

def zeta(i):
    return (ZETA, i)


def cell(n):
    return (CELL, n)


def qgen(n, seq):
    seq = tuple(seq)
    return (QGEN, n, seq) if seq else (CELL, n)


def bo(k, s):
    return (BO, k, s)


def family(tag, i):
    return (FAMILY, tag, i)


_FAMILY_DEGREE = {
    "z": lambda s: 2 ** (s + 1) - 2,
}


def register_family(tag, degree_fn):
    _FAMILY_DEGREE[tag] = degree_fn


@lru_cache(maxsize=None)
def gen_degree(g):
    tag = g[0]
    if tag == ZETA:
        return 2 ** g[1] - 1
    if tag == CELL:
        return g[1]
    if tag == QGEN:
        return g[1] + sum(g[2])
    if tag == BO:
        return g[1] * 2 ** g[2]
    if tag == FAMILY:
        return _FAMILY_DEGREE[g[1]](g[2])
    raise ValueError("unknown generator %r" % (g,))


def base_cell(g):
    """The cell x_n underlying a cell or Q-generator."""
    return g[1] if g[0] in (CELL, QGEN) else None


def qseq(g):
    if g[0] == QGEN:
        return g[2]
    if g[0] == CELL:
        return ()
    raise ValueError("not a cell or Q-generator: %r" % (g,))


# monomials

def mono(*pairs):
    d = {}
    for g, e in pairs:
        if e:
            d[g] = d.get(g, 0) + e
    return tuple(sorted((g, e) for g, e in d.items() if e))


def mono_degree(m):
    return sum(gen_degree(g) * e for g, e in m)


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for g, e in b:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items()))


def mono_pow(m, e):
    if e == 0:
        return ONE
    return tuple((g, x * e) for g, x in m)


def mono_gens(m):
    return [g for g, _ in m]


# polynomials

def poly(*monos):
    out = set()
    for m in monos:
        out ^= {m}
    return frozenset(out)


def gen_poly(g, e=1):
    return frozenset([((g, e),)])


def from_mono(m):
    return frozenset([m])


def add(*ps):
    out = set()
    for p in ps:
        out ^= p
    return frozenset(out)


def mul(p, q):
    if not p or not q:
        return ZERO
    if p == UNIT:
        return q
    if q == UNIT:
        return p
    out = set()
    for a in p:
        for b in q:
            out ^= {mono_mul(a, b)}
    return frozenset(out)


def mul_many(ps):
    out = UNIT
    for p in ps:
        out = mul(out, p)
        if not out:
            break
    return out


def frobenius(p, k=1):
    """p^(2^k): in characteristic 2 cross terms cancel."""
    f = 2 ** k
    return frozenset(mono_pow(m, f) for m in p)


def power(p, e):
    if e < 0:
        raise ValueError("negative exponent")
    out = UNIT
    k = 0
    while e:
        if e & 1:
            out = mul(out, frobenius(p, k))
        e >>= 1
        k += 1
    return out


def degree_parts(p):
    parts = {}
    for m in p:
        parts.setdefault(mono_degree(m), set()).add(m)
    return {d: frozenset(s) for d, s in parts.items()}


def homogeneous_part(p, d):
    return frozenset(m for m in p if mono_degree(m) == d)


def is_homogeneous(p):
    return len({mono_degree(m) for m in p}) <= 1


def poly_degree(p):
    """Degree of a nonzero homogeneous polynomial."""
    degs = {mono_degree(m) for m in p}
    if len(degs) != 1:
        raise ValueError("not a nonzero homogeneous element")
    return degs.pop()


def counit(p):
    return 1 if ONE in p else 0


def substitute(p, sigma, strict=True):
    """Extend sigma: gen -> Poly to an algebra map and apply it to p.

    With strict=False, unassigned generators are left unchanged.
    """
    cache = {}

    def image(g, e):
        key = (g, e)
        if key not in cache:
            if g in sigma:
                cache[key] = power(sigma[g], e)
            elif strict:
                raise MissingAssignment(g)
            else:
                cache[key] = gen_poly(g, e)
        return cache[key]

    out = set()
    for m in p:
        term = UNIT
        for g, e in m:
            term = mul(term, image(g, e))
            if not term:
                break
        out ^= term
    return frozenset(out)


def map_monomials(p, f):
    """Linear extension of f: monomial -> Poly."""
    out = set()
    for m in p:
        out ^= f(m)
    return frozenset(out)


# tensors

def tensor(p, q):
    return frozenset((a, b) for a in p for b in q)


def tensor3(p, q, r):
    return frozenset((a, b, c) for a in p for b in q for c in r)


def tadd(*ts):
    out = set()
    for t in ts:
        out ^= t
    return frozenset(out)


def tmul(s, t):
    if not s or not t:
        return ZERO
    out = set()
    for a, b in s:
        for c, d in t:
            out ^= {(mono_mul(a, c), mono_mul(b, d))}
    return frozenset(out)


def tfrobenius(t, k=1):
    f = 2 ** k
    return frozenset(tuple(mono_pow(m, f) for m in term) for term in t)


def tpower(t, e):
    out = frozenset([(ONE, ONE)])
    k = 0
    while e:
        if e & 1:
            out = tmul(out, tfrobenius(t, k))
        e >>= 1
        k += 1
    return out


def tmap(t, *fs):
    """Apply linear maps slotwise; each f takes a monomial and returns a Poly (None = identity)."""
    out = set()
    for term in t:
        images = []
        for m, f in zip(term, fs):
            images.append(from_mono(m) if f is None else f(m))
        for combo in _cartesian(*images):
            out ^= {combo}
    return frozenset(out)


def tslot_split(t, slot=0):
    """Group a tensor by one slot: {monomial in slot: tensor of the remaining slots}."""
    groups = {}
    for term in t:
        key = term[slot]
        rest = term[:slot] + term[slot + 1:]
        groups.setdefault(key, set()).symmetric_difference_update({rest if len(rest) > 1 else rest[0]})
    return {k: frozenset(v) for k, v in groups.items()}


def tswap(t):
    return frozenset((b, a) for a, b in t)


def tcontract_right(t, f):
    """(id (x) f) where f: monomial -> 0/1 yields a Poly in the left slot."""
    out = set()
    for a, b in t:
        if f(b):
            out ^= {a}
    return frozenset(out)


def tcontract_left(t, f):
    out = set()
    for a, b in t:
        if f(a):
            out ^= {b}
    return frozenset(out)


# graded algebras

class GradedAlgebraSpec:
    """Free graded-commutative algebra on listed generators, optionally truncated.

    heights[g] = h means g^h = 0 (h a positive integer).  `complete_to` is the
    highest degree through which the generator list is known to be complete.
    """

    def __init__(self, generators, heights=None, complete_to=None, name=""):
        gens = []
        for item in generators:
            if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], tuple):
                g, d = item
            else:
                g, d = item, gen_degree(item)
            if d <= 0:
                raise NotLocallyFinite("generator %s has degree %d" % (gen_str(g), d))
            gens.append((g, d))
        gens.sort(key=lambda gd: (gd[1], gd[0]))
        self.generators = tuple(gens)
        self.heights = dict(heights or {})
        self.complete_to = complete_to
        self.name = name

    def gens_up_to(self, d):
        return [(g, k) for g, k in self.generators if k <= d]

    def _check(self, d):
        if self.complete_to is not None and d > self.complete_to:
            raise ValueError("generator list only complete to degree %d" % self.complete_to)

    def __repr__(self):
        return "GradedAlgebraSpec(%s, %d generators)" % (self.name, len(self.generators))


def graded_basis(A, d):
    """All monomials of degree d, canonical order."""
    if d < 0:
        return []
    A._check(d)
    gens = A.gens_up_to(d)
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(tuple(sorted(acc)))
            return
        if i == len(gens):
            return
        g, k = gens[i]
        h = A.heights.get(g)
        maxe = remaining // k
        if h is not None:
            maxe = min(maxe, h - 1)
        for e in range(maxe, -1, -1):
            if e:
                acc.append((g, e))
            rec(i + 1, remaining - e * k, acc)
            if e:
                acc.pop()

    rec(0, d, [])
    out.sort()
    return out


def poincare(A, dmax):
    """Graded dimensions 0..dmax as a list of ints."""
    A._check(dmax)
    gens = A.gens_up_to(dmax)
    degs = [k for _, k in gens]
    heights = [A.heights.get(g, 0) for g, _ in gens]
    return [int(c) for c in _kernels.series_product(degs, heights, dmax)]


def series_mul(a, b, dmax=None):
    n = min(len(a), len(b)) if dmax is None else dmax + 1
    out = [0] * n
    for i in range(n):
        if i < len(a) and a[i]:
            for j in range(n - i):
                if j < len(b):
                    out[i + j] += a[i] * b[j]
    return out


def series_times_regular_quotient(series, degs):
    """Multiply a series by prod_s (1 - t^{d_s})."""
    out = list(series)
    n = len(out)
    for d in degs:
        if d <= 0:
            raise ValueError("degrees must be positive")
        for i in range(n - 1, d - 1, -1):
            out[i] -= out[i - d]
    return out


# linear algebra helpers over monomial bases

def coordinate_matrix(columns, basis_index):
    """0/1 matrix with one column per polynomial/tensor, rows indexed by basis_index."""
    M = np.zeros((len(basis_index), len(columns)), dtype=np.uint8)
    for j, col in enumerate(columns):
        for term in col:
            M[basis_index[term], j] = 1
    return M


def span_rank(vectors):
    """Rank over F2 of a list of polynomials/tensors."""
    keys = {}
    for v in vectors:
        for t in v:
            keys.setdefault(t, len(keys))
    if not keys:
        return 0
    return _kernels.rank(coordinate_matrix(vectors, keys))


# printing

def _ints(xs):
    return ",".join(str(x) for x in xs)


def gen_str(g):
    tag = g[0]
    if tag == ZETA:
        return "z%d" % g[1]
    if tag == CELL:
        return "x[%d]" % g[1]
    if tag == QGEN:
        return "Q[%s](x[%d])" % (_ints(g[2]), g[1])
    if tag == BO:
        return "a[%d,%d]" % (g[1], g[2])
    if tag == FAMILY:
        return "%s[%d]" % (g[1], g[2])
    raise ValueError(g)


def mono_str(m):
    if not m:
        return "1"
    parts = []
    for g, e in m:
        s = gen_str(g)
        parts.append(s if e == 1 else "%s^%d" % (s, e))
    return "*".join(parts)


def mono_sort_key(m):
    return (mono_degree(m), m)


def poly_str(p):
    if not p:
        return "0"
    return " + ".join(mono_str(m) for m in sorted(p, key=mono_sort_key))


def term_sort_key(term):
    return tuple(mono_sort_key(m) for m in term)


def tensor_str(t):
    if not t:
        return "0"
    return " + ".join(" | ".join(mono_str(m) for m in term) for term in sorted(t, key=term_sort_key))


def mono_json(m):
    return [[gen_str(g), e] for g, e in m]


def poly_json(p):
    return [mono_json(m) for m in sorted(p, key=mono_sort_key)]


def tensor_json(t):
    return [[mono_json(m) for m in term] for term in sorted(t, key=term_sort_key)]
