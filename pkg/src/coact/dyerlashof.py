"""Mod 2 Dyer-Lashof operations.

Covers admissible sequences, the Adem relations, the action on free E-infinity
homology algebras (generators Q^I x_n) and the action on A_* given by the
N_m recursion.  Operations act on sparse F2 polynomials through the Cartan
formula and the unstable conditions Q^k p = 0 for k < |p| and Q^{|p|} p = p^2.
"""
import math
from functools import lru_cache

from . import f2poly as fp
from . import steenrod as st
from .f2poly import CELL, ONE, QGEN, UNIT, ZERO, ZETA


class UnknownBaseAction(KeyError):
    pass


# sequences

def is_admissible(seq):
    return all(seq[j] <= 2 * seq[j + 1] for j in range(len(seq) - 1))


def excess(seq):
    if not seq:
        return math.inf
    return seq[0] - sum(seq[1:])


def weight(seq):
    return sum(seq)


def _binom2(n, k):
    """binom(n, k) mod 2 (zero unless 0 <= k <= n)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


def adem_pair(r, s):
    """Q^r Q^s for r > 2s as a set of admissible pairs."""
    out = set()
    for i in range((r + 1) // 2, r - s):
        if _binom2(i - s - 1, 2 * i - r):
            out ^= {(r + s - i, i)}
    return out


@lru_cache(maxsize=None)
def adem_rewrite(word):
    """Admissible normal form of a Q-word, as a frozenset of admissible tuples."""
    word = tuple(word)
    for j in range(len(word) - 1):
        if word[j] > 2 * word[j + 1]:
            out = set()
            for a, b in adem_pair(word[j], word[j + 1]):
                out ^= adem_rewrite(word[:j] + (a, b) + word[j + 2:])
            return frozenset(out)
    return frozenset([word])


# Q-generators of free algebras

def is_generator_seq(seq, n):
    return is_admissible(seq) and excess(seq) > n


def enumerate_seqs(n, dmax):
    """Admissible I with exc(I) > n and n + |I| <= dmax, in the order (degree, I)."""
    if n > dmax:
        return []
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for seq in frontier:
            d = n + sum(seq)
            lo = d + 1
            hi = dmax - d
            if seq:
                hi = min(hi, 2 * seq[0])
            for i in range(lo, hi + 1):
                nxt.append((i,) + seq)
        out.extend(nxt)
        frontier = nxt
    out.sort(key=lambda s: (n + sum(s), s))
    return out


def enumerate_qgens(cells, dmax):
    """Generators Q^I x of degree <= dmax for cells given as gen ids or (gen, degree)."""
    gens = []
    for c in cells:
        g = c[0] if isinstance(c[0], tuple) else c
        n = fp.gen_degree(g)
        for seq in enumerate_seqs(n, dmax):
            gens.append(fp.qgen(g[1], seq))
    gens.sort(key=lambda g: (fp.gen_degree(g), g))
    return gens


# the action on A_*

@lru_cache(maxsize=None)
def N(m):
    if m < 0:
        return ZERO
    if m == 0:
        return UNIT
    if m % 2 == 0:
        return fp.frobenius(N(m // 2))
    half = (m - 1) // 2
    out = set()
    i = 1
    while half - 2 ** (i - 1) + 1 >= 0:
        out ^= fp.mul(st.xi(i), fp.frobenius(N(half - 2 ** (i - 1) + 1)))
        i += 1
    return frozenset(out)


def q_zeta(k, n):
    """Q^k zeta_n."""
    if k < 0:
        return ZERO
    p = 2 ** n
    if k < p - 1 or k % p not in (0, p - 1):
        return ZERO
    return N(k + p - 1)


def _free_base(k, g):
    d = fp.gen_degree(g)
    if k < d:
        return ZERO
    if k == d:
        return fp.gen_poly(g, 2)
    n = g[1]
    seq = fp.qseq(g)
    out = set()
    for J in adem_rewrite((k,) + seq):
        out ^= _eval_seq(J, n)
    return frozenset(out)


@lru_cache(maxsize=None)
def _eval_seq(J, n):
    """Q^J x_n in the free algebra on x_n, for admissible J."""
    if excess(J) > n:
        return fp.gen_poly(fp.qgen(n, J))
    return q_apply(J[0], _eval_seq(J[1:], n))


def _default_base(k, g):
    tag = g[0]
    if tag == ZETA:
        return q_zeta(k, g[1])
    if tag in (CELL, QGEN):
        return _free_base(k, g)
    raise UnknownBaseAction(g)


class DLContext:
    """Base actions Q^k g on generators; anything not overridden uses the default rules.

    overrides maps a generator id to a function k -> Poly.
    """

    def __init__(self, overrides=None, name=""):
        self.overrides = dict(overrides or {})
        self.name = name
        self._memo = {}

    def base(self, k, g):
        f = self.overrides.get(g)
        if f is not None:
            return f(k)
        return _default_base(k, g)

    def q_mono(self, k, m):
        key = (k, m)
        hit = self._memo.get(key)
        if hit is None:
            hit = _q_mono(self, k, m)
            self._memo[key] = hit
        return hit


DEFAULT = DLContext(name="default")


def _q_mono(ctx, k, m):
    d = fp.mono_degree(m)
    if k < d:
        return ZERO
    if k == d:
        return frozenset([fp.mono_pow(m, 2)])
    if not m:
        return ZERO
    odd = [(g, e) for g, e in m if e & 1]
    if not odd:
        if k & 1:
            return ZERO
        half = tuple((g, e // 2) for g, e in m)
        return fp.frobenius(ctx.q_mono(k // 2, half))
    g, e = odd[0]
    if len(m) == 1 and e == 1:
        return ctx.base(k, g)
    a = ((g, 1),)
    b = fp.mono_mul(fp.mono(*[(h, x) for h, x in m if h != g]), ((g, e - 1),) if e > 1 else ONE)
    da, db = fp.gen_degree(g), fp.mono_degree(b)
    out = set()
    for i in range(da, k - db + 1):
        qa = ctx.q_mono(i, a)
        if not qa:
            continue
        qb = ctx.q_mono(k - i, b)
        if qb:
            out ^= fp.mul(qa, qb)
    return frozenset(out)


def q_apply(k, p, ctx=None):
    """Q^k p for a polynomial p in any mix of zeta and Q-generator variables."""
    ctx = ctx or DEFAULT
    out = set()
    for m in p:
        out ^= ctx.q_mono(k, m)
    return frozenset(out)


def qword_eval(seq, p, ctx=None):
    """Q^{i_1} ... Q^{i_k} p, applied from the right."""
    for i in reversed(tuple(seq)):
        p = q_apply(i, p, ctx)
        if not p:
            break
    return p


def q_tilde(k, a):
    """chi Q^k chi on A_*."""
    return st.antipode(q_apply(k, st.antipode(a)))


def q_tensor(k, t, ctx=None):
    """Diagonal action on a tensor (pairs or triples) via the Cartan formula."""
    ctx = ctx or DEFAULT
    out = set()
    for term in t:
        out ^= _q_term(ctx, k, term)
    return frozenset(out)


def _q_term(ctx, k, term):
    first, rest = term[0], term[1:]
    d0 = fp.mono_degree(first)
    drest = sum(fp.mono_degree(m) for m in rest)
    out = set()
    for i in range(d0, k - drest + 1):
        qa = ctx.q_mono(i, first)
        if not qa:
            continue
        if len(rest) == 1:
            qb = ctx.q_mono(k - i, rest[0])
            for a in qa:
                for b in qb:
                    out ^= {(a, b)}
        else:
            qb = _q_term(ctx, k - i, rest)
            for a in qa:
                for b in qb:
                    out ^= {(a,) + b}
    return out


def D(p, ctx=None):
    """Q^{|p|+1} p for homogeneous p; D(ab) = a^2 D(b) + D(a) b^2 and D(p^2) = 0."""
    if not p:
        return ZERO
    return q_apply(fp.poly_degree(p) + 1, p, ctx)
