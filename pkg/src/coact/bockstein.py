"""The mod 2 Bockstein spectral sequence for H_*(Mj_1).

d_1 = beta_1 is the Sq^1_* derivation given on the Q^I x_s.  Higher
differentials are computed page by page.  On each page, d_r is a derivation,
and on squares it is given by the higher Bockstein formula

    beta_2(y^2) = y beta_1 y + Q^{2m}(beta_1 y)     (|y| = 2m)
    beta_k(y^2) = y beta_{k-1} y                    (k > 2).

A class that is neither a combination of products nor a square of an
even-degree class can only carry d_r = 0 when the target group vanishes.
Otherwise it is reported as undetermined.
"""
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from . import comodule as cm
from . import dyerlashof as dl
from . import f2poly as fp
from . import presets
from . import steenrod as st
from .f2poly import CELL, ONE, QGEN, UNIT, ZERO


class OddDegree(ValueError):
    pass


# beta_1

def beta1_gen(g):
    if g[0] == CELL:
        if g[1] == 3:
            return fp.gen_poly(fp.cell(2))
        if g[1] == 2:
            return ZERO
        raise cm.UnknownGenerator(g)
    if g[0] != QGEN or g[1] not in (2, 3):
        raise cm.UnknownGenerator(g)
    seq = g[2]
    if seq[0] % 2:
        return ZERO
    return dl.qword_eval((seq[0] - 1,) + seq[1:], fp.gen_poly(fp.cell(g[1])))


def beta1_mono(m):
    out = set()
    for i, (g, e) in enumerate(m):
        if e % 2 == 0:
            continue
        b = beta1_gen(g)
        if not b:
            continue
        rest = m[:i] + (((g, e - 1),) if e > 1 else ()) + m[i + 1:]
        out ^= fp.mul(b, frozenset([rest]))
    return frozenset(out)


def beta1(p):
    out = set()
    for m in p:
        out ^= beta1_mono(m)
    return frozenset(out)


def zeta1_component(t):
    """Coefficient of zeta_1 (x) (-) in a left coaction value."""
    z1 = ((fp.zeta(1), 1),)
    return frozenset(m for a, m in t if a == z1)


# linear algebra on monomial bases

class _Space:
    """Graded vector space with a monomial basis in each degree."""

    def __init__(self, basis_fn):
        self._basis_fn = basis_fn
        self._basis = {}
        self._index = {}

    def basis(self, d):
        if d not in self._basis:
            b = list(self._basis_fn(d)) if d >= 0 else []
            self._basis[d] = b
            self._index[d] = {m: i for i, m in enumerate(b)}
        return self._basis[d]

    def dim(self, d):
        return len(self.basis(d))

    def vec(self, p, d):
        self.basis(d)
        v = np.zeros(self.dim(d), dtype=np.uint8)
        idx = self._index[d]
        for m in p:
            v[idx[m]] ^= 1
        return v

    def poly(self, v, d):
        b = self.basis(d)
        return frozenset(b[i] for i in np.nonzero(v)[0])


def _rowspace(rows, n):
    """RREF basis (as a 2d array) of the span of rows in F2^n."""
    if not len(rows):
        return np.zeros((0, n), dtype=np.uint8)
    R, piv = _kernels.rref(np.array(rows, dtype=np.uint8).reshape(-1, n))
    return R[:len(piv)]


def _solve_in_span(rows, v):
    """Coefficients c with c @ rows = v, or None."""
    if not len(rows):
        return np.zeros(0, dtype=np.uint8) if not v.any() else None
    return _kernels.solve(np.array(rows, dtype=np.uint8).T, v)


def _rank(rows, n):
    return len(_rowspace(rows, n))


def homology_dims(space, diff, dmax):
    """dim ker d / im d in each degree for a degree -1 differential given on monomials."""
    out = []
    for d in range(dmax + 1):
        n = space.dim(d)
        cyc = n - _rank([space.vec(diff(frozenset([m])), d - 1) for m in space.basis(d)], space.dim(d - 1)) \
            if space.dim(d - 1) else n
        bnd = _rank([space.vec(diff(frozenset([m])), d) for m in space.basis(d + 1)], n) if n else 0
        out.append(cyc - bnd)
    return out


# beta_1 homology of H_*(Mj_1) and of H_*(Mj_1)/I_1

def _mj1():
    return presets.build("Mj1")


def beta1_homology(dmax=12, quotient=False):
    """Dimensions of H(H_*(Mj_1), beta_1), or of H(H_*(Mj_1)/I_1, beta_1) when quotient is set.

    On the quotient, beta_1 is the zeta_1 component of the induced A(0)_* coaction.
    """
    M = _mj1()
    if not quotient:
        space = _Space(M.basis)
        return homology_dims(space, beta1, dmax)
    I = presets.ideal(1, 64)
    spec = I.quotient_spec(M, dmax + 1)
    space = _Space(lambda d: fp.graded_basis(spec, d))

    def diff(p):
        return fp.map_monomials(p, lambda m: zeta1_component(I.nf_right(M.coact_mono(m))))
    return homology_dims(space, diff, dmax)


def beta1_cotensor_homology(dmax=12, Q=None):
    """H(A_* box_Q F2, beta_1), beta_1 the zeta_1 component of the coproduct."""
    Q = Q or st.A(0)
    spec = st.CotensorSpec(Q, dmax + 1)
    space = _Space(spec.basis)

    def diff(p):
        return fp.map_monomials(p, lambda m: zeta1_component(st.coproduct_mono(m)))
    return homology_dims(space, diff, dmax)


# higher Bocksteins

def higher_bockstein(k, x, lower=None):
    """beta_k(x^2) for x of even degree.

    `lower` gives beta_{k-1} x when k > 2 (the value of the previous page's differential).
    """
    if not x:
        return ZERO
    deg = fp.poly_degree(x)
    if deg % 2:
        raise OddDegree("the square formula needs an even-degree class, got degree %d" % deg)
    if k < 2:
        raise ValueError("k >= 2")
    if k == 2:
        b = beta1(x)
        return fp.add(fp.mul(x, b), dl.q_apply(deg, b))
    if lower is None:
        raise ValueError("beta_%d x must be supplied for k > 2" % (k - 1))
    return fp.mul(x, lower)


# pages

@dataclass
class BocksteinPage:
    r: int
    dims: dict
    classes: dict = field(default_factory=dict)
    differential: dict = field(default_factory=dict)
    undetermined: list = field(default_factory=list)

    def dim(self, d):
        return self.dims.get(d, 0)


@dataclass
class BSSResult:
    pages: list
    summands: list
    torsion_free: dict
    dmax: int
    undetermined: list

    def summary(self):
        lines = []
        for p in self.pages:
            lines.append("E^%d: %s" % (p.r, [p.dim(d) for d in range(self.dmax + 1)]))
        tor = {}
        for d, r in self.summands:
            tor[(d, r)] = tor.get((d, r), 0) + 1
        lines.append("torsion: " + ", ".join(
            "%dxZ/%d in degree %d" % (c, 2 ** r, d) for (d, r), c in sorted(tor.items())))
        lines.append("torsion-free: " + ", ".join("%dxZ in degree %d" % (c, d)
                                                  for d, c in sorted(self.torsion_free.items()) if c))
        return "\n".join(lines)

    def to_json(self):
        return {
            "max_degree": self.dmax,
            "pages": [{"r": p.r, "dims": [p.dim(d) for d in range(self.dmax + 1)]} for p in self.pages],
            "summands": [{"degree": d, "order": 2 ** r} for d, r in self.summands],
            "torsion_free": {str(d): c for d, c in sorted(self.torsion_free.items()) if c},
            "undetermined": [str(u) for u in self.undetermined],
        }


class _PageState:
    """Z^r and B^r as row spaces in H-coordinates, plus class representatives and their d_r."""

    def __init__(self, space, top):
        self.space = space
        self.top = top
        self.Z = {}
        self.B = {}
        self.reps = {}
        self.dvals = {}

    def quotient_basis(self, d):
        """Representatives (vectors) of a basis of Z_d / B_d."""
        n = self.space.dim(d)
        B = list(self.B[d])
        reps = []
        cur = _rowspace(B, n)
        for z in self.Z[d]:
            trial = _rowspace(list(cur) + [z], n)
            if len(trial) > len(cur):
                reps.append(z)
                cur = trial
        return reps


def _first_page(space, top):
    s = _PageState(space, top)
    for d in range(top + 1):
        n = space.dim(d)
        s.Z[d] = list(np.eye(n, dtype=np.uint8))
        s.B[d] = []
    return s


def _beta1_vec(space, v, d):
    return space.vec(beta1(space.poly(v, d)), d - 1)


def _page_from_differential(prev, dvals):
    """E^{r+1} from E^r and d_r given on class representatives."""
    space, top = prev.space, prev.top
    nxt = _PageState(space, top)
    for d in range(top + 1):
        nxt.B[d] = list(prev.B[d])
    extra = getattr(prev, "extra_boundaries", [])
    if extra:
        nxt.B[top] = list(_rowspace(nxt.B[top] + extra, space.dim(top)))
    for d in range(top + 1):
        reps = prev.reps[d]
        vals = dvals[d]
        n1 = space.dim(d - 1) if d > 0 else 0
        # kernel of d_r modulo boundaries of the target
        image_rows = []
        if d > 0 and reps:
            Bt = list(prev.B[d - 1])
            mat = [np.asarray(v, dtype=np.uint8) for v in vals]
            # combinations c of reps with sum c_i vals_i in B_{d-1}
            cols = mat + Bt
            if n1:
                A = np.array(cols, dtype=np.uint8).T.reshape(n1, len(cols))
                null = _kernels.nullspace(A)
            else:
                null = np.eye(len(cols), dtype=np.uint8)
            kernel = []
            for c in null:
                cr = c[:len(reps)]
                if cr.any():
                    kernel.append(np.bitwise_xor.reduce([reps[i] for i in np.nonzero(cr)[0]], axis=0))
            kernel_space = _rowspace(kernel + list(nxt.B[d]), space.dim(d))
            nxt.Z[d] = list(kernel_space)
            image_rows = [v for v in vals if v.any()]
        else:
            nxt.Z[d] = list(_rowspace(reps + list(nxt.B[d]), space.dim(d)))
        if d > 0 and image_rows:
            nxt.B[d - 1] = list(_rowspace(list(nxt.B[d - 1]) + image_rows, n1))
    return nxt


def _d1_page(space, top):
    first = _first_page(space, top)
    dvals = {}
    for d in range(top + 1):
        first.reps[d] = first.quotient_basis(d)
        dvals[d] = [_beta1_vec(space, v, d) if d > 0 else np.zeros(0, dtype=np.uint8)
                    for v in first.reps[d]]
    first.dvals = dvals
    # beta_1 images from one degree above the top, so E^2 is right at the top too
    extra = [_beta1_vec(space, space.vec(frozenset([m]), top + 1), top + 1)
             for m in space.basis(top + 1)]
    first.extra_boundaries = [v for v in extra if v.any()]
    return first


def _compute_dr(state, r, prev_state):
    """d_r on class representatives of E^r via products and squares."""
    space, top = state.space, state.top
    undetermined = []
    for d in range(top + 1):
        state.reps[d] = state.quotient_basis(d)
    for d in range(top + 1):
        vals = []
        for v in state.reps[d]:
            val, ok = _dr_of_class(state, prev_state, r, d, v)
            if not ok:
                target_dim = len(state.reps.get(d - 1, [])) if d > 0 else 0
                if target_dim:
                    undetermined.append((r, d, fp.poly_str(space.poly(v, d))))
                val = np.zeros(space.dim(d - 1) if d > 0 else 0, dtype=np.uint8)
            vals.append(val)
        state.dvals[d] = vals
    return undetermined


def _dr_of_class(state, prev_state, r, d, v):
    """(d_r v as a vector in degree d-1, determined?)."""
    space = state.space
    n = space.dim(d)
    if d == 0:
        return np.zeros(0, dtype=np.uint8), True
    target = space.dim(d - 1)
    cols = []
    kinds = []
    # products of class representatives of lower degrees
    for a in range(1, d // 2 + 1):
        for i, u in enumerate(state.reps[a]):
            for j, w in enumerate(state.reps[d - a]):
                if a == d - a and j < i:
                    continue
                pu, pw = space.poly(u, a), space.poly(w, d - a)
                cols.append(space.vec(fp.mul(pu, pw), d))
                kinds.append(("prod", a, i, j))
    # squares y^2 with y surviving to the previous page
    half = d // 2
    if d % 2 == 0 and half % 2 == 0 and half > 0:
        ybasis = list(prev_state.B[half]) + list(prev_state.reps[half]) if r > 2 else \
            list(np.eye(space.dim(half), dtype=np.uint8))
        for k, y in enumerate(ybasis):
            cols.append(space.vec(fp.frobenius(space.poly(y, half)), d))
            kinds.append(("sq", k))
        ybasis_used = ybasis
    else:
        ybasis_used = []
    for b in state.B[d]:
        cols.append(np.asarray(b, dtype=np.uint8))
        kinds.append(("bnd",))
    if not cols:
        return np.zeros(target, dtype=np.uint8), False
    A = np.array(cols, dtype=np.uint8).T.reshape(n, len(cols))
    c = _kernels.solve(A, v)
    if c is None:
        return np.zeros(target, dtype=np.uint8), False
    total = set()
    y = np.zeros(space.dim(half), dtype=np.uint8) if ybasis_used else None
    for idx in np.nonzero(c)[0]:
        kind = kinds[idx]
        if kind[0] == "prod":
            _, a, i, j = kind
            u, w = state.reps[a][i], state.reps[d - a][j]
            du, dw = state.dvals[a][i], state.dvals[d - a][j]
            pu, pw = space.poly(u, a), space.poly(w, d - a)
            total ^= fp.mul(space.poly(du, a - 1), pw)
            total ^= fp.mul(pu, space.poly(dw, d - a - 1))
        elif kind[0] == "sq":
            y ^= ybasis_used[kind[1]]
    if y is not None and y.any():
        py = space.poly(y, half)
        if r == 2:
            total ^= higher_bockstein(2, py)
        else:
            lower = _previous_dr(prev_state, half, y)
            total ^= higher_bockstein(r, py, lower)
    return space.vec(frozenset(total), d - 1), True


def _previous_dr(prev_state, d, y):
    """d_{r-1} of y in Z^{r-1}_d, expressed through the stored representatives."""
    space = prev_state.space
    rows = list(prev_state.B[d]) + list(prev_state.reps[d])
    c = _solve_in_span(rows, y)
    if c is None:
        raise ValueError("element does not survive to the previous page")
    nb = len(prev_state.B[d])
    out = set()
    for idx in np.nonzero(c)[0]:
        if idx >= nb:
            out ^= space.poly(prev_state.dvals[d][idx - nb], d - 1)
    return frozenset(out)


def bss_pages(dmax=12, rmax=4):
    """Pages E^1 .. E^{rmax+1} of the Bockstein spectral sequence of H_*(Mj_1) to degree dmax.

    Degree dmax + 1 is carried internally so that differentials into degree
    dmax are seen.
    """
    M = _mj1()
    top = dmax + 1
    space = _Space(M.basis)
    state = _d1_page(space, top)
    pages = [_as_page(state, 1, dmax)]
    summands = _summands(state, 1, dmax)
    undetermined = []
    prev = state
    for r in range(2, rmax + 2):
        state = _page_from_differential(prev, prev.dvals)
        if r <= rmax:
            undetermined += _compute_dr(state, r, prev)
            pages.append(_as_page(state, r, dmax))
            summands += _summands(state, r, dmax)
        else:
            for d in range(top + 1):
                state.reps[d] = state.quotient_basis(d)
            pages.append(_as_page(state, r, dmax))
        prev = state
    last = pages[-1]
    torsion_free = {d: last.dim(d) for d in range(dmax + 1)}
    for p in pages:
        p.undetermined = [u for u in undetermined if u[0] == p.r]
    return BSSResult(pages, summands, torsion_free, dmax, undetermined)


def _as_page(state, r, dmax):
    page = BocksteinPage(r, {d: len(state.reps[d]) for d in range(dmax + 1)})
    for d in range(dmax + 1):
        page.classes[d] = [fp.poly_str(state.space.poly(v, d)) for v in state.reps[d]]
        if state.dvals.get(d) is not None:
            page.differential[d] = [fp.poly_str(state.space.poly(v, d - 1)) if d else "0"
                                    for v in state.dvals[d]]
    return page


def _summands(state, r, dmax):
    """A Z/2^r summand in degree d for each independent d_r hit from degree d + 1."""
    out = []
    for d in range(dmax + 1):
        vals = state.dvals.get(d + 1, [])
        n = state.space.dim(d)
        if not vals or not n:
            continue
        rows = list(state.B[d])
        base = _rank(rows, n)
        rk = _rank(rows + [v for v in vals], n) - base
        out += [(d, r)] * rk
    return out


def e2_product_check(dmax=12):
    """dim E^2_d against sum_{a+b=d} dim H(A_* box_{A(0)} F2)_a dim H(H_*(Mj_1)/I_1)_b."""
    e2 = beta1_homology(dmax)
    w = beta1_cotensor_homology(dmax)
    q = beta1_homology(dmax, quotient=True)
    predicted = fp.series_mul(w, q, dmax)
    return e2, predicted, w, q
