"""Text grammar for elements and tensors.

    expr    := tterm ('+' tterm)*
    tterm   := product ('|' product)*
    product := power ('*' power)*
    power   := atom ('^' INT)?
    atom    := '0' | '1' | 'z'INT | 'xi'INT | 'x[' INT ']' | 'a[' INT ',' INT ']'
             | 'Q[' INT (',' INT)* '](' expr ')' | 'X[' NAME ',' INT ']' | 'N[' INT ']'
             | NAME '[' INT ']' | '(' expr ')'

Whitespace is ignored.  A result containing '|' is a tensor, otherwise a
polynomial.  X[r,s] resolves through the preset families.
"""
import re
from itertools import product as _cartesian

from .. import dyerlashof as dl
from .. import f2poly as fp
from .. import steenrod as st


class ExprSyntaxError(SyntaxError):
    def __init__(self, msg, text, offset):
        super().__init__("%s at offset %d" % (msg, offset))
        self.msg = msg
        self.text = text
        self.offset = offset


class _Parser:
    def __init__(self, text, family_resolver=None):
        self.src = text
        # keep a map from stripped positions back to the original text
        self.chars = []
        self.pos_map = []
        for i, ch in enumerate(text):
            if not ch.isspace():
                self.chars.append(ch)
                self.pos_map.append(i)
        self.s = "".join(self.chars)
        self.i = 0
        self.resolve_family = family_resolver

    def error(self, msg):
        off = self.pos_map[self.i] if self.i < len(self.pos_map) else len(self.src)
        raise ExprSyntaxError(msg, self.src, off)

    def peek(self, k=1):
        return self.s[self.i:self.i + k]

    def eat(self, tok):
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok):
        if not self.eat(tok):
            self.error("expected %r" % tok)

    def integer(self):
        m = re.compile(r"\d+").match(self.s, self.i)
        if not m:
            self.error("expected an integer")
        self.i = m.end()
        return int(m.group())

    def name(self):
        m = re.compile(r"[A-Za-z]+").match(self.s, self.i)
        if not m:
            self.error("expected a name")
        self.i = m.end()
        return m.group()

    # grammar

    def parse(self):
        if not self.s:
            self.error("empty expression")
        val = self.expr()
        if self.i != len(self.s):
            self.error("unexpected %r" % self.s[self.i])
        return val

    def expr(self):
        terms = [self.tterm()]
        while self.eat("+"):
            terms.append(self.tterm())
        kinds = {k for k, _ in terms}
        if len(kinds) > 1:
            self.error("cannot add tensors of different lengths")
        kind = kinds.pop()
        if kind == 1:
            return 1, fp.add(*[v for _, v in terms])
        return kind, fp.tadd(*[v for _, v in terms])

    def tterm(self):
        slots = [self.product()]
        while self.eat("|"):
            slots.append(self.product())
        if len(slots) == 1:
            return 1, slots[0]
        out = set()
        for combo in _cartesian(*slots):
            out ^= {combo}
        return len(slots), frozenset(out)

    def product(self):
        acc = self.power()
        while self.eat("*"):
            acc = fp.mul(acc, self.power())
        return acc

    def power(self):
        base = self.atom()
        if self.eat("^"):
            base = fp.power(base, self.integer())
        return base

    def atom(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            kind, val = self.expr()
            if kind != 1:
                self.error("tensors cannot be nested in parentheses")
            self.expect(")")
            return val
        if c.isdigit():
            n = self.integer()
            if n == 0:
                return fp.ZERO
            if n == 1:
                return fp.UNIT
            self.error("only the constants 0 and 1 are allowed")
        if self.eat("Q["):
            seq = [self.integer()]
            while self.eat(","):
                seq.append(self.integer())
            self.expect("]")
            self.expect("(")
            kind, val = self.expr()
            if kind != 1:
                self.error("Q acts on polynomials only")
            self.expect(")")
            return dl.qword_eval(seq, val)
        if self.eat("xi"):
            return self._plain(lambda i: st.xi(i), "xi")
        if self.eat("x["):
            n = self.integer()
            self.expect("]")
            return fp.gen_poly(fp.cell(n))
        if self.eat("a["):
            k = self.integer()
            self.expect(",")
            s = self.integer()
            self.expect("]")
            return fp.gen_poly(fp.bo(k, s))
        if self.eat("N["):
            m = self.integer()
            self.expect("]")
            return dl.N(m)
        if self.eat("X["):
            start = self.i
            m = re.compile(r"[0-9]+|[a-z]+").match(self.s, self.i)
            if not m:
                self.error("expected a family index")
            self.i = m.end()
            r = m.group()
            self.expect(",")
            s = self.integer()
            self.expect("]")
            if self.resolve_family is None:
                self.i = start
                self.error("named families need a preset resolver")
            return self.resolve_family(int(r) if r.isdigit() else r, s)
        if c == "z":
            if self.peek(2) == "z[":
                self.i += 2
                s = self.integer()
                self.expect("]")
                return fp.gen_poly(fp.family("z", s))
            self.i += 1
            return self._plain(lambda i: st.z(i), "z")
        m = re.compile(r"[A-Za-z]+\[").match(self.s, self.i)
        if m:
            tag = m.group()[:-1]
            self.i = m.end()
            s = self.integer()
            self.expect("]")
            return fp.gen_poly(fp.family(tag, s))
        self.error("unexpected %r" % c if c else "unexpected end of input")

    def _plain(self, make, label):
        m = re.compile(r"\d+").match(self.s, self.i)
        if not m:
            self.error("expected an index after %r" % label)
        self.i = m.end()
        return make(int(m.group()))


def _default_resolver(r, s):
    from .. import presets
    return presets.X_family(r, s)


def parse(text, family_resolver=_default_resolver):
    """Polynomial or tensor denoted by text."""
    _, val = _Parser(text, family_resolver).parse()
    return val


def parse_poly(text, **kw):
    kind, val = _Parser(text, kw.get("family_resolver", _default_resolver)).parse()
    if kind != 1:
        raise ExprSyntaxError("expected a polynomial, got a tensor", text, 0)
    return val


def parse_tensor(text, slots=2, **kw):
    kind, val = _Parser(text, kw.get("family_resolver", _default_resolver)).parse()
    if kind == 1 and not val:
        return fp.ZERO
    if kind != slots:
        raise ExprSyntaxError("expected a %d-tensor" % slots, text, 0)
    return val


def parse_generator(text):
    """A single generator id from its printed form, e.g. 'x[3]' or 'Q[4](x[3])' or 'z2'."""
    p = parse_poly(text)
    if len(p) != 1:
        raise ExprSyntaxError("not a single generator", text, 0)
    (m,) = p
    if len(m) != 1 or m[0][1] != 1:
        raise ExprSyntaxError("not a single generator", text, 0)
    return m[0][0]


def print_element(v):
    return fp.tensor_str(v) if is_tensor(v) else fp.poly_str(v)


def is_tensor(v):
    """Tensors are sets of tuples of monomials; polynomials are sets of monomials."""
    for term in v:
        if not term:
            return False
        first = term[0]
        # a monomial's entries are (gen, exponent) with gen a tuple and exponent an int
        return not (isinstance(first, tuple) and len(first) == 2 and isinstance(first[1], int)
                    and isinstance(first[0], tuple) and first[0] and isinstance(first[0][0], int))
    return False
