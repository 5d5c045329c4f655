"""Monomials, term orders, and multivariate polynomials over F_p.

Monomials are plain exponent tuples. Polynomials map monomials to nonzero
int residues and carry no term order; orders are separate objects passed
to the operations that need one. The zero polynomial has degree -1.
"""

from __future__ import annotations

import math
import re

from .errors import CapacityError, UsageError
from .ffield import PrimeField

Monomial = tuple

MAX_MONOMIAL_COUNT = 2**63

ORDER_KINDS = ("lex", "grlex", "degrevlex")

_ORDER_TOKENS = {"lex": "lex", "grlex": "grlex", "drl": "degrevlex", "degrevlex": "degrevlex"}


def mono_deg(m):
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_is_one(m):
    return not any(m)


def count_monomials_upto(n, d):
    """Number of monomials in n variables of degree <= d, i.e. C(n+d, n)."""
    if d < 0:
        return 0
    c = math.comb(n + d, n)
    if c >= MAX_MONOMIAL_COUNT:
        raise CapacityError(f"monomial count C({n + d},{n}) exceeds 2^63")
    return c


def monomials_of_degree(n, d):
    """Yield all exponent tuples in n variables of total degree exactly d."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_upto(n, d):
    """Yield all exponent tuples in n variables of total degree <= d."""
    for e in range(d + 1):
        yield from monomials_of_degree(n, e)


class TermOrder:
    """A monomial order: lex, grlex, or degrevlex, with a variable permutation.

    perm lists variable indices from greatest to least; the default is
    identity, i.e. x1 > x2 > ... > xn in the usual convention.
    """

    __slots__ = ("kind", "n", "perm")

    def __init__(self, kind, n, perm=None):
        if kind not in ORDER_KINDS:
            raise UsageError(f"unknown term order kind {kind!r}")
        if perm is None:
            perm = tuple(range(n))
        else:
            perm = tuple(perm)
            if sorted(perm) != list(range(n)):
                raise UsageError(f"perm {perm!r} is not a permutation of 0..{n - 1}")
        self.kind = kind
        self.n = n
        self.perm = perm

    @classmethod
    def lex(cls, n, perm=None):
        return cls("lex", n, perm)

    @classmethod
    def grlex(cls, n, perm=None):
        return cls("grlex", n, perm)

    @classmethod
    def degrevlex(cls, n, perm=None):
        return cls("degrevlex", n, perm)

    @property
    def degree_compatible(self):
        """True when deg m < deg m' implies m < m' (grlex and degrevlex)."""
        return self.kind != "lex"

    def key(self, m):
        """Sort key: bigger monomial, bigger key."""
        if self.kind == "lex":
            return tuple(m[i] for i in self.perm)
        if self.kind == "grlex":
            return (sum(m),) + tuple(m[i] for i in self.perm)
        # degrevlex: among equal degrees the last nonzero difference on the
        # reversed variable list decides, with smaller exponent winning
        return (sum(m),) + tuple(-m[i] for i in reversed(self.perm))

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def sort_desc(self, monos):
        return sorted(monos, key=self.key, reverse=True)

    def token(self, names=None):
        """CLI token for this order, e.g. 'drl' or 'lex:x3>x1>x2'."""
        kind = {"degrevlex": "drl", "grlex": "grlex", "lex": "lex"}[self.kind]
        if self.perm == tuple(range(self.n)):
            return kind
        if names is None:
            names = [f"v{i}" for i in range(self.n)]
        return kind + ":" + ">".join(names[i] for i in self.perm)

    @classmethod
    def parse_token(cls, token, names):
        """Parse 'drl', 'grlex', 'lex', optionally with ':xa>xb>...' suffix."""
        head, sep, tail = token.partition(":")
        kind = _ORDER_TOKENS.get(head.strip())
        if kind is None:
            raise UsageError(f"unknown order token {head!r} (expected drl, grlex, or lex)")
        n = len(names)
        if not sep:
            return cls(kind, n)
        parts = [s.strip() for s in tail.split(">")]
        index = {name: i for i, name in enumerate(names)}
        try:
            perm = tuple(index[s] for s in parts)
        except KeyError as e:
            raise UsageError(f"order permutation names unknown variable {e.args[0]!r}") from None
        if len(perm) != n or len(set(perm)) != n:
            raise UsageError(f"order permutation must list each of {names} exactly once")
        return cls(kind, n, perm)

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and other.kind == self.kind
            and other.n == self.n
            and other.perm == self.perm
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.perm))

    def __repr__(self):
        return f"TermOrder({self.kind!r}, n={self.n}, perm={self.perm})"


class Polynomial:
    """A polynomial over F_p in n variables, stored monomial -> residue.

    Coefficients are ints in [1, p); zero coefficients are never stored.
    """

    __slots__ = ("coeffs", "n", "p")

    def __init__(self, coeffs, n, p, _normalized=False):
        if _normalized:
            self.coeffs = coeffs
        else:
            clean = {}
            for m, c in coeffs.items():
                c %= p
                if c:
                    clean[m] = c
            self.coeffs = clean
        self.n = n
        self.p = p

    @classmethod
    def zero(cls, n, p):
        return cls({}, n, p, _normalized=True)

    @classmethod
    def constant(cls, c, n, p):
        return cls({(0,) * n: c}, n, p)

    @classmethod
    def variable(cls, i, n, p):
        m = [0] * n
        m[i] = 1
        return cls({tuple(m): 1}, n, p)

    @classmethod
    def monomial(cls, m, n, p, c=1):
        return cls({tuple(m): c}, n, p)

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def _check(self, other):
        if other.n != self.n or other.p != self.p:
            raise UsageError("polynomials from different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        p = self.p
        for m, c in other.coeffs.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return Polynomial(out, self.n, p, _normalized=True)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        p = self.p
        for m, c in other.coeffs.items():
            v = (out.get(m, 0) - c) % p
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return Polynomial(out, self.n, p, _normalized=True)

    def __neg__(self):
        p = self.p
        return Polynomial({m: p - c for m, c in self.coeffs.items()}, self.n, p, _normalized=True)

    def scale(self, c):
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.n, self.p)
        p = self.p
        return Polynomial({m: (v * c) % p for m, v in self.coeffs.items()}, self.n, p)

    def mul_mono(self, u, c=1):
        """Multiply by the monomial u and the scalar c."""
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.n, self.p)
        p = self.p
        out = {mono_mul(m, u): (v * c) % p for m, v in self.coeffs.items()}
        return Polynomial(out, self.n, p)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = mono_mul(m1, m2)
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return Polynomial(out, self.n, p, _normalized=True)

    __rmul__ = __mul__

    def leading_monomial(self, order):
        if not self.coeffs:
            raise UsageError("zero polynomial has no leading monomial")
        return max(self.coeffs, key=order.key)

    def leading_coeff(self, order):
        return self.coeffs[self.leading_monomial(order)]

    def monic(self, order):
        lc = self.leading_coeff(order)
        if lc == 1:
            return self
        return self.scale(pow(lc, -1, self.p))

    def terms_desc(self, order):
        """(monomial, coeff) pairs in decreasing order."""
        for m in sorted(self.coeffs, key=order.key, reverse=True):
            yield m, self.coeffs[m]

    def top_component(self):
        """The homogeneous part of highest degree. Rejects the zero polynomial."""
        if not self.coeffs:
            raise UsageError("zero polynomial has no top component")
        d = self.degree
        out = {m: c for m, c in self.coeffs.items() if sum(m) == d}
        return Polynomial(out, self.n, self.p, _normalized=True)

    def homogenize(self):
        """Homogenize with a fresh variable appended at index n."""
        if not self.coeffs:
            raise UsageError("cannot homogenize the zero polynomial")
        d = self.degree
        out = {m + (d - sum(m),): c for m, c in self.coeffs.items()}
        return Polynomial(out, self.n + 1, self.p, _normalized=True)

    def dehomogenize(self):
        """Set the last variable to 1, dropping it from the ring."""
        out = {}
        p = self.p
        for m, c in self.coeffs.items():
            key = m[:-1]
            v = (out.get(key, 0) + c) % p
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return Polynomial(out, self.n - 1, p, _normalized=True)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.coeffs}
        return len(degs) <= 1

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.n == self.n
            and other.p == self.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.p, frozenset(self.coeffs.items())))

    def __repr__(self):
        names = [f"x{i + 1}" for i in range(self.n)]
        return f"Polynomial({format_poly(self, names)!r}, p={self.p})"


_DEFAULT_FMT_ORDER = {}


def _fmt_order(n):
    if n not in _DEFAULT_FMT_ORDER:
        _DEFAULT_FMT_ORDER[n] = TermOrder.degrevlex(n)
    return _DEFAULT_FMT_ORDER[n]


def format_mono(m, names):
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts)


def format_poly(f, names, order=None):
    """Render f in the text grammar; terms in decreasing order for stability.

    Residues above p/2 print as subtracted terms so small negative
    coefficients stay readable; the parser undoes this exactly.
    """
    if f.is_zero():
        return "0"
    if order is None:
        order = _fmt_order(f.n)
    p = f.p
    pieces = []
    for m, c in f.terms_desc(order):
        neg = c > p // 2 and p > 2
        mag = p - c if neg else c
        if mono_is_one(m):
            body = str(mag)
        elif mag == 1:
            body = format_mono(m, names)
        else:
            body = f"{mag}*{format_mono(m, names)}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))"
)


def parse_poly(text, names, p):
    """Parse the polynomial grammar: terms of coeff, coeff*mono, or mono.

    term  ::= coeff | coeff '*' mono | mono
    mono  ::= var ('^' int)? ('*' var ('^' int)?)*
    poly  ::= ('-')? term (('+'|'-') term)*
    """
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise UsageError(f"bad character {text[pos:].lstrip()[0]!r} in polynomial at column {pos + 1}")
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()
    if not tokens:
        raise UsageError("empty polynomial text")

    coeffs = {}
    i = 0
    first = True

    def fail(msg, at):
        raise UsageError(f"{msg} at column {at + 1}: {text!r}")

    while i < len(tokens):
        sign = 1
        kind, val, at = tokens[i]
        if kind == "op" and val in "+-":
            if first and val == "+":
                fail("unexpected leading '+'", at)
            sign = -1 if val == "-" else 1
            i += 1
            if i >= len(tokens):
                fail("dangling sign", at)
            kind, val, at = tokens[i]
        elif not first:
            fail("expected '+' or '-' between terms", at)
        first = False

        coeff = 1
        mono = [0] * n
        saw_var = False
        if kind == "num":
            coeff = int(val)
            i += 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                kind, val, at = tokens[i] if i < len(tokens) else (None, None, at)
                if kind != "name":
                    fail("expected a variable after '*'", at)
            else:
                coeffs_add(coeffs, tuple(mono), sign * coeff, p)
                continue
        while True:
            kind, val, at = tokens[i] if i < len(tokens) else (None, None, len(text))
            if kind != "name":
                if saw_var:
                    break
                fail("expected a variable or coefficient", at)
            if val not in index:
                fail(f"unknown variable {val!r}", at)
            e = 1
            i += 1
            if i + 1 < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                if tokens[i + 1][0] != "num":
                    fail("expected an integer exponent after '^'", tokens[i][2])
                e = int(tokens[i + 1][1])
                i += 2
            mono[index[val]] += e
            saw_var = True
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                if i + 1 < len(tokens) and tokens[i + 1][0] == "name":
                    i += 1
                    continue
                fail("expected a variable after '*'", tokens[i][2])
            break
        coeffs_add(coeffs, tuple(mono), sign * coeff, p)

    return Polynomial(coeffs, n, p)


def coeffs_add(coeffs, m, c, p):
    v = (coeffs.get(m, 0) + c) % p
    if v:
        coeffs[m] = v
    elif m in coeffs:
        del coeffs[m]


class PolySystem:
    """An ordered list of nonzero generators over a shared ring."""

    __slots__ = ("gens", "field", "names")

    def __init__(self, gens, field, names):
        names = list(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise UsageError(f"bad variable name {name!r}")
        gens = list(gens)
        if not gens:
            raise UsageError("a system needs at least one generator")
        for f in gens:
            if f.is_zero():
                raise UsageError("zero generators are not allowed")
            if f.n != len(names) or f.p != field.p:
                raise UsageError("generator ring does not match the system")
        self.gens = gens
        self.field = field
        self.names = names

    @property
    def n(self):
        return len(self.names)

    @property
    def p(self):
        return self.field.p

    def max_degree(self):
        return max(f.degree for f in self.gens)

    def default_order(self):
        return TermOrder.degrevlex(self.n)

    def with_field_equations(self):
        """Append x_i^p - x_i for every variable."""
        p = self.p
        extra = []
        for i in range(self.n):
            m = [0] * self.n
            m[i] = p
            mono_p = tuple(m)
            m[i] = 1
            extra.append(Polynomial({mono_p: 1, tuple(m): p - 1}, self.n, p, _normalized=True))
        return PolySystem(self.gens + extra, self.field, self.names)

    def top_system(self):
        """The system of top components, same ring."""
        return PolySystem([f.top_component() for f in self.gens], self.field, self.names)

    def homogenized(self, homvar="x0"):
        """Homogenize every generator with a fresh variable appended last."""
        if homvar in self.names:
            raise UsageError(
                f"homogenizing variable {homvar!r} collides with a system variable; pick another name"
            )
        gens = [f.homogenize() for f in self.gens]
        return PolySystem(gens, self.field, self.names + [homvar])

    def format_gens(self, order=None):
        return [format_poly(f, self.names, order) for f in self.gens]

    def __repr__(self):
        return f"PolySystem(p={self.p}, vars={self.names}, gens={self.format_gens()})"
