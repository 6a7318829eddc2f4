"""Exact arithmetic over prime fields: monomials, term orders, sparse polynomials.

Everything downstream (Groebner engines, Hilbert series, Frobenius
pullbacks) reduces to the operations defined here. Coefficients are
Python ints in [0, p) tied to a PrimeField handle; a monomial is a plain
exponent tuple; a polynomial is an immutable sequence of terms sorted
descending in the ring's monomial order.

Order comparisons are packed into single integers: each monomial gets a
key such that key(a) > key(b) iff a > b in the order, and
key(a*b) = key(a) + key(b) - C for an order-dependent constant C. The
reduction loops in the Groebner engine exploit this to shift whole
polynomials with one integer addition per term instead of re-deriving
tuple comparisons.
"""

from __future__ import annotations

from fractions import Fraction as Rat
from typing import Callable, Iterable, Iterator

from .errors import GhkError, GhkHypothesisError, HomogeneityError, ParseError

__all__ = [
    "Rat",
    "PrimeField",
    "MonomialOrder",
    "PolyRing",
    "Poly",
    "parse_poly",
    "frobenius_power",
    "is_prime",
    "mon_mul",
    "mon_div",
    "mon_divides",
    "mon_lcm",
    "mon_gcd",
    "mon_deg",
    "mon_pow",
]

# Packed-key layout. Exponents are capped well below the field width so
# that total degrees (<= MAX_VARS * EXP_CAP) can never overflow a field.
EXP_BITS = 24
EXP_CAP = 1 << 20
MAX_VARS = 12
_FMAX = (1 << EXP_BITS) - 1


# ---------------------------------------------------------------------------
# prime fields


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p. Elements are plain ints in [0, p).

    Keeping elements primitive (instead of wrapper objects) matters: the
    Groebner inner loops do millions of coefficient operations and a
    wrapper type costs an order of magnitude. The field object owns
    validation, inversion, and exponentiation.
    """

    __slots__ = ("p", "_inv_table")

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise GhkHypothesisError(f"characteristic must be an int, got {p!r}")
        if p < 2 or not is_prime(p):
            raise GhkHypothesisError(f"characteristic must be prime, got {p}")
        self.p = p
        if p <= (1 << 13):
            # inv[a] = -(p // a) * inv[p % a]  (mod p), the classic O(p) fill
            inv = [0] * p
            if p > 1:
                inv[1 % p] = 1 % p
            for a in range(2, p):
                inv[a] = (p - p // a) * inv[p % a] % p
            self._inv_table = inv
        else:
            self._inv_table = None

    def reduce(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.p}")
        if self._inv_table is not None:
            return self._inv_table[a]
        return pow(a, self.p - 2, self.p)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a, k, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# monomials (exponent tuples)


def mon_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mon_div(a: tuple, b: tuple) -> tuple | None:
    """a / b as a monomial, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        d = x - y
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


def mon_divides(b: tuple, a: tuple) -> bool:
    """True when b | a componentwise."""
    for x, y in zip(b, a):
        if x > y:
            return False
    return True


def mon_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mon_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(x if x < y else y for x, y in zip(a, b))


def mon_deg(a: tuple) -> int:
    return sum(a)


def mon_pow(a: tuple, k: int) -> tuple:
    out = tuple(x * k for x in a)
    for x in out:
        if x > EXP_CAP:
            raise GhkError(f"monomial exponent {x} exceeds the supported cap {EXP_CAP}")
    return out


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A named total order on monomials, realized as packed integer keys.

    kind is one of "grevlex" (degree, ties by smallest exponent on the
    last variable of varseq), "lex", or "deglex". varseq is a
    permutation of variable indices listed most-significant first; None
    means the natural sequence. Saturation routines use grevlex orders
    whose varseq ends at a chosen variable.
    """

    __slots__ = ("kind", "varseq")

    KINDS = ("grevlex", "lex", "deglex")

    def __init__(self, kind: str = "grevlex", varseq: tuple | None = None):
        if kind not in self.KINDS:
            raise GhkError(f"unknown monomial order {kind!r}; choose from {self.KINDS}")
        self.kind = kind
        self.varseq = None if varseq is None else tuple(varseq)

    def resolved_varseq(self, nvars: int) -> tuple:
        seq = self.varseq if self.varseq is not None else tuple(range(nvars))
        if sorted(seq) != list(range(nvars)):
            raise GhkError(f"varseq {seq} is not a permutation of range({nvars})")
        return seq

    def key_func(self, nvars: int) -> Callable[[tuple], int]:
        """Packed-key closure for monomials with nvars exponents."""
        seq = self.resolved_varseq(nvars)
        B = EXP_BITS
        if self.kind == "grevlex":
            # fields, most significant first: total degree, then
            # complemented exponents from the last varseq entry down.
            rev = tuple(reversed(seq))

            def key(m, _rev=rev, _B=B, _F=_FMAX):
                k = sum(m)
                for i in _rev:
                    k = (k << _B) | (_F - m[i])
                return k

            return key
        if self.kind == "lex":

            def key(m, _seq=seq, _B=B):
                k = 0
                for i in _seq:
                    k = (k << _B) | m[i]
                return k

            return key

        def key(m, _seq=seq, _B=B):  # deglex
            k = sum(m)
            for i in _seq:
                k = (k << _B) | m[i]
            return k

        return key

    def shift_const(self, nvars: int) -> int:
        """C with key(a*b) = key(a) + key(b) - C."""
        if self.kind == "grevlex":
            return (1 << (EXP_BITS * nvars)) - 1
        return 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and other.kind == self.kind
            and other.varseq == self.varseq
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.varseq))

    def __repr__(self) -> str:
        if self.varseq is None:
            return f"MonomialOrder({self.kind!r})"
        return f"MonomialOrder({self.kind!r}, varseq={self.varseq})"


# ---------------------------------------------------------------------------
# polynomial rings and polynomials


class PolyRing:
    """F_p[variables] with a fixed monomial order.

    Rings compare by value (characteristic, variable names, order), so
    independently constructed copies of the same ring interoperate.
    """

    __slots__ = ("field", "p", "variables", "nvars", "order", "key", "shiftc", "_vindex")

    def __init__(self, field: PrimeField | int, variables: Iterable[str], order: MonomialOrder | None = None):
        if isinstance(field, int):
            field = PrimeField(field)
        if not isinstance(field, PrimeField):
            raise GhkError(f"field must be a PrimeField or a prime int, got {field!r}")
        names = tuple(variables)
        if not names:
            raise GhkError("a polynomial ring needs at least one variable")
        if len(names) > MAX_VARS:
            raise GhkError(f"at most {MAX_VARS} variables are supported, got {len(names)}")
        for v in names:
            if not (isinstance(v, str) and v.isidentifier()):
                raise GhkError(f"variable name {v!r} is not an identifier")
        if len(set(names)) != len(names):
            raise GhkError(f"duplicate variable names in {names}")
        self.field = field
        self.p = field.p
        self.variables = names
        self.nvars = len(names)
        self.order = order if order is not None else MonomialOrder("grevlex")
        self.key = self.order.key_func(self.nvars)
        self.shiftc = self.order.shift_const(self.nvars)
        self._vindex = {v: i for i, v in enumerate(names)}

    # -- builders ----------------------------------------------------

    @property
    def zero(self) -> "Poly":
        return Poly(self, ())

    @property
    def one(self) -> "Poly":
        return self.monomial((0,) * self.nvars)

    def variable(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self._vindex[i]
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.monomial(mon)

    def gens(self) -> tuple:
        return tuple(self.variable(i) for i in range(self.nvars))

    def monomial(self, mon: tuple, coeff: int = 1) -> "Poly":
        mon = tuple(int(e) for e in mon)
        if len(mon) != self.nvars:
            raise GhkError(f"monomial {mon} has {len(mon)} exponents, ring has {self.nvars} variables")
        for e in mon:
            if e < 0 or e > EXP_CAP:
                raise GhkError(f"exponent {e} out of range [0, {EXP_CAP}]")
        c = coeff % self.p
        if c == 0:
            return Poly(self, ())
        return Poly(self, ((self.key(mon), mon, c),))

    def from_pairs(self, pairs: Iterable[tuple]) -> "Poly":
        """Build from (monomial, coeff) pairs; repeats combine, zeros drop."""
        acc: dict = {}
        for mon, c in pairs:
            mon = tuple(int(e) for e in mon)
            if len(mon) != self.nvars:
                raise GhkError(f"monomial {mon} does not fit a {self.nvars}-variable ring")
            for e in mon:
                if e < 0 or e > EXP_CAP:
                    raise GhkError(f"exponent {e} out of range [0, {EXP_CAP}]")
            acc[mon] = acc.get(mon, 0) + int(c)
        terms = []
        for mon, c in acc.items():
            c %= self.p
            if c:
                terms.append((self.key(mon), mon, c))
        terms.sort(reverse=True)
        return Poly(self, tuple(terms))

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        """Same field and variables, different monomial order."""
        return PolyRing(self.field, self.variables, order)

    def convert(self, f: "Poly") -> "Poly":
        """Re-sort a polynomial from an equal-up-to-order ring into this one."""
        if f.ring is self:
            return f
        if (f.ring.p, f.ring.variables) != (self.p, self.variables):
            raise GhkError("cannot convert between rings with different fields or variables")
        terms = sorted(((self.key(m), m, c) for _, m, c in f._t), reverse=True)
        return Poly(self, tuple(terms))

    # -- value semantics ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and other.p == self.p
            and other.variables == self.variables
            and other.order == self.order
        )

    def __hash__(self) -> int:
        return hash((self.p, self.variables, self.order))

    def __repr__(self) -> str:
        return f"PolyRing(F_{self.p}, {list(self.variables)}, {self.order!r})"


def _same_ring(a: "Poly", b: "Poly") -> None:
    if a.ring is not b.ring and a.ring != b.ring:
        raise GhkError("polynomials live in different rings")


class Poly:
    """Immutable sparse polynomial over a PolyRing.

    Internal term format: a tuple of (key, monomial, coeff) triples
    sorted by key descending, coeff in [1, p). Term tuples are the
    exchange format with the Groebner engine; user code should stick to
    the public methods.
    """

    __slots__ = ("ring", "_t")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self._t = terms

    # -- structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self) -> int:
        return len(self._t)

    def terms(self) -> Iterator[tuple]:
        """Yield (monomial, coeff) pairs, leading term first."""
        for _, m, c in self._t:
            yield m, c

    def coeff(self, mon: tuple) -> int:
        k = self.ring.key(tuple(mon))
        for kk, _, c in self._t:
            if kk == k:
                return c
            if kk < k:
                break
        return 0

    def lt(self) -> tuple:
        """(monomial, coeff) of the leading term."""
        if not self._t:
            raise GhkError("zero polynomial has no leading term")
        _, m, c = self._t[0]
        return m, c

    def lm(self) -> tuple:
        return self.lt()[0]

    def lc(self) -> int:
        return self.lt()[1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return max(sum(m) for _, m, c in self._t)

    def is_homogeneous(self) -> bool:
        if not self._t:
            return True
        degs = {sum(m) for _, m, c in self._t}
        return len(degs) == 1

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous polynomial; raises otherwise."""
        if not self._t:
            raise GhkError("zero polynomial has no well-defined homogeneous degree")
        degs = {sum(m) for _, m, c in self._t}
        if len(degs) != 1:
            raise HomogeneityError(f"polynomial {self} is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.monomial((0,) * self.ring.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        _same_ring(self, other)
        p = self.ring.p
        A, B = self._t, other._t
        i = j = 0
        na, nb = len(A), len(B)
        out = []
        while i < na and j < nb:
            ka = A[i][0]
            kb = B[j][0]
            if ka > kb:
                out.append(A[i])
                i += 1
            elif ka < kb:
                out.append(B[j])
                j += 1
            else:
                c = (A[i][2] + B[j][2]) % p
                if c:
                    out.append((ka, A[i][1], c))
                i += 1
                j += 1
        out.extend(A[i:])
        out.extend(B[j:])
        return Poly(self.ring, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, tuple((k, m, p - c) for k, m, c in self._t))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.monomial((0,) * self.ring.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        c %= self.ring.p
        if c == 0:
            return Poly(self.ring, ())
        if c == 1:
            return self
        p = self.ring.p
        return Poly(self.ring, tuple((k, m, cc * c % p) for k, m, cc in self._t))

    def mul_monomial(self, mon: tuple, coeff: int = 1) -> "Poly":
        """self * coeff * x^mon, one key shift per term."""
        ring = self.ring
        c = coeff % ring.p
        if c == 0:
            return Poly(ring, ())
        delta = ring.key(mon) - ring.shiftc
        p = ring.p
        if c == 1:
            terms = tuple((k + delta, mon_mul(m, mon), cc) for k, m, cc in self._t)
        else:
            terms = tuple((k + delta, mon_mul(m, mon), cc * c % p) for k, m, cc in self._t)
        return Poly(ring, terms)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        _same_ring(self, other)
        ring = self.ring
        A, B = self._t, other._t
        if not A or not B:
            return Poly(ring, ())
        if len(A) == 1:
            k, m, c = A[0]
            return other.mul_monomial(m, c)
        if len(B) == 1:
            k, m, c = B[0]
            return self.mul_monomial(m, c)
        C = ring.shiftc
        acc: dict = {}
        mons: dict = {}
        for ka, ma, ca in A:
            for kb, mb, cb in B:
                k = ka + kb - C
                prev = acc.get(k)
                if prev is None:
                    acc[k] = ca * cb
                    mons[k] = mon_mul(ma, mb)
                else:
                    acc[k] = prev + ca * cb
        p = ring.p
        out = []
        for k in sorted(acc, reverse=True):
            c = acc[k] % p
            if c:
                out.append((k, mons[k], c))
        return Poly(ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise GhkError(f"polynomial powers need a nonnegative int exponent, got {k!r}")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            k >>= 1
            if base_needed:
                base = base * base
        return result

    def exact_divide(self, divisor: "Poly") -> "Poly":
        """Quotient self/divisor; raises GhkError when division is not exact."""
        _same_ring(self, divisor)
        if not divisor._t:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        p = ring.p
        dk, dm, dc = divisor._t[0]
        dcinv = ring.field.inv(dc)
        rem = self
        qterms = []
        while rem._t:
            k, m, c = rem._t[0]
            qm = mon_div(m, dm)
            if qm is None:
                raise GhkError(f"{divisor} does not divide {self} exactly")
            qc = c * dcinv % p
            qterms.append((ring.key(qm), qm, qc))
            rem = rem - divisor.mul_monomial(qm, qc)
        return Poly(ring, tuple(qterms))

    def variable_multiplicity(self, i: int) -> int:
        """Largest a with x_i^a dividing self (min exponent of x_i)."""
        if not self._t:
            raise GhkError("the zero polynomial is divisible by every power")
        return min(m[i] for _, m, c in self._t)

    def divide_by_variable_power(self, i: int, a: int) -> "Poly":
        """self / x_i^a; requires x_i^a to divide every term."""
        if a == 0:
            return self
        ring = self.ring
        shift = tuple(a if j == i else 0 for j in range(ring.nvars))
        delta = ring.key(shift) - ring.shiftc
        out = []
        for k, m, c in self._t:
            nm = mon_div(m, shift)
            if nm is None:
                raise GhkError(f"x_{i}^{a} does not divide every term")
            out.append((k - delta, nm, c))
        return Poly(ring, tuple(out))

    def derivative(self, i: int) -> "Poly":
        """Formal partial derivative with respect to variable i."""
        ring = self.ring
        p = ring.p
        n = ring.nvars
        out = []
        for _, m, c in self._t:
            e = m[i]
            nc = c * (e % p) % p
            if nc == 0:
                continue
            nm = tuple(m[j] - 1 if j == i else m[j] for j in range(n))
            out.append((ring.key(nm), nm, nc))
        out.sort(reverse=True)
        return Poly(ring, tuple(out))

    def monic(self) -> "Poly":
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self._t[0][2]))

    # -- value semantics ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if isinstance(other, int):
                return self == self.ring.monomial((0,) * self.ring.nvars, other)
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.ring, self._t))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        names = self.ring.variables
        parts = []
        for _, m, c in self._t:
            factors = []
            for v, e in zip(names, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<Poly {self} over F_{self.ring.p}>"


# ---------------------------------------------------------------------------
# parsing


_TOKEN_OPS = set("+-*^()")


def _tokenize(text: str):
    """Yield (kind, value, pos); kinds are int, name, op, end."""
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", int(text[i:j]), i)
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("name", text[i:j], i)
            i = j
            continue
        if ch in _TOKEN_OPS:
            yield ("op", ch, i)
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    yield ("end", None, n)


class _Parser:
    """Recursive-descent parser for +, -, *, ^ and parentheses.

    Implicit multiplication ("3x") is rejected on purpose: requiring
    explicit '*' keeps error positions meaningful in problem files.
    """

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, ch: str):
        kind, val, pos = self.next()
        if kind != "op" or val != ch:
            raise ParseError(f"expected {ch!r}", self.text, pos)

    def parse(self) -> Poly:
        f = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r} after expression", self.text, pos)
        return f

    def expr(self) -> Poly:
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        f = self.term()
        if negate:
            f = -f
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                g = self.term()
                f = f - g if val == "-" else f + g
            else:
                return f

    def term(self) -> Poly:
        f = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                f = f * self.factor()
            elif kind in ("int", "name"):
                raise ParseError(
                    "implicit multiplication is not allowed; insert '*'", self.text, pos
                )
            else:
                return f

    def factor(self) -> Poly:
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, exp, epos = self.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", self.text, epos)
            if exp > EXP_CAP:
                raise ParseError(f"exponent {exp} exceeds the supported cap {EXP_CAP}", self.text, epos)
            result = base ** exp
            kind, val, pos = self.peek()
            if kind == "op" and val == "^":
                raise ParseError("chained '^' needs parentheses", self.text, pos)
            return result
        return base

    def base(self) -> Poly:
        kind, val, pos = self.next()
        if kind == "end":
            raise ParseError("unexpected end of input", self.text, pos)
        if kind == "int":
            return self.ring.monomial((0,) * self.ring.nvars, val)
        if kind == "name":
            idx = self.ring._vindex.get(val)
            if idx is None:
                raise ParseError(
                    f"unknown variable {val!r}; ring variables are {list(self.ring.variables)}",
                    self.text,
                    pos,
                )
            return self.ring.variable(idx)
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect_op(")")
            return f
        if kind == "op" and val == "-":
            return -self.base()
        raise ParseError(f"unexpected {val!r}", self.text, pos)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse integer-coefficient polynomial text into ring.

    Supported syntax: integers, ring variables, '+', '-', '*', '^',
    parentheses. Coefficients reduce mod p. Malformed input raises
    ParseError with the offending position.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, ring).parse()


# ---------------------------------------------------------------------------
# Frobenius


def frobenius_power(f: Poly, q: int) -> Poly:
    """Termwise q-th power x^m -> x^(q*m), coefficients fixed.

    q must be a power of the ring characteristic p. This computes f^q
    exactly because over F_p the q-th power map is additive and fixes
    scalars (c^q = c for every c in F_p), so (sum c*x^m)^q =
    sum c*x^(q*m).
    """
    ring = f.ring
    p = ring.p
    if not isinstance(q, int) or q < 1:
        raise GhkHypothesisError(f"q must be a positive power of p={p}, got {q!r}")
    qq = q
    while qq % p == 0:
        qq //= p
    if qq != 1:
        raise GhkHypothesisError(f"q={q} is not a power of the characteristic p={p}")
    if q == 1 or not f._t:
        return f
    C = ring.shiftc
    terms = tuple((q * k - (q - 1) * C, mon_pow(m, q), c) for k, m, c in f._t)
    return Poly(ring, terms)
