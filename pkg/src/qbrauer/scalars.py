"""
Exact coefficient arithmetic in the localization Z[q^{±1}, r^{±1}, (q-1)^{-1}, (r-1)^{-1}].

A scalar is a fraction

    num / (q^a * r^c * (q-1)^u * (r-1)^v)

where ``num`` is a polynomial in Z[q, r] and the denominator is a monomial in
the four prime elements q, r, q-1, r-1 of Z[q, r].  Scalars are kept in
canonical form: whenever a denominator exponent is positive, ``num`` is not
divisible by the corresponding prime.  Since the four primes are pairwise
non-associated irreducibles of the UFD Z[q, r], the canonical form is unique
and equality of ring elements is structural equality.

No floating point is used anywhere; specialization targets are exact fields
(``fractions.Fraction`` or the prime fields provided here).

>>> b_scalar() * (q_scalar() - one()) == r_scalar() - one()
True
>>> brauer_limit(b_scalar(), 3)
Fraction(3, 1)
"""

from __future__ import annotations

from fractions import Fraction


class NotAUnit(ArithmeticError):
    """Raised when inverting a scalar that is not a unit of the localization."""


class PoleAtSpecialization(ArithmeticError):
    """Raised when a denominator factor vanishes at the specialization point."""


# ---------------------------------------------------------------------------
# polynomials in Z[q, r], sparse: {(deg_q, deg_r): coefficient}
# ---------------------------------------------------------------------------

class IntPoly:
    """Sparse polynomial in Z[q, r] with arbitrary-precision coefficients.

    Invariant: no stored coefficient is zero; the zero polynomial is the
    empty map.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c: int, eq: int, er: int) -> "IntPoly":
        return cls({(eq, er): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "IntPoly") -> "IntPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out: dict = {}
        for (e1, f1), c1 in self.terms.items():
            for (e2, f2), c2 in other.terms.items():
                m = (e1 + e2, f1 + f2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return IntPoly(out)

    def scale(self, c: int) -> "IntPoly":
        if c == 0:
            return IntPoly()
        return IntPoly({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def divide_q(self):
        """Exact division by q, or None."""
        if any(eq == 0 for eq, _ in self.terms):
            return None
        return IntPoly({(eq - 1, er): c for (eq, er), c in self.terms.items()})

    def divide_r(self):
        if any(er == 0 for _, er in self.terms):
            return None
        return IntPoly({(eq, er - 1): c for (eq, er), c in self.terms.items()})

    def divide_qm1(self):
        """Exact division by (q - 1), or None.

        Viewing the polynomial in q with coefficients in Z[r], synthetic
        division gives quotient coefficients as suffix sums; the remainder is
        the value at q = 1, which must vanish for exactness.
        """
        by_r: dict = {}
        for (eq, er), c in self.terms.items():
            by_r.setdefault(er, {})[eq] = c
        out: dict = {}
        for er, col in by_r.items():
            if sum(col.values()) != 0:
                return None
            acc = 0
            for eq in range(max(col), 0, -1):
                acc += col.get(eq, 0)
                if acc:
                    out[(eq - 1, er)] = acc
        return IntPoly(out)

    def divide_rm1(self):
        by_q: dict = {}
        for (eq, er), c in self.terms.items():
            by_q.setdefault(eq, {})[er] = c
        out: dict = {}
        for eq, col in by_q.items():
            if sum(col.values()) != 0:
                return None
            acc = 0
            for er in range(max(col), 0, -1):
                acc += col.get(er, 0)
                if acc:
                    out[(eq, er - 1)] = acc
        return IntPoly(out)

    def subs_r_power(self, N: int) -> dict:
        """Substitute r := q^N; returns a Laurent polynomial {deg_q: coeff}."""
        out: dict = {}
        for (eq, er), c in self.terms.items():
            d = eq + N * er
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            else:
                del out[d]
        return out

    def evaluate(self, q0, r0):
        """Evaluate at field elements q0, r0 (exact field arithmetic)."""
        acc = 0 * q0
        for (eq, er), c in self.terms.items():
            acc = acc + c * q0 ** eq * r0 ** er
        return acc

    def __repr__(self) -> str:
        return f"IntPoly({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (eq, er) in sorted(self.terms, reverse=True):
            c = self.terms[(eq, er)]
            factors = []
            if eq:
                factors.append("q" if eq == 1 else f"q^{eq}")
            if er:
                factors.append("r" if er == 1 else f"r^{er}")
            body = "*".join(factors)
            if not body:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{body}")
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c:+d}*{body}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


_P_ZERO = IntPoly()
_P_ONE = IntPoly.const(1)
_DIVIDERS = {
    "q": IntPoly.divide_q,
    "r": IntPoly.divide_r,
    "qm1": IntPoly.divide_qm1,
    "rm1": IntPoly.divide_rm1,
}


# ---------------------------------------------------------------------------
# scalars: canonical fractions num / q^a r^c (q-1)^u (r-1)^v
# ---------------------------------------------------------------------------

class Scalar:
    """Element of Z[q^{±1}, r^{±1}, (q-1)^{-1}, (r-1)^{-1}] in canonical form."""

    __slots__ = ("num", "den_q", "den_r", "den_qm1", "den_rm1", "_hash")

    def __init__(self, num: IntPoly, den_q=0, den_r=0, den_qm1=0, den_rm1=0):
        if num.is_zero():
            den_q = den_r = den_qm1 = den_rm1 = 0
        else:
            while den_q > 0:
                d = num.divide_q()
                if d is None:
                    break
                num, den_q = d, den_q - 1
            while den_r > 0:
                d = num.divide_r()
                if d is None:
                    break
                num, den_r = d, den_r - 1
            while den_qm1 > 0:
                d = num.divide_qm1()
                if d is None:
                    break
                num, den_qm1 = d, den_qm1 - 1
            while den_rm1 > 0:
                d = num.divide_rm1()
                if d is None:
                    break
                num, den_rm1 = d, den_rm1 - 1
        self.num = num
        self.den_q = den_q
        self.den_r = den_r
        self.den_qm1 = den_qm1
        self.den_rm1 = den_rm1
        self._hash = None

    def _den(self) -> tuple:
        return (self.den_q, self.den_r, self.den_qm1, self.den_rm1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self._den() == (0, 0, 0, 0) and self.num == _P_ONE

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Scalar)
            and self._den() == other._den()
            and self.num == other.num
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self._den()))
        return self._hash

    def __add__(self, other: "Scalar") -> "Scalar":
        # least common denominator monomial: pointwise max of exponents
        a = max(self.den_q, other.den_q)
        c = max(self.den_r, other.den_r)
        u = max(self.den_qm1, other.den_qm1)
        v = max(self.den_rm1, other.den_rm1)
        ln = _lift(self, a, c, u, v)
        rn = _lift(other, a, c, u, v)
        return Scalar(ln + rn, a, c, u, v)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, *self._den())

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(
            self.num * other.num,
            self.den_q + other.den_q,
            self.den_r + other.den_r,
            self.den_qm1 + other.den_qm1,
            self.den_rm1 + other.den_rm1,
        )

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def inv(self) -> "Scalar":
        """Inverse; the numerator must be, up to sign, a monomial in the
        four primes q, r, q-1, r-1.
        """
        if self.is_zero():
            raise NotAUnit("zero is not invertible")
        num = self.num
        exps = {"q": 0, "r": 0, "qm1": 0, "rm1": 0}
        for name, divider in _DIVIDERS.items():
            while True:
                d = divider(num)
                if d is None:
                    break
                num, exps[name] = d, exps[name] + 1
        if num.terms not in ({(0, 0): 1}, {(0, 0): -1}):
            raise NotAUnit(f"numerator {self.num} has a non-monomial factor")
        sign = num.terms[(0, 0)]
        new_num = IntPoly.monomial(sign, self.den_q, self.den_r)
        qm1 = IntPoly({(1, 0): 1, (0, 0): -1})
        rm1 = IntPoly({(0, 1): 1, (0, 0): -1})
        for _ in range(self.den_qm1):
            new_num = new_num * qm1
        for _ in range(self.den_rm1):
            new_num = new_num * rm1
        return Scalar(new_num, exps["q"], exps["r"], exps["qm1"], exps["rm1"])

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        den = []
        for e, sym in zip(self._den(), ("q", "r", "(q-1)", "(r-1)")):
            if e == 1:
                den.append(sym)
            elif e > 1:
                den.append(f"{sym}^{e}")
        num = str(self.num)
        if not den:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num} / {'*'.join(den)}"


def _lift(s: Scalar, a: int, c: int, u: int, v: int) -> IntPoly:
    """Numerator of ``s`` over the denominator q^a r^c (q-1)^u (r-1)^v."""
    num = s.num
    da, dc = a - s.den_q, c - s.den_r
    if da or dc:
        num = num * IntPoly.monomial(1, da, dc)
    qm1 = IntPoly({(1, 0): 1, (0, 0): -1})
    rm1 = IntPoly({(0, 1): 1, (0, 0): -1})
    for _ in range(u - s.den_qm1):
        num = num * qm1
    for _ in range(v - s.den_rm1):
        num = num * rm1
    return num


ZERO = Scalar(_P_ZERO)
ONE = Scalar(_P_ONE)


def from_int(c: int) -> Scalar:
    return Scalar(IntPoly.const(c))


def q_scalar() -> Scalar:
    return Scalar(IntPoly.monomial(1, 1, 0))


def r_scalar() -> Scalar:
    return Scalar(IntPoly.monomial(1, 0, 1))


def one() -> Scalar:
    return ONE


def qm1_scalar() -> Scalar:
    return Scalar(IntPoly({(1, 0): 1, (0, 0): -1}))


def rm1_scalar() -> Scalar:
    return Scalar(IntPoly({(0, 1): 1, (0, 0): -1}))


def b_scalar() -> Scalar:
    """The scalar (r-1)/(q-1)."""
    return Scalar(IntPoly({(0, 1): 1, (0, 0): -1}), den_qm1=1)


def quantum_integer(m: int) -> Scalar:
    """1 + q + ... + q^{m-1}; zero for m = 0."""
    if m < 0:
        raise ValueError("quantum_integer needs m >= 0")
    return Scalar(IntPoly({(i, 0): 1 for i in range(m)}))


def r_power(N: int) -> Scalar:
    """q^N as a scalar (used when r is specialized to q^N symbolically)."""
    if N >= 0:
        return Scalar(IntPoly.monomial(1, N, 0))
    return Scalar(_P_ONE, den_q=-N)


# ---------------------------------------------------------------------------
# specialization to a field and the classical q -> 1 limit
# ---------------------------------------------------------------------------

def specialize(s: Scalar, q0, r0):
    """Evaluate ``s`` at field elements q0, r0.

    Raises PoleAtSpecialization when a denominator factor vanishes there.
    """
    zero = 0 * q0
    if q0 == zero or r0 == zero:
        raise PoleAtSpecialization("q and r must be nonzero")
    den = q0 ** 0
    if s.den_q:
        den = den * q0 ** s.den_q
    if s.den_r:
        den = den * r0 ** s.den_r
    if s.den_qm1:
        f = q0 - 1 * q0 ** 0
        if f == zero:
            raise PoleAtSpecialization("(q-1) vanishes at the specialization")
        den = den * f ** s.den_qm1
    if s.den_rm1:
        f = r0 - 1 * r0 ** 0
        if f == zero:
            raise PoleAtSpecialization("(r-1) vanishes at the specialization")
        den = den * f ** s.den_rm1
    return s.num.evaluate(q0, r0) / den


def brauer_limit(s: Scalar, N: int) -> Fraction:
    """Exact value at q = 1 after the substitution r := q^N.

    The substituted element is a univariate rational function in q whose
    denominator is q^a (q-1)^u (q^N-1)^v; all (q-1) factors must cancel into
    the numerator, otherwise the limit does not exist in the ring.
    """
    if N == 0:
        raise ValueError("N must be a nonzero integer")
    laurent = s.num.subs_r_power(N)
    if not laurent:
        return Fraction(0)
    # denominator: q^{den_q + N den_r} (q-1)^{den_qm1} (q^N - 1)^{den_rm1};
    # for N < 0, q^N - 1 = -q^N (q^{|N|} - 1), and q-powers are 1 at q = 1.
    u = s.den_qm1 + s.den_rm1
    sign = -1 if (N < 0 and s.den_rm1 % 2) else 1
    shift = min(laurent)
    coeffs = [0] * (max(laurent) - shift + 1)
    for d, c in laurent.items():
        coeffs[d - shift] = c
    for _ in range(u):
        if sum(coeffs) != 0:
            raise PoleAtSpecialization("a (q-1) factor does not cancel at q=1")
        acc = 0
        quot = [0] * (len(coeffs) - 1)
        for i in range(len(coeffs) - 1, 0, -1):
            acc += coeffs[i]
            quot[i - 1] = acc
        coeffs = quot if quot else [0]
    return Fraction(sum(coeffs), sign * abs(N) ** s.den_rm1)


# ---------------------------------------------------------------------------
# computable fields: exact rationals are fractions.Fraction; prime fields here
# ---------------------------------------------------------------------------

class GFElem:
    """Element of a prime field F_p."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, GFElem):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElem(self.p, self.v + w)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElem(self.p, self.v - w)

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElem(self.p, w - self.v)

    def __mul__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElem(self.p, self.v * w)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return GFElem(self.p, pow(self.v, k, self.p))

    def inv(self):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return GFElem(self.p, pow(self.v, -1, self.p))

    def __truediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return self * GFElem(self.p, w).inv()

    def __rtruediv__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return GFElem(self.p, w) * self.inv()

    def __eq__(self, other):
        w = self._coerce(other)
        if w is NotImplemented:
            return NotImplemented
        return self.v == w

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"GF({self.p})({self.v})"


class PrimeField:
    """The prime field F_p, callable on integers."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, v: int) -> GFElem:
        return GFElem(self.p, v)

    def elements(self):
        return [GFElem(self.p, v) for v in range(self.p)]

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# JSON wire format (bit-exact round trip; coefficients as decimal strings)
# ---------------------------------------------------------------------------

def scalar_to_json(s: Scalar) -> dict:
    return {
        "num": [[str(c), eq, er] for (eq, er), c in sorted(s.num.terms.items())],
        "den": {"q": s.den_q, "r": s.den_r, "qm1": s.den_qm1, "rm1": s.den_rm1},
    }


def scalar_from_json(obj: dict) -> Scalar:
    num = IntPoly({(int(eq), int(er)): int(c) for c, eq, er in obj["num"]})
    den = obj["den"]
    return Scalar(num, den["q"], den["r"], den["qm1"], den["rm1"])
