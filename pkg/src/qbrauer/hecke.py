"""
The Iwahori-Hecke algebra of type A_{n-1} over the exact scalar ring.

Free module on {g_w : w in S_n}, with g_j g_w = g_{s_j w} when the length
rises and (q-1) g_w + q g_{s_j w} otherwise (same on the right).  Products
of basis elements are computed by expanding one factor into a reduced word
from its chain factorization and folding single-generator multiplications.
"""

from __future__ import annotations

from . import scalars
from .diagrams import (
    Perm,
    SizeMismatch,
    fixes_prefix,
    identity_perm,
    lmul_s,
    perm_inv,
    reduced_word,
    rmul_s,
)
from .scalars import Scalar


class HeckeElement:
    """Finitely supported map S_n -> Scalar; no zero coefficients stored."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    @classmethod
    def unit(cls, n: int) -> "HeckeElement":
        return cls(n, {identity_perm(n): scalars.ONE})

    @classmethod
    def basis(cls, w: Perm) -> "HeckeElement":
        return cls(len(w), {w: scalars.ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if self.n != other.n:
            raise SizeMismatch("mixed ranks in Hecke sum")
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, scalars.ZERO) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElement(self.n, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-scalars.ONE)

    def scale(self, c: Scalar) -> "HeckeElement":
        if c.is_zero():
            return HeckeElement(self.n)
        return HeckeElement(self.n, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HeckeElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "HeckeElement(0)"
        bits = [f"({c})*g{w}" for w, c in sorted(self.terms.items())]
        return " + ".join(bits)


def gen_mul_left(j: int, x: HeckeElement) -> HeckeElement:
    """g_j * x."""
    if not 1 <= j <= x.n - 1:
        raise ValueError(f"generator index {j} out of range for n={x.n}")
    out: dict = {}
    q, qm1 = scalars.q_scalar(), scalars.qm1_scalar()
    for w, c in x.terms.items():
        sw = lmul_s(j, w)
        if w[j - 1] < w[j]:  # length rises
            _acc(out, sw, c)
        else:
            _acc(out, w, qm1 * c)
            _acc(out, sw, q * c)
    return HeckeElement(x.n, out)


def gen_mul_right(x: HeckeElement, j: int) -> HeckeElement:
    """x * g_j."""
    if not 1 <= j <= x.n - 1:
        raise ValueError(f"generator index {j} out of range for n={x.n}")
    out: dict = {}
    q, qm1 = scalars.q_scalar(), scalars.qm1_scalar()
    for w, c in x.terms.items():
        ws = rmul_s(w, j)
        if w.index(j + 1) > w.index(j):  # length rises
            _acc(out, ws, c)
        else:
            _acc(out, w, qm1 * c)
            _acc(out, ws, q * c)
    return HeckeElement(x.n, out)


def gen_mul_right_inv(x: HeckeElement, j: int) -> HeckeElement:
    """x * g_j^{-1} = q^{-1} x g_j + (q^{-1} - 1) x."""
    qinv = scalars.q_scalar().inv()
    return gen_mul_right(x, j).scale(qinv) + x.scale(qinv - scalars.ONE)


def gen_mul_left_inv(j: int, x: HeckeElement) -> HeckeElement:
    qinv = scalars.q_scalar().inv()
    return gen_mul_left(j, x).scale(qinv) + x.scale(qinv - scalars.ONE)


def _acc(out: dict, w: Perm, c: Scalar) -> None:
    s = out.get(w)
    s = c if s is None else s + c
    if s.is_zero():
        out.pop(w, None)
    else:
        out[w] = s


def product(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """x * y, expanding each basis term of y into a reduced word."""
    if x.n != y.n:
        raise SizeMismatch("mixed ranks in Hecke product")
    out = HeckeElement(x.n)
    for w, c in y.terms.items():
        z = x
        for j in reduced_word(w):
            z = gen_mul_right(z, j)
        out = out + z.scale(c)
    return out


def word_element(n: int, letters) -> HeckeElement:
    """Product of g_j^{±1} over (j, sign) pairs; sign -1 inverts."""
    z = HeckeElement.unit(n)
    for j, sign in letters:
        z = gen_mul_right(z, j) if sign > 0 else gen_mul_right_inv(z, j)
    return z


def inverse_basis(w: Perm) -> HeckeElement:
    """g_w^{-1}, as the reversed product of generator inverses."""
    n = len(w)
    z = HeckeElement.unit(n)
    for j in reversed(reduced_word(w)):
        z = gen_mul_right_inv(z, j)
    return z


def involution_i(x: HeckeElement) -> HeckeElement:
    """The anti-automorphism determined by g_w -> g_{w^{-1}}."""
    return HeckeElement(x.n, {perm_inv(w): c for w, c in x.terms.items()})


def chain_element(n: int, sign: int, l: int, k: int) -> HeckeElement:
    """g^+_{l,k} (sign +1) or g^-_{l,k} (sign -1): the generator chain from
    l to k, ascending or descending as l <= k or l > k."""
    rng = range(l, k + 1) if l <= k else range(l, k - 1, -1)
    return word_element(n, [(j, sign) for j in rng])


def in_subalgebra(x: HeckeElement, k: int) -> bool:
    """True iff the support lies in the parabolic S_{2k+1,n} fixing 1..2k."""
    return all(fixes_prefix(w, 2 * k) for w in x.terms)


def hecke_to_json(x: HeckeElement) -> list:
    return [
        {"perm": list(w), "coeff": scalars.scalar_to_json(c)}
        for w, c in sorted(x.terms.items())
    ]


def hecke_from_json(n: int, obj: list) -> HeckeElement:
    return HeckeElement(
        n,
        {
            tuple(t["perm"]): scalars.scalar_from_json(t["coeff"])
            for t in obj
        },
    )
