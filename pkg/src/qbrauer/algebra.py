"""
The q-Brauer algebra on its diagram basis.

Elements are finitely supported Scalar-valued maps on Brauer diagrams; the
basis element attached to a diagram d with canonical factorization
(w1, wd, w2) through e_(k) is g_{w1} g_{wd} e_(k) g_{w2}.  Multiplication
is relation-driven: the right factor is expanded into a word in the
generators g_j, g_j^{-1}, e and folded onto the left factor one atom at a
time, keeping every intermediate result in normal form.

Single-generator multiplication mirrors the Hecke rule, with the diagram
playing the role of the permutation: comparing the minimal word length of
s_j . d against that of d decides between a plain move (length up), a
factor q (length equal, which forces s_j . d = d), and the two-term
quadratic expansion (length down).

Multiplication by e reduces to the core products e g_sigma e_(k).  These
are peeled by exact one-letter rules (e g_1 = q e; e g_i = g_i e for
i > 2; g_t e_(k) = q e_(k) for odd t < 2k; g_t e_(k) = e_(k) g_t for
t > 2k) until the word is one of three irreducible shapes, each of which
is rewritten by an exact identity of the algebra:

* e g^+_{2,2m} e_(k): expand e_(k) through its defining recursion and
  absorb e g_2 e = r e, dropping to level k-1;
* e g^+_{2,2k+1} g^+_{1,2k} e_(k): invert the trailing chain letter by
  letter against the recursion e g^+_{2,2k+1} g^-_{1,2k} e_(k) = e_(k+1);
* e g^+_{2,j2} g^+_{1,2j} e_(k) with j < k: replace the ascending chain
  g^+_{1,2j} by the descending g^+_{2j+1,2}, which acts identically on
  e_(k), and re-expand the now non-reduced word in the Hecke algebra.

Each rewrite strictly decreases (k, word length, stuck-ness), so the
recursion terminates; every coefficient stays inside the declared
localization by construction.
"""

from __future__ import annotations

from . import hecke, scalars
from .diagrams import (
    BrauerDiagram,
    Perm,
    ReducedExpression,
    SizeMismatch,
    bottom_swap,
    decompose,
    e_k_diagram,
    identity_diagram,
    identity_perm,
    left_descents,
    lmul_s,
    perm_inv,
    perm_length,
    perm_mul,
    reduced_word,
    right_descents,
    rmul_s,
    s_ij,
    star,
    top_swap,
)
from .hecke import HeckeElement
from .scalars import Scalar

# decomposition data is version-independent; shared across contexts
_EXPR_CACHE: dict = {}


def _expr(d: BrauerDiagram) -> ReducedExpression:
    e = _EXPR_CACHE.get(d)
    if e is None:
        e = decompose(d)
        _EXPR_CACHE[d] = e
    return e


def _vstar_len(d: BrauerDiagram) -> int:
    e = _expr(d)
    return perm_length(e.w1) + perm_length(e.wd)


def _v_len(d: BrauerDiagram) -> int:
    e = _expr(d)
    return perm_length(e.wd) + perm_length(e.w2)


class QBrauerElement:
    """Finitely supported map BrauerDiagram -> Scalar."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for d, c in terms.items():
                if not c.is_zero():
                    self.terms[d] = c

    @classmethod
    def basis(cls, d: BrauerDiagram) -> "QBrauerElement":
        return cls(d.n, {d: scalars.ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "QBrauerElement") -> "QBrauerElement":
        if self.n != other.n:
            raise SizeMismatch("mixed ranks in sum")
        out = dict(self.terms)
        for d, c in other.terms.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        return QBrauerElement(self.n, out)

    def __sub__(self, other: "QBrauerElement") -> "QBrauerElement":
        return self + other.scale(scalars.from_int(-1))

    def scale(self, c: Scalar) -> "QBrauerElement":
        if c.is_zero():
            return QBrauerElement(self.n)
        return QBrauerElement(self.n, {d: c * v for d, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QBrauerElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"QBrauerElement(n={self.n}, {len(self.terms)} terms)"


class AlgebraContext:
    """Rank n plus the scalar version: generic r, or r = q^N symbolically.

    Immutable after construction; the memo tables are fill-once caches keyed
    by basis data, so sharing a context across threads is safe (worst case a
    value is recomputed and published twice, identically).
    """

    def __init__(self, n: int, N: int | None = None):
        if n < 1:
            raise ValueError("need n >= 1")
        if N == 0:
            raise ValueError("the integral version needs N != 0")
        self.n = n
        self.N = N
        self._r = scalars.r_scalar() if N is None else scalars.r_power(N)
        self._b = (self._r - scalars.ONE) * scalars.qm1_scalar().inv()
        self._lmul_g: dict = {}
        self._rmul_g: dict = {}
        self._core: dict = {}
        self._rmul_atom: dict = {}

    @property
    def version(self):
        return {"generic": True} if self.N is None else {"N": self.N}

    def r(self) -> Scalar:
        return self._r

    def b(self) -> Scalar:
        return self._b

    def unit(self) -> QBrauerElement:
        return QBrauerElement.basis(identity_diagram(self.n))

    def __repr__(self):
        tag = "generic" if self.N is None else f"N={self.N}"
        return f"AlgebraContext(n={self.n}, {tag})"


def layer(d: BrauerDiagram) -> int:
    return d.layer()


def filtration_component(x: QBrauerElement, k: int) -> QBrauerElement:
    """Restrict to the terms with at least k horizontal edges per row."""
    return QBrauerElement(x.n, {d: c for d, c in x.terms.items() if d.layer() >= k})


def layer_component(x: QBrauerElement, k: int) -> QBrauerElement:
    return QBrauerElement(x.n, {d: c for d, c in x.terms.items() if d.layer() == k})


def basis_element(ctx: AlgebraContext, d: BrauerDiagram) -> QBrauerElement:
    if d.n != ctx.n:
        raise SizeMismatch(f"diagram has n={d.n}, context n={ctx.n}")
    return QBrauerElement.basis(d)


def e_k_element(ctx: AlgebraContext, k: int) -> QBrauerElement:
    return QBrauerElement.basis(e_k_diagram(ctx.n, k))


def involution_i(x: QBrauerElement) -> QBrauerElement:
    """The involutive anti-automorphism; permutes the basis via row rotation."""
    return QBrauerElement(x.n, {star(d): c for d, c in x.terms.items()})


# ---------------------------------------------------------------------------
# single Hecke-generator multiplication
# ---------------------------------------------------------------------------

def _lmul_g_basis(ctx: AlgebraContext, j: int, d: BrauerDiagram):
    key = (j, d)
    res = ctx._lmul_g.get(key)
    if res is None:
        sjd = top_swap(d, j)
        delta = _vstar_len(sjd) - _vstar_len(d)
        if delta == 1:
            res = ((scalars.ONE, sjd),)
        elif delta == 0:
            assert sjd == d
            res = ((scalars.q_scalar(), d),)
        else:
            res = ((scalars.qm1_scalar(), d), (scalars.q_scalar(), sjd))
        ctx._lmul_g[key] = res
    return res


def _rmul_g_basis(ctx: AlgebraContext, d: BrauerDiagram, j: int):
    key = (d, j)
    res = ctx._rmul_g.get(key)
    if res is None:
        dsj = bottom_swap(d, j)
        delta = _v_len(dsj) - _v_len(d)
        if delta == 1:
            res = ((scalars.ONE, dsj),)
        elif delta == 0:
            assert dsj == d
            res = ((scalars.q_scalar(), d),)
        else:
            res = ((scalars.qm1_scalar(), d), (scalars.q_scalar(), dsj))
        ctx._rmul_g[key] = res
    return res


def _combine(n: int, x: QBrauerElement, table) -> QBrauerElement:
    out: dict = {}
    for d, c in x.terms.items():
        for coef, nd in table(d):
            s = out.get(nd)
            s = coef * c if s is None else s + coef * c
            if s.is_zero():
                out.pop(nd, None)
            else:
                out[nd] = s
    return QBrauerElement(n, out)


def lmul_g(ctx: AlgebraContext, j: int, x: QBrauerElement) -> QBrauerElement:
    if not 1 <= j <= ctx.n - 1:
        raise ValueError(f"generator index {j} out of range")
    return _combine(ctx.n, x, lambda d: _lmul_g_basis(ctx, j, d))


def rmul_g(ctx: AlgebraContext, x: QBrauerElement, j: int) -> QBrauerElement:
    if not 1 <= j <= ctx.n - 1:
        raise ValueError(f"generator index {j} out of range")
    return _combine(ctx.n, x, lambda d: _rmul_g_basis(ctx, d, j))


def lmul_g_inv(ctx: AlgebraContext, j: int, x: QBrauerElement) -> QBrauerElement:
    qinv = scalars.q_scalar().inv()
    return lmul_g(ctx, j, x).scale(qinv) + x.scale(qinv - scalars.ONE)


def rmul_g_inv(ctx: AlgebraContext, x: QBrauerElement, j: int) -> QBrauerElement:
    qinv = scalars.q_scalar().inv()
    return rmul_g(ctx, x, j).scale(qinv) + x.scale(qinv - scalars.ONE)


# ---------------------------------------------------------------------------
# multiplication by e: the core products e g_sigma e_(k)
# ---------------------------------------------------------------------------

def _sum_core(ctx: AlgebraContext, h: HeckeElement, k: int) -> QBrauerElement:
    out = QBrauerElement(ctx.n)
    for w, c in h.terms.items():
        out = out + _core(ctx, w, k).scale(c)
    return out


def _core(ctx: AlgebraContext, sigma: Perm, k: int) -> QBrauerElement:
    """Normal form of e g_sigma e_(k)."""
    key = (sigma, k)
    res = ctx._core.get(key)
    if res is None:
        res = _core_compute(ctx, sigma, k)
        ctx._core[key] = res
    return res


def _core_compute(ctx: AlgebraContext, sigma: Perm, k: int) -> QBrauerElement:
    n = ctx.n
    q = scalars.q_scalar()
    if k == 0:
        z = QBrauerElement.basis(e_k_diagram(n, 1))
        for j in reduced_word(sigma):
            z = rmul_g(ctx, z, j)
        return z
    if sigma == identity_perm(n):
        return e_k_element(ctx, k).scale(ctx.b())

    lds = left_descents(sigma)
    if 1 in lds:
        return _core(ctx, lmul_s(1, sigma), k).scale(q)
    rds = right_descents(sigma)
    for t in rds:
        if t % 2 == 1 and t < 2 * k:
            return _core(ctx, rmul_s(sigma, t), k).scale(q)
    for t in rds:
        if t >= 2 * k + 1:
            return rmul_g(ctx, _core(ctx, rmul_s(sigma, t), k), t)
    for t in lds:
        if t >= 3:
            return lmul_g(ctx, t, _core(ctx, lmul_s(t, sigma), k))

    # Irreducible shape: sigma = [x, y, rest ascending] = s_{2,y-1} s_{1,x-1}
    # with x odd, and y - 1 even <= 2k unless y = x + 1.
    x, y = sigma[0], sigma[1]
    j1, j2 = x - 1, y - 1
    assert x < y and x % 2 == 1, (sigma, k)
    assert sigma == perm_mul(s_chain(n, 2, j2), s_chain(n, 1, j1)), (sigma, k)

    if j1 == 0:
        # e g^+_{2,2m} e_(k), with 2m = j2 <= 2k
        assert j2 % 2 == 0 and j2 <= 2 * k
        if j2 == 2:
            return e_k_element(ctx, k).scale(ctx.r())
        word = (
            [(t, +1) for t in range(3, j2 + 1)]
            + [(t, +1) for t in range(2, 2 * k)]
            + [(t, -1) for t in range(1, 2 * k - 1)]
        )
        h = hecke.word_element(n, word)
        return _sum_core(ctx, h, k - 1).scale(ctx.r())

    if j1 == 2 * k:
        # e g^+_{2,2k+1} g^+_{1,2k} e_(k): letter-by-letter inversion of the
        # trailing chain against e g^+_{2,2k+1} g^-_{1,2k} e_(k) = e_(k+1)
        assert j2 == 2 * k + 1
        acc = QBrauerElement.basis(e_k_diagram(n, k + 1)).scale(q ** (2 * k))
        qm1 = scalars.qm1_scalar()
        for m in range(1, 2 * k + 1):
            word = (
                [(t, +1) for t in range(2, 2 * k + 2)]
                + [(t, -1) for t in range(1, m)]
                + [(t, +1) for t in range(m + 1, 2 * k + 1)]
            )
            h = hecke.word_element(n, word)
            acc = acc + _sum_core(ctx, h, k).scale(qm1 * q ** (m - 1))
        return acc

    # j1 = 2j < 2k: the ascending chain g^+_{1,2j} equals the descending
    # g^+_{2j+1,2} against e_(k); the rewritten word is not reduced, so
    # re-expand it in the Hecke algebra and recurse.
    assert j1 % 2 == 0 and j1 < 2 * k
    word = [(t, +1) for t in range(2, j2 + 1)] + [
        (t, +1) for t in range(j1 + 1, 1, -1)
    ]
    h = hecke.word_element(n, word)
    return _sum_core(ctx, h, k)


def s_chain(n: int, i: int, j: int) -> Perm:
    """s_{i,j}, with the empty chain s_{i,i-1} read as the identity."""
    if i == j + 1:
        return identity_perm(n)
    return s_ij(n, i, j)


def lmul_e(ctx: AlgebraContext, x: QBrauerElement) -> QBrauerElement:
    out = QBrauerElement(ctx.n)
    for d, c in x.terms.items():
        out = out + _lmul_e_basis(ctx, d).scale(c)
    return out


def _lmul_e_basis(ctx: AlgebraContext, d: BrauerDiagram) -> QBrauerElement:
    ex = _expr(d)
    res = _core(ctx, perm_mul(ex.w1, ex.wd), ex.k)
    for j in reduced_word(ex.w2):
        res = rmul_g(ctx, res, j)
    return res


def rmul_e(ctx: AlgebraContext, x: QBrauerElement) -> QBrauerElement:
    return involution_i(lmul_e(ctx, involution_i(x)))


# ---------------------------------------------------------------------------
# generator words and the general product
# ---------------------------------------------------------------------------

E_ATOM = ("e",)


def ek_atoms(k: int):
    """Word for e_(k) from the recursion e_(k) = e g^+_{2,2k-1} g^-_{1,2k-2} e_(k-1)."""
    if k == 0:
        return []
    word = [E_ATOM]
    word += [("g", t, +1) for t in range(2, 2 * k)]
    word += [("g", t, -1) for t in range(1, 2 * k - 1)]
    return word + ek_atoms(k - 1)


def generator_word(d: BrauerDiagram):
    """A word in g_j, g_j^{-1}, e whose product is the basis element of d."""
    ex = _expr(d)
    word = [("g", j, +1) for j in reduced_word(ex.w1)]
    word += [("g", j, +1) for j in reduced_word(ex.wd)]
    word += ek_atoms(ex.k)
    word += [("g", j, +1) for j in reduced_word(ex.w2)]
    return word


def rmul_atom(ctx: AlgebraContext, x: QBrauerElement, atom) -> QBrauerElement:
    out = QBrauerElement(ctx.n)
    for d, c in x.terms.items():
        key = (d, atom)
        res = ctx._rmul_atom.get(key)
        if res is None:
            y = QBrauerElement.basis(d)
            if atom == E_ATOM:
                res = rmul_e(ctx, y)
            elif atom[2] > 0:
                res = rmul_g(ctx, y, atom[1])
            else:
                res = rmul_g_inv(ctx, y, atom[1])
            ctx._rmul_atom[key] = res
        out = out + res.scale(c)
    return out


def lmul_gen(ctx: AlgebraContext, atom, x: QBrauerElement) -> QBrauerElement:
    """Left multiplication by a single generator atom."""
    if atom == E_ATOM:
        return lmul_e(ctx, x)
    if atom[2] > 0:
        return lmul_g(ctx, atom[1], x)
    return lmul_g_inv(ctx, atom[1], x)


def rmul_gen(ctx: AlgebraContext, x: QBrauerElement, atom) -> QBrauerElement:
    return rmul_atom(ctx, x, atom)


def product(ctx: AlgebraContext, x: QBrauerElement, y: QBrauerElement) -> QBrauerElement:
    if x.n != y.n or x.n != ctx.n:
        raise SizeMismatch("mixed ranks in product")
    out = QBrauerElement(ctx.n)
    for d, c in y.terms.items():
        z = x
        for atom in generator_word(d):
            z = rmul_atom(ctx, z, atom)
        out = out + z.scale(c)
    return out


# ---------------------------------------------------------------------------
# straightening: g_sigma e_(k) in the transversal normal form
# ---------------------------------------------------------------------------

def straighten(ctx: AlgebraContext, sigma: Perm, k: int, order: str = "standard"):
    """Expand g_sigma e_(k) as sum of a_j g_{w_j} g_{pi_j} e_(k).

    Returns a sorted list of (Scalar, w, pi) with w in the no-crossing
    transversal and pi fixing 1..2k.  ``order`` selects the reduced word
    used for sigma; all choices give the same normal form.
    """
    if order == "standard":
        letters = reduced_word(sigma)
    elif order == "reversed":
        letters = list(reversed(reduced_word(perm_inv(sigma))))
    else:
        raise ValueError(f"unknown order {order!r}")
    z = e_k_element(ctx, k)
    for j in reversed(letters):
        z = lmul_g(ctx, j, z)
    out = []
    for d, c in z.terms.items():
        ex = _expr(d)
        assert ex.k == k and ex.w2 == identity_perm(ctx.n)
        out.append((c, ex.w1, ex.wd))
    out.sort(key=lambda t: (t[1], t[2]))
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def element_to_json(ctx: AlgebraContext, x: QBrauerElement) -> dict:
    from .diagrams import diagram_to_json

    return {
        "n": x.n,
        "version": ctx.version,
        "terms": [
            {"diagram": diagram_to_json(d), "coeff": scalars.scalar_to_json(c)}
            for d, c in sorted(x.terms.items(), key=lambda t: t[0].partner)
        ],
    }


def element_from_json(obj: dict) -> QBrauerElement:
    from .diagrams import diagram_from_json

    return QBrauerElement(
        obj["n"],
        {
            diagram_from_json(t["diagram"]): scalars.scalar_from_json(t["coeff"])
            for t in obj["terms"]
        },
    )
