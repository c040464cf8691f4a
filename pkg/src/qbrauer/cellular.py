"""
Iterated-inflation coordinates, layer bilinear forms, cell-chain checks,
and the quasi-heredity decision procedure.

The algebra decomposes, as a free module, into layers indexed by
k = 0..[n/2]; the layer-k basis elements correspond to triples
(d1, d2, g_w) where d1 has its bottom row equal to the e_(k) row with
non-crossing verticals, d2 is the mirror image shape, and w fixes 1..2k.
Multiplication of two layer-k elements is governed, modulo the lower
layers, by a bilinear form phi_k with values in the parabolic Hecke
algebra on the generators g_{2k+1}..g_{n-1}; this module computes phi_k
through the algebra product and filtration extraction, and verifies the
ideal/form/involution conditions that make the layer decomposition a cell
chain.

Simple modules are indexed combinatorially: pairs (k, lam) with lam an
e(q)-restricted partition of n - 2k, where e(q) is the order-of-unity
index of the ground-field parameter q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

from .algebra import (
    AlgebraContext,
    QBrauerElement,
    basis_element,
    layer_component,
    lmul_gen,
    product,
    rmul_gen,
    E_ATOM,
    _expr,
)
from .diagrams import (
    BrauerDiagram,
    concat_many,
    diagram_from_edges,
    enumerate_diagrams,
    enumerate_nocross,
    identity_perm,
    perm_inv,
    perm_to_diagram,
    star,
)
from .hecke import HeckeElement, in_subalgebra, involution_i as hecke_involution, product as hecke_product


class MalformedCoords(ValueError):
    """Inflation coordinates violating the shape invariants."""


# ---------------------------------------------------------------------------
# partitions and tableau counts
# ---------------------------------------------------------------------------

def partitions(m: int):
    """All partitions of m, parts weakly decreasing, in lex-descending order."""
    if m == 0:
        return [()]
    out = []

    def rec(rest: int, maxpart: int, prefix: tuple):
        if rest == 0:
            out.append(prefix)
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + (p,))

    rec(m, m, ())
    return out


def hook_count(lam: tuple) -> int:
    """Number of standard Young tableaux of shape lam (hook length formula)."""
    m = sum(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for rr in lam[i + 1:] if rr > j)
            prod *= arm + leg + 1
    return factorial(m) // prod


def is_restricted(lam: tuple, e: int | None) -> bool:
    """e-restricted: successive part differences (last part included) < e.

    ``e is None`` means e(q) is infinite, so every partition qualifies.
    """
    if e is None:
        return True
    padded = lam + (0,)
    return all(padded[i] - padded[i + 1] < e for i in range(len(lam)))


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = 1*3*5*...*(2n-1), the diagram count."""
    out = 1
    for i in range(1, 2 * n, 2):
        out *= i
    return out


# ---------------------------------------------------------------------------
# inflation coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InflationCoords:
    """Layer coordinates (d1, d2, h) of a layer-k element:
    d1 has e_(k) bottom row and non-crossing verticals, d2 the mirror shape,
    and h is supported on permutations fixing 1..2k."""

    k: int
    d1: BrauerDiagram
    d2: BrauerDiagram
    h: HeckeElement


@dataclass(frozen=True)
class CellModuleIndex:
    k: int
    lam: tuple


def _vstar_part(d: BrauerDiagram) -> BrauerDiagram:
    """Top half: same top row as d, e_(k) bottom row, no crossings."""
    n, k = d.n, d.layer()
    edges = list(d.top_edges())
    for i in range(1, k + 1):
        edges.append((n + 2 * i - 1, n + 2 * i))
    free_tops = [v for v in range(1, n + 1) if d.partner[v - 1] > n]
    for i, ft in enumerate(free_tops):
        edges.append((ft, n + 2 * k + i + 1))
    return diagram_from_edges(n, edges)


def _v_part(d: BrauerDiagram) -> BrauerDiagram:
    """Bottom half: same bottom row as d, e_(k) top row, no crossings."""
    return star(_vstar_part(star(d)))


def to_inflation(ctx: AlgebraContext, d: BrauerDiagram) -> InflationCoords:
    ex = _expr(d)
    return InflationCoords(
        ex.k, _vstar_part(d), _v_part(d), HeckeElement.basis(ex.wd)
    )


def _check_coords(ctx: AlgebraContext, c: InflationCoords) -> None:
    k = c.k
    if c.d1.layer() != k or c.d2.layer() != k:
        raise MalformedCoords("parts live in the wrong layer")
    if _vstar_part(c.d1) != c.d1:
        raise MalformedCoords("d1 is not a no-crossing top part")
    if _v_part(c.d2) != c.d2:
        raise MalformedCoords("d2 is not a no-crossing bottom part")
    if not in_subalgebra(c.h, k):
        raise MalformedCoords("h is not supported on the parabolic subgroup")


def from_inflation(ctx: AlgebraContext, c: InflationCoords) -> QBrauerElement:
    """Linear extension over h of (d1, d2, g_w) -> basis diagram."""
    _check_coords(ctx, c)
    out = QBrauerElement(ctx.n)
    for w, coeff in c.h.terms.items():
        d, loops = concat_many(c.d1, perm_to_diagram(w), c.d2)
        assert loops == c.k
        out = out + QBrauerElement.basis(d).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# the layer bilinear form phi_k
# ---------------------------------------------------------------------------

def phi_k(ctx: AlgebraContext, c: BrauerDiagram, d: BrauerDiagram) -> HeckeElement:
    """The parabolic Hecke element governing (e_(k) w2-part) * (w1-part e_(k)).

    ``c`` must be a bottom part (e_(k) top row), ``d`` a top part (e_(k)
    bottom row), both of layer k; the product of their basis elements,
    restricted to layer exactly k, is supported on permuted e_(k) diagrams
    and is read off through the inflation coordinates.
    """
    k = c.layer()
    if d.layer() != k or _v_part(c) != c or _vstar_part(d) != d:
        raise MalformedCoords("phi_k needs a bottom part and a top part of one layer")
    P = product(ctx, basis_element(ctx, c), basis_element(ctx, d))
    n = ctx.n
    out = HeckeElement(n)
    ident = identity_perm(n)
    for dd, coeff in layer_component(P, k).terms.items():
        ex = _expr(dd)
        assert ex.w1 == ident and ex.w2 == ident
        out = out + HeckeElement(n, {ex.wd: coeff})
    assert in_subalgebra(out, k)
    return out


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

def _report(check: str, ctx: AlgebraContext, params: dict, pairs: int, failures: list) -> dict:
    return {
        "check": check,
        "n": ctx.n,
        "version": ctx.version,
        "params": params,
        "pairs_tested": pairs,
        "failures": failures,
    }


def inflation_bijection_check(ctx: AlgebraContext) -> dict:
    """to_inflation and from_inflation are mutually inverse on the basis."""
    failures = []
    count = 0
    for d in enumerate_diagrams(ctx.n):
        count += 1
        c = to_inflation(ctx, d)
        back = from_inflation(ctx, c)
        if back != QBrauerElement.basis(d):
            failures.append({"diagram": d.edges()})
    return _report("inflation_bijection", ctx, {}, count, failures)


def inflation_product_check(ctx: AlgebraContext, sample=None, seed: int = 0) -> dict:
    """Layer products are governed by phi_k modulo lower layers:
    g_c g_d = c1 x d2 x (g_{w(c)} phi_k(c2, d1) g_{w(d)}) modulo the span of
    the deeper layers, for all pairs of one layer."""
    rng = random.Random(seed)
    n = ctx.n
    failures = []
    pairs = 0
    for k in range(n // 2 + 1):
        layer_diags = [d for d in enumerate_diagrams(n) if d.layer() == k]
        all_pairs = [(c, d) for c in layer_diags for d in layer_diags]
        if sample is not None and len(all_pairs) > sample:
            all_pairs = rng.sample(all_pairs, sample)
        for c, d in all_pairs:
            pairs += 1
            cc, dc = to_inflation(ctx, c), to_inflation(ctx, d)
            c2 = _v_part(c)
            d1 = _vstar_part(d)
            form = phi_k(ctx, c2, d1)
            h = hecke_product(hecke_product(cc.h, form), dc.h)
            want = from_inflation(ctx, InflationCoords(k, cc.d1, dc.d2, h))
            got = layer_component(
                product(ctx, QBrauerElement.basis(c), QBrauerElement.basis(d)), k
            )
            if got != want:
                failures.append({"c": c.edges(), "d": d.edges()})
    return _report("inflation_product", ctx, {"sample": sample}, pairs, failures)


def involution_symmetry_check(ctx: AlgebraContext, sample=None, seed: int = 0) -> dict:
    """The involution swaps the two arguments of phi_k through inversion:
    i(phi_k(c, d)) = phi_k(star d, star c); also its basis image is the
    rotated diagram with inverted coordinates."""
    rng = random.Random(seed)
    n = ctx.n
    failures = []
    pairs = 0
    for k in range(n // 2 + 1):
        tops = enumerate_nocross(n, k)
        bots = [star(t) for t in tops]
        all_pairs = [(c, d) for c in bots for d in tops]
        if sample is not None and len(all_pairs) > sample:
            all_pairs = rng.sample(all_pairs, sample)
        for c, d in all_pairs:
            pairs += 1
            lhs = hecke_involution(phi_k(ctx, c, d))
            rhs = phi_k(ctx, star(d), star(c))
            if lhs != rhs:
                failures.append({"k": k, "c": c.edges(), "d": d.edges()})
    for d in enumerate_diagrams(n) if n <= 4 else []:
        ex = _expr(d)
        sx = _expr(star(d))
        if (sx.w1, sx.wd, sx.w2) != (
            perm_inv(ex.w2),
            perm_inv(ex.wd),
            perm_inv(ex.w1),
        ):
            failures.append({"basis_image": d.edges()})
    return _report("involution_symmetry", ctx, {"sample": sample}, pairs, failures)


def cell_chain_check(ctx: AlgebraContext) -> dict:
    """The layer filtration is a chain of involution-stable two-sided ideals:
    multiplying a basis element by any generator, on either side, never
    produces terms in a shallower layer, and row rotation preserves layers."""
    n = ctx.n
    atoms = [E_ATOM] + [("g", j, +1) for j in range(1, n)] + [
        ("g", j, -1) for j in range(1, n)
    ]
    failures = []
    count = 0
    for d in enumerate_diagrams(n):
        k = d.layer()
        count += 1
        if star(d).layer() != k:
            failures.append({"involution_layer": d.edges()})
        x = QBrauerElement.basis(d)
        for atom in atoms:
            for y in (lmul_gen(ctx, atom, x), rmul_gen(ctx, x, atom)):
                if any(dd.layer() < k for dd in y.terms):
                    failures.append({"diagram": d.edges(), "atom": atom})
    return _report("cell_chain", ctx, {}, count, failures)


# ---------------------------------------------------------------------------
# quasi-heredity and simple modules
# ---------------------------------------------------------------------------

def e_of_q(q0, cap: int = 64):
    """Least m <= cap with 1 + q0 + ... + q0^{m-1} = 0, else None."""
    zero = 0 * q0
    if q0 == zero:
        raise ValueError("q must be nonzero")
    acc = q0 ** 0
    power = q0
    for m in range(1, cap + 1):
        if acc == zero:
            return m
        acc = acc + power
        power = power * q0
    return None


def is_quasi_hereditary(n: int, q0, r0):
    """(decision, explanation) per the order-of-unity criterion e(q) > n."""
    zero = 0 * q0
    if q0 == zero or r0 == zero:
        raise ValueError("q and r must be nonzero in the field")
    one = q0 ** 0
    if q0 == one:
        raise ValueError("q = 1 leaves (r-1)/(q-1) undefined")
    if r0 == one:
        raise ValueError("(r-1)/(q-1) must be nonzero")
    e = e_of_q(q0, cap=n + 1)
    if e is None or e > n:
        return True, f"e(q) > {n} (no vanishing quantum integer up to cap {n + 1})"
    return False, f"false: e(q)={e} <= {n}"


def simple_module_index(n: int, q0) -> list:
    """All (k, lam) with lam an e(q)-restricted partition of n - 2k."""
    e = e_of_q(q0, cap=n + 1)
    out = []
    for k in range(n // 2 + 1):
        for lam in partitions(n - 2 * k):
            if is_restricted(lam, e):
                out.append(CellModuleIndex(k, lam))
    return out


def cell_module_dims(n: int) -> dict:
    """dim of each cell module: (rank of the layer column space) x f^lam."""
    dims = {}
    for k in range(n // 2 + 1):
        vdim = factorial(n) // (2 ** k * factorial(n - 2 * k) * factorial(k))
        for lam in partitions(n - 2 * k):
            dims[CellModuleIndex(k, lam)] = vdim * hook_count(lam)
    return dims


def cell_dimension_checksum(n: int) -> bool:
    """Sum of squared cell dimensions equals the diagram count (2n-1)!!."""
    total = sum(v * v for v in cell_module_dims(n).values())
    return total == double_factorial_odd(n)
