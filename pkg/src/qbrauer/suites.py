"""
Named verification suites over the exact kernel.

Every suite returns a report dict {check, n, version, params, pairs_tested,
failures}; an empty failure list is a pass.  The same functions back the
command line ``verify`` subcommand and the acceptance tests, so the two
surfaces cannot drift apart.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import hecke
from .algebra import (
    AlgebraContext,
    QBrauerElement,
    basis_element,
    e_k_element,
    involution_i,
    lmul_g,
    lmul_g_inv,
    product,
    rmul_e,
    rmul_g,
    rmul_g_inv,
    straighten,
)
from .diagrams import (
    concat,
    enumerate_diagrams,
    e_k_diagram,
    perm_mul,
    perm_to_diagram,
)
from .scalars import brauer_limit, q_scalar, qm1_scalar


def asc(l: int, k: int, sign: int = 1):
    """Ascending generator chain (j, sign) for j = l..k; empty when k < l."""
    return [(j, sign) for j in range(l, k + 1)]


def desc(l: int, k: int, sign: int = 1):
    """Descending generator chain for j = l..k downwards; empty when l < k."""
    return [(j, sign) for j in range(l, k - 1, -1)]


def word_elem(ctx: AlgebraContext, atoms) -> QBrauerElement:
    """Product over atoms: (j, +-1) for g_j^{+-1}, or "e"."""
    z = ctx.unit()
    for a in atoms:
        if a == "e":
            z = rmul_e(ctx, z)
        else:
            j, s = a
            z = rmul_g(ctx, z, j) if s > 0 else rmul_g_inv(ctx, z, j)
    return z


def _report(check, ctx, params, pairs, failures):
    version = ctx.version if ctx is not None else {"generic": True}
    n = ctx.n if ctx is not None else params.get("n")
    return {
        "check": check,
        "n": n,
        "version": version,
        "params": params,
        "pairs_tested": pairs,
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# defining relations
# ---------------------------------------------------------------------------

def relations_suite(ctx: AlgebraContext) -> dict:
    """The defining relations of the algebra, as element identities."""
    n = ctx.n
    q = q_scalar()
    failures = []
    count = 0

    def check(tag, lhs, rhs):
        nonlocal count
        count += 1
        if lhs != rhs:
            failures.append({"identity": tag})

    g = {j: lmul_g(ctx, j, ctx.unit()) for j in range(1, n)}
    e = word_elem(ctx, ["e"])

    for i in range(1, n - 1):
        check(
            f"braid g{i}",
            product(ctx, product(ctx, g[i], g[i + 1]), g[i]),
            product(ctx, product(ctx, g[i + 1], g[i]), g[i + 1]),
        )
    for i in range(1, n):
        for j in range(i + 2, n):
            check(
                f"commute g{i} g{j}",
                product(ctx, g[i], g[j]),
                product(ctx, g[j], g[i]),
            )
    for i in range(1, n):
        check(
            f"quadratic g{i}",
            product(ctx, g[i], g[i]),
            g[i].scale(qm1_scalar()) + ctx.unit().scale(q),
        )

    check("idempotent square", product(ctx, e, e), e.scale(ctx.b()))
    for i in range(3, n):
        check(f"idempotent commute g{i}", product(ctx, e, g[i]), product(ctx, g[i], e))
    if n >= 2:
        check("absorb left g1", product(ctx, e, g[1]), e.scale(q))
        check("absorb right g1", product(ctx, g[1], e), e.scale(q))
        check("absorb g1 inverse", rmul_g_inv(ctx, e, 1), e.scale(q.inv()))
        check("absorb g1 inverse left", lmul_g_inv(ctx, 1, e), e.scale(q.inv()))
    if n >= 3:
        check(
            "sandwich g2",
            product(ctx, product(ctx, e, g[2]), e),
            e.scale(ctx.r()),
        )
        check(
            "sandwich g2 inverse",
            product(ctx, rmul_g_inv(ctx, e, 2), e),
            e.scale(q.inv()),
        )
    if n >= 4:
        twist = word_elem(ctx, [(2, 1), (3, 1), (1, -1), (2, -1)])
        e2 = product(ctx, product(ctx, e, twist), e)
        check("twist idempotent value", e2, e_k_element(ctx, 2))
        check("twist idempotent left", product(ctx, twist, e2), e2)
        check("twist idempotent right", product(ctx, e2, twist), e2)
    return _report("relations", ctx, {}, count, failures)


# ---------------------------------------------------------------------------
# the ladder of idempotent identities
# ---------------------------------------------------------------------------

def lemmas_suite(ctx: AlgebraContext) -> dict:
    """Exact identities between the tower idempotents, generator chains and
    their absorptions, over every valid index range."""
    n = ctx.n
    K = n // 2
    q, b, r = q_scalar(), ctx.b(), ctx.r()
    ek = {k: e_k_element(ctx, k) for k in range(K + 1)}
    failures = []
    count = 0

    def check(tag, lhs, rhs):
        nonlocal count
        count += 1
        if lhs != rhs:
            failures.append({"identity": tag})

    for k in range(K + 1):
        for j in range(k + 1):
            check(f"tower product {j},{k}", product(ctx, ek[j], ek[k]), ek[k].scale(b ** j))
            check(f"tower product' {j},{k}", product(ctx, ek[k], ek[j]), ek[k].scale(b ** j))

    for k in range(1, K + 1):
        for j in range(k):
            t = 2 * j + 1
            check(f"odd absorb L {t},{k}", lmul_g(ctx, t, ek[k]), ek[k].scale(q))
            check(f"odd absorb R {t},{k}", rmul_g(ctx, ek[k], t), ek[k].scale(q))
            check(f"odd absorb Li {t},{k}", lmul_g_inv(ctx, t, ek[k]), ek[k].scale(q.inv()))
            check(f"odd absorb Ri {t},{k}", rmul_g_inv(ctx, ek[k], t), ek[k].scale(q.inv()))

    for k in range(1, K + 1):
        for j in range(1, k + 1):
            if 2 * j > n - 1:
                continue
            want = ek[k].scale(r * b ** (j - 1))
            check(f"cap sandwich {j},{k}", product(ctx, rmul_g(ctx, ek[j], 2 * j), ek[k]), want)
            check(f"cap sandwich' {j},{k}", product(ctx, rmul_g(ctx, ek[k], 2 * j), ek[j]), want)

    for k in range(1, K + 1):
        for l in range(1, k):
            for sg in (1, -1):
                a1 = word_elem(ctx, asc(1, 2 * l, sg))
                a2 = word_elem(ctx, desc(2 * l + 1, 2, sg))
                check(f"chain reflect L {sg},{l},{k}",
                      product(ctx, a1, ek[k]), product(ctx, a2, ek[k]))
                a3 = word_elem(ctx, desc(2 * l, 1, sg))
                a4 = word_elem(ctx, asc(2, 2 * l + 1, sg))
                check(f"chain reflect R {sg},{l},{k}",
                      product(ctx, ek[k], a3), product(ctx, ek[k], a4))

    for k in range(1, K + 1):
        for j in range(1, k):
            check(
                f"pair slide {j},{k}",
                lmul_g(ctx, 2 * j - 1, lmul_g(ctx, 2 * j, ek[k])),
                lmul_g(ctx, 2 * j + 1, lmul_g(ctx, 2 * j, ek[k])),
            )
            check(
                f"pair slide inv {j},{k}",
                lmul_g_inv(ctx, 2 * j - 1, lmul_g_inv(ctx, 2 * j, ek[k])),
                lmul_g_inv(ctx, 2 * j + 1, lmul_g_inv(ctx, 2 * j, ek[k])),
            )

    for k in range(1, K):
        lhs = product(ctx, word_elem(ctx, ["e"] + asc(2, 2 * k + 1) + asc(1, 2 * k, -1)), ek[k])
        check(f"ladder recursion left {k}", lhs, ek[k + 1])
        rhs = product(ctx, ek[k], word_elem(ctx, desc(2 * k, 1, -1) + desc(2 * k + 1, 2) + ["e"]))
        check(f"ladder recursion right {k}", rhs, ek[k + 1])
        for j in range(1, k + 1):
            mid = word_elem(ctx, asc(2 * j, 2 * k + 1) + asc(2 * j - 1, 2 * k, -1))
            check(
                f"ladder from level {j},{k}",
                product(ctx, product(ctx, ek[j], mid), ek[k]),
                ek[k + 1].scale(b ** (j - 1)),
            )
            mid2 = word_elem(ctx, desc(2 * k, 2 * j - 1, -1) + desc(2 * k + 1, 2 * j))
            check(
                f"ladder from level' {j},{k}",
                product(ctx, product(ctx, ek[k], mid2), ek[j]),
                ek[k + 1].scale(b ** (j - 1)),
            )

    for k in range(1, K + 1):
        for j in range(1, k):
            for m in range(1, j + 1):
                for sg in (1, -1):
                    a1 = word_elem(ctx, asc(2 * m - 1, 2 * j, sg))
                    a2 = word_elem(ctx, desc(2 * j + 1, 2 * m, sg))
                    check(f"long reflect L {sg},{m},{j},{k}",
                          product(ctx, a1, ek[k]), product(ctx, a2, ek[k]))
            for i in range(1, j + 1):
                for sg in (1, -1):
                    a1 = word_elem(ctx, desc(2 * j, 2 * i - 1, sg))
                    a2 = word_elem(ctx, asc(2 * i, 2 * j + 1, sg))
                    check(f"long reflect R {sg},{i},{j},{k}",
                          product(ctx, ek[k], a1), product(ctx, ek[k], a2))

    for k in range(K):
        for j in range(1, k + 1):
            h1 = hecke.word_element(n, [(2 * j + 1, 1)] + asc(2, 2 * k + 1) + asc(1, 2 * k, -1))
            h2 = hecke.word_element(n, asc(2, 2 * k + 1) + asc(1, 2 * k, -1) + [(2 * j - 1, 1)])
            count += 1
            if h1 != h2:
                failures.append({"identity": f"odd slide through ladder {j},{k}"})
            h3 = hecke.word_element(n, desc(2 * k, 1, -1) + desc(2 * k + 1, 2) + [(2 * j + 1, 1)])
            h4 = hecke.word_element(n, [(2 * j - 1, 1)] + desc(2 * k, 1, -1) + desc(2 * k + 1, 2))
            count += 1
            if h3 != h4:
                failures.append({"identity": f"odd slide through ladder' {j},{k}"})

    # mixed-chain absorption, inverse trailing chain: for j1 >= 2k, j2 >= 2k+1
    # e g+_{2,j2} g-_{1,j1} e_(k) = e_(k+1) g+_{2k+2,j2} g-_{2k+1,j1}
    for k in range(K):
        if 2 * (k + 1) > n:
            continue
        for j1 in range(2 * k, n):
            for j2 in range(2 * k + 1, n):
                lhs = product(ctx, word_elem(ctx, ["e"] + asc(2, j2) + asc(1, j1, -1)), ek[k])
                rhs = product(
                    ctx, ek[k + 1],
                    word_elem(ctx, asc(2 * k + 2, j2) + asc(2 * k + 1, j1, -1)),
                )
                check(f"chain absorb minus {j1},{j2},{k}", lhs, rhs)
    return _report("lemmas", ctx, {}, count, failures)


def plus_chain_absorption_suite(ctx: AlgebraContext) -> dict:
    """Plus-chain version of the absorption identity, with its correction sum:
    for j1 >= 2k, j2 >= 2k+1,

      e g+_{2,j2} g+_{1,j1} e_(k) = q^{2k} e_(k+1) g+_{2k+2,j2} g+_{2k+1,j1}
        + r q (q-1) sum_{l=1}^{k} q^{2l-2} (g_{2l+1} + 1)
                                  g+_{2l+2,j2} g+_{2l+1,j1} e_(k).

    In the integral version r = q^N the prefactor is q^{N+1}(q-1).
    """
    n = ctx.n
    K = n // 2
    q = q_scalar()
    failures = []
    count = 0
    for k in range(1, K):
        if 2 * (k + 1) > n:
            continue
        for j1 in range(2 * k, n):
            for j2 in range(2 * k + 1, n):
                lhs = product(
                    ctx,
                    word_elem(ctx, ["e"] + asc(2, j2) + asc(1, j1)),
                    e_k_element(ctx, k),
                )
                rhs = product(
                    ctx,
                    e_k_element(ctx, k + 1),
                    word_elem(ctx, asc(2 * k + 2, j2) + asc(2 * k + 1, j1)),
                ).scale(q ** (2 * k))
                coef = ctx.r() * q * qm1_scalar()
                for l in range(1, k + 1):
                    tail = word_elem(ctx, asc(2 * l + 2, j2) + asc(2 * l + 1, j1))
                    piece = product(ctx, tail, e_k_element(ctx, k))
                    piece = piece + product(ctx, lmul_g(ctx, 2 * l + 1, tail), e_k_element(ctx, k))
                    rhs = rhs + piece.scale(coef * q ** (2 * l - 2))
                count += 1
                if lhs != rhs:
                    failures.append({"identity": f"chain absorb plus {j1},{j2},{k}"})
    return _report("plus_chain_absorption", ctx, {}, count, failures)


def ek_consistency_suite(ctx: AlgebraContext) -> dict:
    """The two ladder recursions and the diagram basis element agree."""
    n = ctx.n
    failures = []
    count = 0
    left = ctx.unit()
    right = ctx.unit()
    for k in range(1, n // 2 + 1):
        left = product(
            ctx, word_elem(ctx, ["e"] + asc(2, 2 * k - 1) + asc(1, 2 * k - 2, -1)), left
        )
        right = product(
            ctx, right, word_elem(ctx, desc(2 * k - 2, 1, -1) + desc(2 * k - 1, 2) + ["e"])
        )
        want = basis_element(ctx, e_k_diagram(n, k))
        count += 2
        if left != want:
            failures.append({"identity": f"left recursion k={k}"})
        if right != want:
            failures.append({"identity": f"right recursion k={k}"})
    return _report("ek_consistency", ctx, {}, count, failures)


# ---------------------------------------------------------------------------
# classical oracle and associativity
# ---------------------------------------------------------------------------

def oracle_suite(n: int, Ns=(1, 2, 3), sample=None, seed: int = 0) -> dict:
    """Structure constants specialize, at r = q^N and q -> 1, to the loop
    count of the classical diagram product."""
    ctx = AlgebraContext(n)
    diagrams = enumerate_diagrams(n)
    rng = random.Random(seed)
    if sample is None:
        pairs = [(a, b) for a in diagrams for b in diagrams]
    else:
        pairs = [(rng.choice(diagrams), rng.choice(diagrams)) for _ in range(sample)]
    failures = []
    for d1, d2 in pairs:
        P = product(ctx, QBrauerElement.basis(d1), QBrauerElement.basis(d2))
        dd, g = concat(d1, d2)
        for N in Ns:
            for dout, c in P.terms.items():
                want = Fraction(N) ** g if dout == dd else Fraction(0)
                if brauer_limit(c, N) != want:
                    failures.append({"d1": d1.edges(), "d2": d2.edges(), "N": N})
        if dd not in P.terms:
            failures.append({"d1": d1.edges(), "d2": d2.edges(), "missing": True})
    return _report("oracle", ctx, {"Ns": list(Ns), "sample": sample, "seed": seed},
                   len(pairs), failures)


def associativity_suite(n: int, count: int = 200, seed: int = 0) -> dict:
    ctx = AlgebraContext(n)
    diagrams = enumerate_diagrams(n)
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        a, b, c = (QBrauerElement.basis(rng.choice(diagrams)) for _ in range(3))
        if product(ctx, product(ctx, a, b), c) != product(ctx, a, product(ctx, b, c)):
            failures.append({"triple": True})
    return _report("associativity", ctx, {"count": count, "seed": seed}, count, failures)


def involution_antihom_suite(n: int, count: int = 200, seed: int = 0) -> dict:
    """i(xy) = i(y) i(x) and i^2 = id on random basis pairs."""
    ctx = AlgebraContext(n)
    diagrams = enumerate_diagrams(n)
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        a = QBrauerElement.basis(rng.choice(diagrams))
        b = QBrauerElement.basis(rng.choice(diagrams))
        lhs = involution_i(product(ctx, a, b))
        rhs = product(ctx, involution_i(b), involution_i(a))
        if lhs != rhs or involution_i(involution_i(a)) != a:
            failures.append({"pair": True})
    return _report("involution_antihom", ctx, {"count": count, "seed": seed}, count, failures)


def straighten_robustness_suite(n: int, count: int = 500, seed: int = 0) -> dict:
    """Straightening is independent of the reduced word used, and collapses
    at q = 1, r = q^N to the single classical diagram."""
    ctx = AlgebraContext(n)
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        k = rng.randint(0, n // 2)
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        sigma = tuple(sigma)
        out1 = straighten(ctx, sigma, k, order="standard")
        out2 = straighten(ctx, sigma, k, order="reversed")
        if out1 != out2:
            failures.append({"sigma": sigma, "k": k, "why": "order"})
            continue
        target, g = concat(perm_to_diagram(sigma), e_k_diagram(n, k))
        assert g == 0
        classical = {}
        for coeff, w, pi in out1:
            d, g2 = concat(perm_to_diagram(perm_mul(w, pi)), e_k_diagram(n, k))
            lim = brauer_limit(coeff, 1)
            classical[d] = classical.get(d, Fraction(0)) + lim
        classical = {d: c for d, c in classical.items() if c}
        if classical != {target: Fraction(1)}:
            failures.append({"sigma": sigma, "k": k, "why": "q=1"})
    return _report("straighten_robustness", ctx, {"count": count, "seed": seed},
                   count, failures)


def layer_preservation_suite(n: int) -> dict:
    """Products of two layer-k basis elements have no part below layer k."""
    ctx = AlgebraContext(n)
    failures = []
    pairs = 0
    by_layer = {}
    for d in enumerate_diagrams(n):
        by_layer.setdefault(d.layer(), []).append(d)
    for k, ds in by_layer.items():
        for d1 in ds:
            for d2 in ds:
                pairs += 1
                P = product(ctx, QBrauerElement.basis(d1), QBrauerElement.basis(d2))
                if any(dd.layer() < k for dd in P.terms):
                    failures.append({"d1": d1.edges(), "d2": d2.edges()})
    return _report("layer_preservation", ctx, {}, pairs, failures)
