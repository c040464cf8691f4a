"""
Brauer-diagram and symmetric-group combinatorics.

Conventions (fixed once, used by every module and all serialized forms):

* A permutation w of {1..n} is a tuple in one-line notation, 1-based:
  ``w[i-1]`` is the image (i)w.  The group acts on the right, so products
  compose left factor first: (x)(uv) = ((x)u)v.
* ``s_ij(n, i, j)`` is the chain s_i s_{i+1} ... s_j for i <= j and
  s_i s_{i-1} ... s_j for i > j, where s_t swaps t and t+1.
* A Brauer diagram on 2n vertices numbers the top row 1..n left to right
  and the bottom row n+1..2n left to right.  It is stored as the
  fixed-point-free involution ``partner``.
* A permutation is drawn as the diagram joining top i to bottom (i)w, so
  concatenation of diagrams (top factor first) matches the product uv.

This module provides the canonical factorization of a diagram through
e_(k) (the diagram with k adjacent horizontal edges per row), the
normal-form chain words for the no-crossing transversals, and the
classical Brauer algebra with its loop-counting product.  The classical
algebra doubles as the q = 1 oracle for the deformed kernel, so it
deliberately depends only on ``fractions.Fraction``, never on
:mod:`qbrauer.scalars`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations


class SizeMismatch(ValueError):
    """Operands live in algebras of different rank n."""


class NotInTransversal(ValueError):
    """The permutation is not a member of the requested transversal."""


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

Perm = tuple


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_mul(u: Perm, v: Perm) -> Perm:
    """(x)(uv) = ((x)u)v."""
    return tuple(v[x - 1] for x in u)


def perm_inv(u: Perm) -> Perm:
    out = [0] * len(u)
    for i, x in enumerate(u):
        out[x - 1] = i + 1
    return tuple(out)


def perm_length(w: Perm) -> int:
    """Inversion count #{(i,j) : i < j, (j)w < (i)w}."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[j] < w[i])


def s_ij(n: int, i: int, j: int) -> Perm:
    """The chain permutation s_{i,j}; a reduced word of length |i - j| + 1."""
    w = list(range(1, n + 1))
    rng = range(i, j + 1) if i <= j else range(i, j - 1, -1)
    for t in rng:
        p, r = w.index(t), w.index(t + 1)  # right multiplication swaps values
        w[p], w[r] = t + 1, t
    return tuple(w)


def lmul_s(t: int, w: Perm) -> Perm:
    """s_t * w: swap the entries at positions t, t+1."""
    out = list(w)
    out[t - 1], out[t] = out[t], out[t - 1]
    return tuple(out)


def rmul_s(w: Perm, t: int) -> Perm:
    """w * s_t: swap the values t, t+1."""
    out = list(w)
    i, j = out.index(t), out.index(t + 1)
    out[i], out[j] = t + 1, t
    return tuple(out)


def left_descents(w: Perm):
    """Indices t with l(s_t w) < l(w)."""
    return [t for t in range(1, len(w)) if w[t - 1] > w[t]]


def right_descents(w: Perm):
    """Indices t with l(w s_t) < l(w)."""
    pos = perm_inv(w)
    return [t for t in range(1, len(w)) if pos[t] < pos[t - 1]]


def fixes_prefix(w: Perm, m: int) -> bool:
    """True iff w fixes 1..m pointwise."""
    return all(w[i] == i + 1 for i in range(m))


# ---------------------------------------------------------------------------
# the t-word normal form: w = t_{n-1} t_{n-2} ... t_1, t_j = 1 or s_{i_j, j}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TWord:
    """Chain factorization of a permutation.

    ``factors`` lists the nonidentity t_j as pairs (i_j, j), j strictly
    decreasing; the concatenated chains form a reduced word, so the length
    of the permutation is the sum of the chain lengths.
    """

    n: int
    factors: tuple

    def eval(self) -> Perm:
        w = identity_perm(self.n)
        for i, j in self.factors:
            w = perm_mul(w, s_ij(self.n, i, j))
        return w

    def length(self) -> int:
        return sum(j - i + 1 for i, j in self.factors)

    def letters(self) -> list:
        """A reduced word, as a list of generator indices."""
        out = []
        for i, j in self.factors:
            out.extend(range(i, j + 1))
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"s{i}" if i == j else f"s{i},{j}" for i, j in self.factors)


def t_word(w: Perm) -> TWord:
    """The unique chain factorization of w.

    t_j = s_{i,j} where i is the point the remaining permutation sends to
    j+1; peeling it off restricts the remainder to S_j.
    """
    n = len(w)
    cur = w
    factors = []
    for j in range(n - 1, 0, -1):
        i = cur.index(j + 1) + 1
        if i == j + 1:
            continue
        factors.append((i, j))
        cur = perm_mul(perm_inv(s_ij(n, i, j)), cur)
    return TWord(n, tuple(factors))


def reduced_word(w: Perm) -> list:
    return t_word(w).letters()


def tword_fits_transversal_shape(tw: TWord, k: int) -> bool:
    """Shape of the e_(k) transversal words: below index 2k only even t_j."""
    return all(j >= 2 * k or j % 2 == 0 for _, j in tw.factors)


# ---------------------------------------------------------------------------
# Brauer diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BrauerDiagram:
    """Perfect matching on 2n vertices; ``partner`` is the involution."""

    n: int
    partner: tuple

    def __post_init__(self):
        n2 = 2 * self.n
        if len(self.partner) != n2:
            raise ValueError("partner array has wrong length")
        for v in range(1, n2 + 1):
            u = self.partner[v - 1]
            if u == v or not 1 <= u <= n2 or self.partner[u - 1] != v:
                raise ValueError("partner is not a fixed-point-free involution")

    def top_edges(self):
        n = self.n
        return sorted(
            (v, self.partner[v - 1])
            for v in range(1, n + 1)
            if v < self.partner[v - 1] <= n
        )

    def bottom_edges(self):
        n = self.n
        return sorted(
            (v, self.partner[v - 1])
            for v in range(n + 1, 2 * n + 1)
            if v < self.partner[v - 1]
        )

    def vertical_edges(self):
        """Pairs (top vertex, bottom vertex - n)."""
        n = self.n
        return sorted(
            (v, self.partner[v - 1] - n)
            for v in range(1, n + 1)
            if self.partner[v - 1] > n
        )

    def layer(self) -> int:
        """Number of horizontal edges per row."""
        return sum(
            1 for v in range(1, self.n + 1) if self.partner[v - 1] <= self.n
        ) // 2

    def edges(self):
        return sorted(
            (v, self.partner[v - 1])
            for v in range(1, 2 * self.n + 1)
            if v < self.partner[v - 1]
        )

    def __str__(self) -> str:
        return render_diagram(self)


def diagram_from_edges(n: int, edges) -> BrauerDiagram:
    partner = [0] * (2 * n)
    for a, b in edges:
        partner[a - 1] = b
        partner[b - 1] = a
    return BrauerDiagram(n, tuple(partner))


def identity_diagram(n: int) -> BrauerDiagram:
    return diagram_from_edges(n, [(i, n + i) for i in range(1, n + 1)])


def e_k_diagram(n: int, k: int) -> BrauerDiagram:
    """Horizontal edges {2i-1, 2i} on both rows for i <= k, verticals elsewhere."""
    if not 0 <= 2 * k <= n:
        raise ValueError(f"need 0 <= 2k <= n, got k={k}, n={n}")
    edges = []
    for i in range(1, k + 1):
        edges.append((2 * i - 1, 2 * i))
        edges.append((n + 2 * i - 1, n + 2 * i))
    for i in range(2 * k + 1, n + 1):
        edges.append((i, n + i))
    return diagram_from_edges(n, edges)


def perm_to_diagram(w: Perm) -> BrauerDiagram:
    n = len(w)
    return diagram_from_edges(n, [(i, n + w[i - 1]) for i in range(1, n + 1)])


def star(d: BrauerDiagram) -> BrauerDiagram:
    """Rotate around the horizontal axis: swap the two rows."""
    n = d.n
    partner = [0] * (2 * n)
    for v in range(1, 2 * n + 1):
        fv = v + n if v <= n else v - n
        u = d.partner[v - 1]
        partner[fv - 1] = u + n if u <= n else u - n
    return BrauerDiagram(n, tuple(partner))


def top_swap(d: BrauerDiagram, j: int) -> BrauerDiagram:
    """The diagram s_j . d (swap top vertices j, j+1)."""
    return _vertex_swap(d, j, j + 1)


def bottom_swap(d: BrauerDiagram, j: int) -> BrauerDiagram:
    """The diagram d . s_j (swap bottom vertices j, j+1)."""
    return _vertex_swap(d, d.n + j, d.n + j + 1)


def _vertex_swap(d: BrauerDiagram, a: int, b: int) -> BrauerDiagram:
    m = {a: b, b: a}
    partner = [0] * (2 * d.n)
    for v in range(1, 2 * d.n + 1):
        partner[m.get(v, v) - 1] = m.get(d.partner[v - 1], d.partner[v - 1])
    return BrauerDiagram(d.n, tuple(partner))


def concat(d1: BrauerDiagram, d2: BrauerDiagram):
    """Stack d1 on top of d2; return (composite diagram, closed-loop count).

    Each middle vertex carries one edge from d1 and one from d2, so the glued
    graph decomposes into paths between outer vertices plus alternating
    cycles confined to the middle row; the cycles are the removed loops.
    """
    n = d1.n
    if d2.n != n:
        raise SizeMismatch(f"cannot concat diagrams with n={n} and n={d2.n}")
    link1 = {}
    link2 = {}
    for v in range(1, 2 * n + 1):
        u = d1.partner[v - 1]
        a = ("t", v) if v <= n else ("m", v - n)
        b = ("t", u) if u <= n else ("m", u - n)
        link1[a] = b
    for v in range(1, 2 * n + 1):
        u = d2.partner[v - 1]
        a = ("m", v) if v <= n else ("b", v - n)
        b = ("m", u) if u <= n else ("b", u - n)
        link2[a] = b

    edges = []
    mid_seen = set()
    done = set()
    for kind in ("t", "b"):
        for i in range(1, n + 1):
            start = (kind, i)
            if start in done:
                continue
            node = start
            use1 = kind == "t"
            while True:
                node = (link1 if use1 else link2)[node]
                if node[0] != "m":
                    break
                mid_seen.add(node[1])
                use1 = not use1
            done.add(start)
            done.add(node)
            a = start[1] if start[0] == "t" else n + start[1]
            b = node[1] if node[0] == "t" else n + node[1]
            edges.append((min(a, b), max(a, b)))

    loops = 0
    remaining = set(range(1, n + 1)) - mid_seen
    while remaining:
        m0 = remaining.pop()
        node = ("m", m0)
        use1 = True
        while True:
            node = (link1 if use1 else link2)[node]
            use1 = not use1
            if node == ("m", m0) and use1:
                break
            remaining.discard(node[1])
        loops += 1
    return diagram_from_edges(n, edges), loops


def concat_many(*diagrams):
    """Concatenate top to bottom, accumulating the loop count."""
    d, total = diagrams[0], 0
    for nxt in diagrams[1:]:
        d, g = concat(d, nxt)
        total += g
    return d, total


# ---------------------------------------------------------------------------
# the canonical factorization through e_(k)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReducedExpression:
    """The unique triple (w1, wd, w2) with d = w1 e_(k) wd e_(k) w2 up to the
    k loops this concatenation closes; lengths are additive."""

    k: int
    w1: Perm
    wd: Perm
    w2: Perm

    def length(self) -> int:
        return perm_length(self.w1) + perm_length(self.wd) + perm_length(self.w2)


def _is_vstar_shape(d: BrauerDiagram) -> bool:
    """Bottom row equal to the e_(k) row (crossings among verticals allowed)."""
    k = d.layer()
    want = [(2 * i - 1, 2 * i) for i in range(1, k + 1)]
    return [(a - d.n, b - d.n) for a, b in d.bottom_edges()] == want


def canon_word_nocross(d: BrauerDiagram) -> TWord:
    """Normal-form chain word w with d = w . e_(k), for a no-crossing diagram.

    Requires the bottom row of ``d`` to equal the e_(k) row and its vertical
    edges to be non-crossing.  Verticals are peeled right to left, then the
    horizontal edges are walked into place two columns at a time.
    """
    n, k = d.n, d.layer()
    if not _is_vstar_shape(d):
        raise ValueError("bottom row is not the e_(k) row")
    verts = d.vertical_edges()
    if [b for _, b in verts] != sorted(b for _, b in verts):
        raise ValueError("vertical edges cross")
    factors = []
    cur = d
    for j in range(n - 1, 2 * k - 1, -1):
        f = cur.partner[n + j]  # top vertex joined to bottom j+1
        if f == j + 1:
            continue
        factors.append((f, j))
        peel = perm_to_diagram(perm_inv(s_ij(n, f, j)))
        cur, g = concat(peel, cur)
        assert g == 0
    for jj in range(2 * k - 2, 0, -2):
        i = cur.partner[jj + 1]  # top partner of vertex jj + 2
        if i == jj + 1:
            continue
        factors.append((i, jj))
        peel = perm_to_diagram(perm_inv(s_ij(n, i, jj)))
        cur, g = concat(peel, cur)
        assert g == 0
    assert cur == e_k_diagram(n, k)
    return TWord(n, tuple(factors))


def split_vstar_diagram(d: BrauerDiagram):
    """Split a diagram with e_(k) bottom row into (w word, pi permutation).

    ``w`` is the no-crossing normal form and ``pi`` (fixing 1..2k) encodes
    how the verticals cross, so that d = (w pi) . e_(k) with additive length.
    """
    n, k = d.n, d.layer()
    if not _is_vstar_shape(d):
        raise ValueError("bottom row is not the e_(k) row")
    free_tops = [t for t, _ in sorted(d.vertical_edges())]
    pi = list(range(1, n + 1))
    edges = list(d.top_edges())
    for i in range(1, k + 1):
        edges.append((n + 2 * i - 1, n + 2 * i))
    for i, ft in enumerate(free_tops):
        pi[2 * k + i] = d.partner[ft - 1] - n
        edges.append((ft, n + 2 * k + i + 1))
    uncrossed = diagram_from_edges(n, edges)
    return canon_word_nocross(uncrossed), tuple(pi)


def vstar_length(d: BrauerDiagram) -> int:
    """Minimal word length of a diagram with e_(k) bottom row."""
    w, pi = split_vstar_diagram(d)
    return w.length() + perm_length(pi)


def canon_transversal(sigma: Perm, k: int) -> TWord:
    """The unique normal-form word rho with sigma . e_(k) = rho . e_(k) and
    l(rho) equal to the diagram length."""
    rho, _, _ = canon_transversal_split(sigma, k)
    return t_word(rho)


def canon_transversal_split(sigma: Perm, k: int):
    """(rho, w, pi): rho = w pi, w no-crossing part, pi in S_{2k+1..n}."""
    n = len(sigma)
    d, g = concat(perm_to_diagram(sigma), e_k_diagram(n, k))
    assert g == 0
    wword, pi = split_vstar_diagram(d)
    w = wword.eval()
    return perm_mul(w, pi), w, pi


def split_transversal(rho: Perm, k: int):
    """Factor rho = w . pi with w no-crossing and pi fixing 1..2k; unique.

    Raises NotInTransversal when rho is not length-minimal for its diagram.
    """
    n = len(rho)
    d, _ = concat(perm_to_diagram(rho), e_k_diagram(n, k))
    if vstar_length(d) != perm_length(rho):
        raise NotInTransversal(f"{rho} is not minimal over its diagram")
    wword, pi = split_vstar_diagram(d)
    w = wword.eval()
    if perm_mul(w, pi) != rho:
        raise NotInTransversal(f"{rho} does not factor through the transversal")
    return w, pi


def decompose(d: BrauerDiagram) -> ReducedExpression:
    """The canonical (w1, wd, w2) of a diagram with 2k horizontal edges.

    w1 carries the top horizontal edges, w2 the bottom ones, and wd (fixing
    1..2k) carries the crossing pattern of the vertical edges, numbered by
    free vertices left to right in both rows.
    """
    n, k = d.n, d.layer()
    free_tops = [v for v in range(1, n + 1) if d.partner[v - 1] > n]
    free_bots = [v for v in range(1, n + 1) if d.partner[n + v - 1] <= n]

    d1_edges = list(d.top_edges())
    for i in range(1, k + 1):
        d1_edges.append((n + 2 * i - 1, n + 2 * i))
    for i, ft in enumerate(free_tops):
        d1_edges.append((ft, n + 2 * k + i + 1))
    w1 = canon_word_nocross(diagram_from_edges(n, d1_edges)).eval()

    d2_edges = [(a, b) for a, b in d.bottom_edges()]
    for i in range(1, k + 1):
        d2_edges.append((2 * i - 1, 2 * i))
    for j, fb in enumerate(free_bots):
        d2_edges.append((2 * k + j + 1, n + fb))
    d2 = diagram_from_edges(n, d2_edges)
    w2 = perm_inv(canon_word_nocross(star(d2)).eval())

    bot_slot = {fb: j for j, fb in enumerate(free_bots)}
    wd = list(range(1, n + 1))
    for i, ft in enumerate(free_tops):
        wd[2 * k + i] = 2 * k + bot_slot[d.partner[ft - 1] - n] + 1
    return ReducedExpression(k, w1, tuple(wd), w2)


def reconstruct(n: int, expr: ReducedExpression) -> BrauerDiagram:
    """Inverse of :func:`decompose`; closes exactly k loops."""
    ek = e_k_diagram(n, expr.k)
    d, loops = concat_many(
        perm_to_diagram(expr.w1), ek, perm_to_diagram(expr.wd), ek,
        perm_to_diagram(expr.w2),
    )
    assert loops == expr.k
    return d


def diagram_length(d: BrauerDiagram) -> int:
    return decompose(d).length()


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _matchings(vs: tuple):
    if not vs:
        yield ()
        return
    a = vs[0]
    for idx in range(1, len(vs)):
        b = vs[idx]
        rest = vs[1:idx] + vs[idx + 1:]
        for m in _matchings(rest):
            yield ((a, b),) + m


def enumerate_diagrams(n: int):
    """All (2n-1)!! diagrams, in a stable order (sorted partner tuples)."""
    out = [
        diagram_from_edges(n, m)
        for m in _matchings(tuple(range(1, 2 * n + 1)))
    ]
    out.sort(key=lambda d: d.partner)
    return out


def enumerate_nocross(n: int, k: int):
    """All no-crossing diagrams with e_(k) bottom row, sorted."""
    out = []
    for tops in combinations(range(1, n + 1), 2 * k):
        for pairing in _matchings(tops):
            edges = list(pairing)
            for i in range(1, k + 1):
                edges.append((n + 2 * i - 1, n + 2 * i))
            free = [v for v in range(1, n + 1) if v not in tops]
            for i, ft in enumerate(free):
                edges.append((ft, n + 2 * k + i + 1))
            out.append(diagram_from_edges(n, edges))
    out.sort(key=lambda d: d.partner)
    return out


def enumerate_transversal(n: int, k: int):
    """The n!/(2^k (n-2k)! k!) normal-form permutations for layer k."""
    return [canon_word_nocross(d).eval() for d in enumerate_nocross(n, k)]


# ---------------------------------------------------------------------------
# the classical Brauer algebra over Q, with integer loop parameter N
# ---------------------------------------------------------------------------

class BrauerElement:
    """Finitely supported map diagram -> Fraction."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for d, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[d] = c

    @classmethod
    def basis(cls, d: BrauerDiagram) -> "BrauerElement":
        return cls(d.n, {d: Fraction(1)})

    def __add__(self, other: "BrauerElement") -> "BrauerElement":
        out = dict(self.terms)
        for d, c in other.terms.items():
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return BrauerElement(self.n, out)

    def scale(self, c) -> "BrauerElement":
        c = Fraction(c)
        return BrauerElement(self.n, {d: c * v for d, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BrauerElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"BrauerElement(n={self.n}, {len(self.terms)} terms)"


def brauer_product(x: BrauerElement, y: BrauerElement, N: int) -> BrauerElement:
    """Bilinear extension of concatenation, with loop factor N^gamma."""
    if x.n != y.n:
        raise SizeMismatch("mixed ranks in brauer_product")
    out: dict = {}
    for d1, c1 in x.terms.items():
        for d2, c2 in y.terms.items():
            d, g = concat(d1, d2)
            c = c1 * c2 * Fraction(N) ** g
            s = out.get(d, 0) + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
    return BrauerElement(x.n, out)


# ---------------------------------------------------------------------------
# presentation
# ---------------------------------------------------------------------------

def render_diagram(d: BrauerDiagram) -> str:
    """Two-row ASCII form: vertices labelled by shared edge letters."""
    labels = {}
    names = {}
    def name(idx):
        # a, b, ..., z, A, ..., then numbers
        if idx < 26:
            return chr(ord("a") + idx)
        if idx < 52:
            return chr(ord("A") + idx - 26)
        return f"<{idx}>"
    for a, b in d.edges():
        idx = len(names)
        names[(a, b)] = name(idx)
        labels[a] = labels[b] = names[(a, b)]
    width = max(2, len(str(d.n)) + 1)
    head = "".join(str(i).rjust(width) for i in range(1, d.n + 1))
    top = "".join(labels[v].rjust(width) for v in range(1, d.n + 1))
    bot = "".join(labels[v].rjust(width) for v in range(d.n + 1, 2 * d.n + 1))
    return "\n".join(["  " + head, "  " + top, "  " + bot])


def diagram_to_json(d: BrauerDiagram) -> dict:
    return {"n": d.n, "edges": [list(e) for e in d.edges()]}


def diagram_from_json(obj: dict) -> BrauerDiagram:
    return diagram_from_edges(obj["n"], [tuple(e) for e in obj["edges"]])
