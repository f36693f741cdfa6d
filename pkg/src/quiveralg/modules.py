"""Finite-dimensional modules over a bound quiver algebra.

A module is a quiver representation: one exact matrix per arrow, acting
source -> target on column vectors, with every algebra relation
evaluating to the zero matrix.  Arrow matrices compose along a path in
path order (first arrow acts first).
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .errors import NonSplitEndo
from .quivers import BoundQuiverAlgebra, Path, opposite

__all__ = ["Representation", "ModuleMap", "zero_rep", "simple", "projective",
           "injective", "projectives_sum", "injectives_sum", "regular",
           "coregular", "direct_sum", "hom_space", "dual", "structure",
           "projective_cover", "injective_envelope", "decompose",
           "is_isomorphic", "op_algebra", "random_module"]


def op_algebra(A: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """Opposite algebra, cached so that op(op(A)) is A itself."""
    cached = getattr(A, "_op", None)
    if cached is None:
        cached = opposite(A)
        A._op = cached
        cached._op = A
    return cached


class Representation:
    def __init__(self, algebra: BoundQuiverAlgebra, dims, action,
                 validate: bool = False):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.action = tuple(action)
        q = algebra.quiver
        for a, m in enumerate(self.action):
            want = (self.dims[q.target(a)], self.dims[q.source(a)])
            if m.shape != want:
                raise ValueError(f"arrow {a}: matrix shape {m.shape}, "
                                 f"expected {want}")
        if validate:
            self.check_relations()
        # optional bookkeeping for sums of projectives/injectives
        self.summands: tuple[int, ...] | None = None
        self.offsets: list[dict[int, int]] | None = None
        self.tag_kind: str | None = None

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        return f"Rep{self.dims}"

    def check_relations(self):
        for rel in self.algebra.relations:
            some = next(iter(rel.terms))
            s = some.source
            t = some.target(self.algebra.quiver)
            acc = self.field.zeros(self.dims[t], self.dims[s])
            for p, c in rel.terms.items():
                acc = self.field.add(acc, self.field.smul(
                    self.field.el(c), self.act_word(p.arrows, p.source)))
            if not self.field.is_zero(acc):
                raise ValueError("relations do not annihilate the module")

    def act_word(self, word: tuple[int, ...], source: int) -> np.ndarray:
        """Matrix of a path given by its arrow word (first arrow acts first)."""
        q = self.algebra.quiver
        m = self.field.eye(self.dims[source])
        for a in word:
            m = self.field.matmul(self.action[a], m)
        return m

    def act_element(self, elem: dict[int, object], source: int,
                    target: int) -> np.ndarray:
        """Matrix of an algebra element supported on paths source->target."""
        f = self.field
        acc = f.zeros(self.dims[target], self.dims[source])
        for bidx, c in elem.items():
            p = self.algebra.basis[bidx]
            acc = f.add(acc, f.smul(f.el(c), self.act_word(p.arrows, p.source)))
        return acc


class ModuleMap:
    def __init__(self, source: Representation, target: Representation,
                 blocks, verify: bool = False):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        for v, b in enumerate(self.blocks):
            want = (target.dims[v], source.dims[v])
            if b.shape != want:
                raise ValueError(f"vertex {v}: block {b.shape}, want {want}")
        if verify:
            assert self.is_morphism()

    @property
    def field(self):
        return self.source.field

    def is_morphism(self) -> bool:
        q = self.source.algebra.quiver
        f = self.field
        for a in range(q.n_arrows):
            s, t = q.source(a), q.target(a)
            lhs = f.matmul(self.blocks[t], self.source.action[a])
            rhs = f.matmul(self.target.action[a], self.blocks[s])
            if not f.equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(self.field.is_zero(b) for b in self.blocks)

    def compose(self, then: "ModuleMap") -> "ModuleMap":
        """self followed by `then` (matrix product then_v @ self_v)."""
        f = self.field
        return ModuleMap(self.source, then.target,
                         [f.matmul(then.blocks[v], self.blocks[v])
                          for v in range(len(self.blocks))])

    def add(self, other: "ModuleMap") -> "ModuleMap":
        f = self.field
        return ModuleMap(self.source, self.target,
                         [f.add(a, b) for a, b in
                          zip(self.blocks, other.blocks)])

    def scale(self, c) -> "ModuleMap":
        f = self.field
        return ModuleMap(self.source, self.target,
                         [f.smul(c, b) for b in self.blocks])

    def flatten(self) -> np.ndarray:
        f = self.field
        parts = [b.reshape(1, -1) for b in self.blocks if b.size]
        if not parts:
            return f.zeros(1, 0)
        return np.concatenate(parts, axis=1)

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zero_rep(A: BoundQuiverAlgebra) -> Representation:
    q = A.quiver
    f = A.field
    dims = [0] * q.n_vertices
    action = [f.zeros(0, 0) for _ in range(q.n_arrows)]
    return Representation(A, dims, action)


def simple(A: BoundQuiverAlgebra, v: int) -> Representation:
    q = A.quiver
    f = A.field
    dims = [1 if j == v else 0 for j in range(q.n_vertices)]
    action = [f.zeros(dims[q.target(a)], dims[q.source(a)])
              for a in range(q.n_arrows)]
    return Representation(A, dims, action)


def _arrow_path_index(A: BoundQuiverAlgebra, a: int) -> int:
    return A.bindex[Path(A.quiver.source(a), (a,))]


def projectives_sum(A: BoundQuiverAlgebra, vertices) -> Representation:
    """Direct sum of indecomposable projectives e_v A, with bookkeeping.

    Vertex-j basis: concatenation over summand slots s of the reduced
    paths vertices[s] -> j.
    """
    q = A.quiver
    f = A.field
    vertices = list(vertices)
    per_slot = [[A.basis_between(v, j) for j in range(q.n_vertices)]
                for v in vertices]
    offsets = []
    dims = [0] * q.n_vertices
    for s, rows in enumerate(per_slot):
        offsets.append({})
        for j in range(q.n_vertices):
            offsets[s][j] = dims[j]
            dims[j] += len(rows[j])
    action = []
    for a in range(q.n_arrows):
        s_v, t_v = q.source(a), q.target(a)
        m = f.zeros(dims[t_v], dims[s_v])
        apath = _arrow_path_index(A, a)
        for s, rows in enumerate(per_slot):
            src_paths = rows[s_v]
            tgt_paths = rows[t_v]
            tgt_pos = {b: k for k, b in enumerate(tgt_paths)}
            for col, b in enumerate(src_paths):
                prod = A.mult_basis(b, apath)
                for tb, c in prod.items():
                    m[offsets[s][t_v] + tgt_pos[tb],
                      offsets[s][s_v] + col] = f.el(c)
        action.append(m)
    rep = Representation(A, dims, action)
    rep.summands = tuple(vertices)
    rep.offsets = offsets
    rep.tag_kind = "P"
    return rep


def projective(A: BoundQuiverAlgebra, v: int) -> Representation:
    return projectives_sum(A, [v])


def regular(A: BoundQuiverAlgebra) -> Representation:
    """A as a module over itself: sum of all indecomposable projectives."""
    return projectives_sum(A, range(A.quiver.n_vertices))


def injectives_sum(A: BoundQuiverAlgebra, vertices) -> Representation:
    src = projectives_sum(op_algebra(A), vertices)
    rep = dual(src)
    rep.summands = tuple(vertices)
    rep.offsets = src.offsets  # dual keeps the per-vertex layout
    rep.tag_kind = "I"
    return rep


def injective(A: BoundQuiverAlgebra, v: int) -> Representation:
    return injectives_sum(A, [v])


def coregular(A: BoundQuiverAlgebra) -> Representation:
    """D(A): sum of all indecomposable injectives."""
    return injectives_sum(A, range(A.quiver.n_vertices))


def generator_vectors(P: Representation) -> list[tuple[int, np.ndarray]]:
    """For a tagged sum of projectives: (vertex, generator column) per slot."""
    assert P.summands is not None
    f = P.field
    out = []
    for s, v in enumerate(P.summands):
        col = f.zeros(P.dims[v], 1)
        col[P.offsets[s][v], 0] = f.one
        out.append((v, col))
    return out


def map_from_projectives(P: Representation, M: Representation,
                         gen_images) -> ModuleMap:
    """Module map out of a tagged projective sum, from generator images.

    gen_images[s]: column vector in M at vertex P.summands[s].
    """
    A = P.algebra
    f = P.field
    q = A.quiver
    blocks = [f.zeros(M.dims[j], P.dims[j]) for j in range(q.n_vertices)]
    for s, v in enumerate(P.summands):
        img = gen_images[s]
        for j in range(q.n_vertices):
            for k, b in enumerate(A.basis_between(v, j)):
                p = A.basis[b]
                vec = f.matmul(M.act_word(p.arrows, v), img)
                blocks[j][:, P.offsets[s][j] + k] = vec[:, 0]
    return ModuleMap(P, M, blocks)


def direct_sum(reps: list[Representation]):
    """(sum, inclusions, projections)."""
    assert reps
    A = reps[0].algebra
    q = A.quiver
    f = A.field
    dims = [sum(r.dims[v] for r in reps) for v in range(q.n_vertices)]
    action = []
    for a in range(q.n_arrows):
        s, t = q.source(a), q.target(a)
        m = f.zeros(dims[t], dims[s])
        ro = co = 0
        for r in reps:
            m[ro:ro + r.dims[t], co:co + r.dims[s]] = r.action[a]
            ro += r.dims[t]
            co += r.dims[s]
        action.append(m)
    total = Representation(A, dims, action)
    incls, projs = [], []
    off = [0] * q.n_vertices
    for r in reps:
        iblocks, pblocks = [], []
        for v in range(q.n_vertices):
            i = f.zeros(dims[v], r.dims[v])
            p = f.zeros(r.dims[v], dims[v])
            for k in range(r.dims[v]):
                i[off[v] + k, k] = f.one
                p[k, off[v] + k] = f.one
            iblocks.append(i)
            pblocks.append(p)
        incls.append(ModuleMap(r, total, iblocks))
        projs.append(ModuleMap(total, r, pblocks))
        for v in range(q.n_vertices):
            off[v] += r.dims[v]
    return total, incls, projs


# ---------------------------------------------------------------------------
# sub/quotient machinery
# ---------------------------------------------------------------------------

def _column_space(field, m: np.ndarray) -> np.ndarray:
    """Matrix whose columns are a basis of the column space of m."""
    if m.size == 0:
        return field.zeros(m.shape[0], 0)
    return field.row_space(m.T).T


def subrepresentation(M: Representation, spaces):
    """Subrepresentation from arrow-stable column-span subspaces.

    spaces[v]: matrix (dims[v] x k_v) whose columns span the subspace.
    Returns (rep, inclusion).
    """
    A = M.algebra
    q = A.quiver
    f = M.field
    bases = [_column_space(f, spaces[v]) for v in range(q.n_vertices)]
    dims = [b.shape[1] for b in bases]
    action = []
    for a in range(q.n_arrows):
        s, t = q.source(a), q.target(a)
        img = f.matmul(M.action[a], bases[s])
        x = f.solve(bases[t], img)
        if x is None:
            raise ValueError("subspaces are not arrow-stable")
        action.append(x)
    rep = Representation(A, dims, action)
    return rep, ModuleMap(rep, M, bases)


def quotient(M: Representation, spaces):
    """Quotient by the arrow-stable column-span subspaces; (rep, projection)."""
    A = M.algebra
    q = A.quiver
    f = M.field
    projs = []
    sections = []
    dims = []
    for v in range(q.n_vertices):
        S = _column_space(f, spaces[v])
        d = M.dims[v]
        # greedily extend columns of S to a basis by standard vectors
        cur = S
        comp_idx = []
        rank = f.rank(cur.T) if cur.size else 0
        for e in range(d):
            if rank == d:
                break
            cand = f.zeros(d, 1)
            cand[e, 0] = f.one
            test = np.concatenate([cur, cand], axis=1) if cur.size else cand
            rk = f.rank(test.T)
            if rk > rank:
                cur = test
                rank = rk
                comp_idx.append(e)
        C = f.zeros(d, len(comp_idx))
        for k, e in enumerate(comp_idx):
            C[e, k] = f.one
        T = np.concatenate([S, C], axis=1) if S.size else C
        if T.shape[1] != d and d > 0:
            raise ValueError("failed to complete basis")
        Tinv = f.solve(T, f.eye(d)) if d else f.zeros(0, 0)
        k0 = S.shape[1]
        projs.append(Tinv[k0:, :] if d else f.zeros(0, 0))
        sections.append(C)
        dims.append(len(comp_idx))
    action = []
    for a in range(q.n_arrows):
        s, t = q.source(a), q.target(a)
        action.append(f.matmul(projs[t], f.matmul(M.action[a], sections[s])))
    rep = Representation(A, dims, action)
    return rep, ModuleMap(M, rep, projs)


def map_kernel(phi: ModuleMap):
    """Kernel subrepresentation with inclusion."""
    f = phi.field
    spaces = [f.kernel(b).T for b in phi.blocks]
    return subrepresentation(phi.source, spaces)


def map_image(phi: ModuleMap):
    """Image subrepresentation (of the target) with inclusion."""
    return subrepresentation(phi.target, list(phi.blocks))


def map_cokernel(phi: ModuleMap):
    return quotient(phi.target, list(phi.blocks))


# ---------------------------------------------------------------------------
# Hom, duality, socle series
# ---------------------------------------------------------------------------

def hom_space(M: Representation, N: Representation) -> list[ModuleMap]:
    """k-basis of the intertwiner space Hom(M, N)."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    A = M.algebra
    q = A.quiver
    f = M.field
    sizes = [N.dims[v] * M.dims[v] for v in range(q.n_vertices)]
    offs = np.cumsum([0] + sizes)
    U = int(offs[-1])
    if U == 0:
        return []
    rows = []
    for a in range(q.n_arrows):
        s, t = q.source(a), q.target(a)
        r = N.dims[t] * M.dims[s]
        if r == 0:
            continue
        block = f.zeros(r, U)
        # vec_rowmajor(phi_t @ M_a) = kron(I, M_a^T) vec(phi_t)
        if sizes[t]:
            block[:, offs[t]:offs[t + 1]] = np.kron(
                f.eye(N.dims[t]), M.action[a].T)
        if sizes[s]:
            block[:, offs[s]:offs[s + 1]] = f.sub(
                block[:, offs[s]:offs[s + 1]],
                np.kron(N.action[a], f.eye(M.dims[s])))
        if f.kind == "GF":
            block = block % f.p
        rows.append(block)
    if rows:
        sys = np.concatenate(rows, axis=0)
        ker = f.kernel(sys)
    else:
        ker = f.eye(U)
    out = []
    for r in range(ker.shape[0]):
        blocks = []
        for v in range(q.n_vertices):
            blocks.append(ker[r, offs[v]:offs[v + 1]].reshape(
                N.dims[v], M.dims[v]))
        out.append(ModuleMap(M, N, blocks))
    return out


def hom_dim(M, N) -> int:
    return len(hom_space(M, N))


def dual(M: Representation) -> Representation:
    """k-dual over the opposite algebra: transposed arrow actions."""
    return Representation(op_algebra(M.algebra), M.dims,
                          [m.T.copy() for m in M.action])


def dual_map(phi: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(phi.target), dual(phi.source),
                     [b.T.copy() for b in phi.blocks])


def radical_series(M: Representation):
    """(radical subrep with inclusion)."""
    q = M.algebra.quiver
    f = M.field
    spaces = []
    for v in range(q.n_vertices):
        ins = [M.action[a] for a in q.arrows_into(v)]
        spaces.append(np.concatenate(ins, axis=1) if ins
                      else f.zeros(M.dims[v], 0))
    return subrepresentation(M, spaces)


def structure(M: Representation) -> dict:
    """radical (with inclusion), top (with projection), socle (with incl.)."""
    rad, rad_incl = radical_series(M)
    top, top_proj = quotient(M, [ri for ri in rad_incl.blocks])
    q = M.algebra.quiver
    f = M.field
    soc_spaces = []
    for v in range(q.n_vertices):
        outs = [M.action[a] for a in q.arrows_from(v)]
        if outs:
            soc_spaces.append(f.kernel(np.concatenate(outs, axis=0)).T)
        else:
            soc_spaces.append(f.eye(M.dims[v]))
    soc, soc_incl = subrepresentation(M, soc_spaces)
    return {"radical": (rad, rad_incl), "top": (top, top_proj),
            "socle": (soc, soc_incl)}


def projective_cover(M: Representation) -> ModuleMap:
    """Minimal surjection from a sum of indecomposable projectives."""
    A = M.algebra
    f = M.field
    st = structure(M)
    top, top_proj = st["top"]
    slots = []
    gens = []
    for v in range(A.quiver.n_vertices):
        mu = top.dims[v]
        if mu == 0:
            continue
        # lift the standard top basis back to M
        sec = f.solve(top_proj.blocks[v], f.eye(mu))
        for r in range(mu):
            slots.append(v)
            gens.append(sec[:, r:r + 1])
    P = projectives_sum(A, slots)
    return map_from_projectives(P, M, gens)


def injective_envelope(M: Representation) -> ModuleMap:
    """Minimal embedding into a sum of indecomposable injectives."""
    cov = projective_cover(dual(M))
    emb = dual_map(cov)  # D(M-dual) -> D(P'); D(D(M)) is literally M again
    src = Representation(M.algebra, M.dims, M.action)
    tgt = emb.target
    tgt.summands = cov.source.summands
    return ModuleMap(M, tgt, emb.blocks)


# ---------------------------------------------------------------------------
# endomorphism rings, idempotent splitting, isomorphism testing
# ---------------------------------------------------------------------------

def _gram_radical(f, basis: list[ModuleMap]) -> np.ndarray:
    """Kernel (row basis) of the trace form on End(M); = rad End(M)
    whenever char k = 0 or char k > dim M."""
    n = len(basis)
    g = f.zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            tr = f.zero
            for v in range(len(basis[i].blocks)):
                prod = f.matmul(basis[i].blocks[v], basis[j].blocks[v])
                if prod.shape[0]:
                    tr = tr + np.trace(prod)
            if f.kind == "GF":
                tr = tr % f.p
            g[i, j] = tr
            g[j, i] = tr
    return f.kernel(g)


# -- univariate polynomial helpers (coefficient lists, low degree first) ----

def _pnorm(f, c):
    while len(c) > 1 and c[-1] == f.zero:
        c.pop()
    return c

def _pmul(f, a, b):
    out = [f.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == f.zero:
            continue
        for j, y in enumerate(b):
            v = out[i + j] + x * y
            out[i + j] = v % f.p if f.kind == "GF" else v
    return _pnorm(f, out)

def _pmod(f, a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = f.inv_el(lb)
    while len(a) - 1 >= db and any(x != f.zero for x in a):
        da, la = len(a) - 1, a[-1]
        c = la * inv
        if f.kind == "GF":
            c = c % f.p
        for i in range(db + 1):
            v = a[da - db + i] - c * b[i]
            a[da - db + i] = v % f.p if f.kind == "GF" else v
        a = _pnorm(f, a)
        if len(a) - 1 < db:
            break
        if all(x == f.zero for x in a):
            break
    return _pnorm(f, a)

def _pgcd(f, a, b):
    a, b = _pnorm(f, list(a)), _pnorm(f, list(b))
    while any(x != f.zero for x in b):
        a, b = b, _pmod(f, a, b)
    if any(x != f.zero for x in a):
        inv = f.inv_el(a[-1])
        a = [(x * inv) % f.p if f.kind == "GF" else x * inv for x in a]
    return a

def _pderiv(f, a):
    out = [(f.el(i) * a[i]) % f.p if f.kind == "GF" else f.el(i) * a[i]
           for i in range(1, len(a))]
    return _pnorm(f, out or [f.zero])

def _ppowmod(f, base, e, mod):
    result = [f.one]
    base = _pmod(f, base, mod)
    while e > 0:
        if e & 1:
            result = _pmod(f, _pmul(f, result, base), mod)
        e >>= 1
        base = _pmod(f, _pmul(f, base, base), mod)
    return result


def _coprime_split(f, m, rng):
    """A pair (f1, f2) of coprime monic nonunits with f1*f2 = m, or None."""
    if len(m) <= 2:
        return None
    d = _pderiv(f, m)
    if all(x == f.zero for x in d):
        return None  # p-th power; excluded by the p > dim guard in practice
    g = _pgcd(f, m, d)
    if 1 < len(g) < len(m):
        res = _lift_split(f, m, g)
        if res is not None:
            return res
    u = _pquo(f, m, g)  # squarefree part
    if len(u) <= 2:
        return None  # m is a power of a single irreducible
    if f.kind != "GF":
        return _rational_root_split(f, m, u)
    # distinct-degree filtration on the squarefree part
    p = f.p
    x = [f.zero, f.one]
    h = list(x)
    for deg in range(1, len(u) - 1):
        h = _ppowmod(f, h, p, u)
        g2 = _pgcd(f, _psub(f, h, x), u)
        if 1 < len(g2) < len(u):
            return _lift_split(f, m, g2)
        if len(g2) == len(u):
            # every irreducible factor of u has degree exactly `deg`
            if len(u) - 1 == deg:
                return None  # u irreducible
            for _ in range(60):  # Cantor-Zassenhaus equal-degree split
                r = [f.el(rng.randrange(p)) for _ in range(2 * deg)] + [f.one]
                w = _ppowmod(f, r, (p ** deg - 1) // 2, u)
                g3 = _pgcd(f, _psub(f, w, [f.one]), u)
                if 1 < len(g3) < len(u):
                    return _lift_split(f, m, g3)
            return None
    return None


def _pquo(f, a, b):
    """Exact quotient a/b (remainder assumed zero)."""
    a = list(a)
    out = [f.zero] * max(1, len(a) - len(b) + 1)
    inv = f.inv_el(b[-1])
    while len(a) >= len(b) and any(x != f.zero for x in a):
        c = a[-1] * inv
        if f.kind == "GF":
            c = c % f.p
        k = len(a) - len(b)
        out[k] = c
        for i in range(len(b)):
            v = a[k + i] - c * b[i]
            a[k + i] = v % f.p if f.kind == "GF" else v
        a = _pnorm(f, a)
        if all(x == f.zero for x in a):
            break
    return _pnorm(f, out)


def _lift_split(f, m, g):
    """Given g | m nontrivial with gcd(g, m/g) possibly nontrivial, produce
    a coprime split of m by saturating g."""
    g1 = g
    while True:
        rest = _pquo(f, m, g1)
        h = _pgcd(f, g1, rest)
        if len(h) == 1:
            return g1, rest
        g1 = _pmul(f, g1, h)
        if len(g1) >= len(m):
            return None


def _rational_root_split(f, m, sf):
    # try small integer roots on the squarefree part
    for num in range(-12, 13):
        val = sf[-1]
        for c in reversed(sf[:-1]):
            val = val * f.el(num) + c
        if val == f.zero:
            return _lift_split(f, m, [-f.el(num), f.one])
    return None


def endo_algebra(M: Representation):
    """(basis maps, structure-constant multiplier, coordinates solver)."""
    basis = hom_space(M, M)
    f = M.field
    n = len(basis)
    flat = np.concatenate([b.flatten() for b in basis], axis=0) if n else \
        f.zeros(0, 0)
    cache: dict[tuple[int, int], np.ndarray] = {}

    def coords(phi: ModuleMap) -> np.ndarray:
        x = f.solve(flat.T, phi.flatten().T)
        assert x is not None
        return x[:, 0]

    def mul(i: int, j: int) -> np.ndarray:
        # basis[i] * basis[j] := basis[j] after basis[i]  (apply i first)
        hit = cache.get((i, j))
        if hit is None:
            hit = coords(basis[i].compose(basis[j]))
            cache[(i, j)] = hit
        return hit

    return basis, mul, coords


def _identity_coords(M, basis, coords):
    f = M.field
    eye_blocks = [f.eye(d) for d in M.dims]
    return coords(ModuleMap(M, M, eye_blocks))


def decompose(M: Representation, seed: int = 11,
              _depth: int = 0) -> list[tuple[Representation, int]]:
    """Indecomposable direct summands with multiplicities.

    Raises NonSplitEndo when a split into matrix algebras over k cannot be
    certified (division-algebra quotient bigger than k suspected).
    """
    if M.is_zero():
        return []
    f = M.field
    if f.kind == "GF" and f.p <= M.total_dim:
        raise NonSplitEndo("field characteristic too small for the "
                           "trace-form radical; use a larger prime")
    rng = random.Random(seed + _depth)
    basis, mul, coords = endo_algebra(M)
    n = len(basis)
    rad_rows = _gram_radical(f, basis)
    sdim = n - rad_rows.shape[0]
    if sdim == 1:
        return [(M, 1)]

    # quotient S = End/rad in explicit coordinates
    rad_basis = rad_rows  # rows: coordinates of a basis of rad
    # choose a complement of rad inside End by extending to a basis
    comp = []
    cur = rad_basis
    for e in range(n):
        if cur.shape[0] == n:
            break
        cand = f.zeros(1, n)
        cand[0, e] = f.one
        test = np.concatenate([cur, cand], axis=0) if cur.size else cand
        if f.rank(test) > f.rank(cur):
            cur = test
            comp.append(e)
    # projection to S-coordinates: solve against [rad; comp] basis
    full = np.concatenate(
        [rad_basis, np.stack([_unit_row(f, n, e) for e in comp])], axis=0) \
        if rad_basis.size else np.stack([_unit_row(f, n, e) for e in comp])

    def to_S(vec: np.ndarray) -> np.ndarray:
        x = f.solve(full.T, vec.reshape(-1, 1))
        return x[rad_basis.shape[0]:, 0]

    def S_to_end(svec: np.ndarray) -> np.ndarray:
        out = f.zeros(1, n)[0]
        for k, e in enumerate(comp):
            out = f.add(out, f.smul(svec[k], _unit_row(f, n, e)))
        return out

    def S_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        ex, ey = S_to_end(x), S_to_end(y)
        acc = f.zeros(1, n)[0]
        for i in range(n):
            if ex[i] == f.zero:
                continue
            for j in range(n):
                if ey[j] == f.zero:
                    continue
                acc = f.add(acc, f.smul(ex[i] * ey[j], mul(i, j)))
        return to_S(acc)

    one_S = to_S(_identity_coords(M, basis, coords))

    idem = None
    for _ in range(32):
        svec = np.array([f.rand_el(rng) for _ in range(sdim)],
                        dtype=np.int64 if f.kind == "GF" else object)
        m = _minpoly_in(f, S_mul, one_S, svec, sdim)
        split = _coprime_split(f, m, rng)
        if split is None:
            continue
        f1, f2 = split
        e = _crt_idempotent(f, S_mul, one_S, svec, m, f1, f2)
        if e is not None:
            idem = e
            break
    if idem is None:
        raise NonSplitEndo("no splitting idempotent found in End/rad after "
                           "32 trials")

    # lift to an exact idempotent of End(M) by Newton iteration
    x = S_to_end(idem)
    phi = _combine(M, basis, x)
    for _ in range(2 * M.total_dim + 4):
        sq = phi.compose(phi)
        if all(f.equal(a, b) for a, b in zip(sq.blocks, phi.blocks)):
            break
        # x <- 3x^2 - 2x^3
        cube = sq.compose(phi)
        phi = sq.scale(f.el(3)).add(cube.scale(f.el(-2)))
    else:
        raise NonSplitEndo("idempotent lifting did not converge")

    img1, _ = map_image(phi)
    one = ModuleMap(M, M, [f.eye(d) for d in M.dims])
    phic = one.add(phi.scale(f.el(-1)))
    img2, _ = map_image(phic)
    assert img1.total_dim + img2.total_dim == M.total_dim
    if img1.is_zero() or img2.is_zero():
        raise NonSplitEndo("degenerate idempotent split")
    parts = decompose(img1, seed, _depth + 1) + decompose(img2, seed, _depth + 1)
    # group isomorphic summands
    grouped: list[tuple[Representation, int]] = []
    for rep, mult in parts:
        for k, (r0, m0) in enumerate(grouped):
            if is_isomorphic(rep, r0, seed=seed):
                grouped[k] = (r0, m0 + mult)
                break
        else:
            grouped.append((rep, mult))
    return grouped


def _unit_row(f, n, e):
    r = f.zeros(1, n)[0]
    r[e] = f.one
    return r


def _combine(M, basis, coeffs) -> ModuleMap:
    f = M.field
    blocks = [f.zeros(d, d) for d in M.dims]
    out = ModuleMap(M, M, blocks)
    for i, c in enumerate(coeffs):
        if c != f.zero:
            out = out.add(basis[i].scale(c))
    return out


def _minpoly_in(f, mul, one, s, dim):
    """Minimal polynomial of s in a unital algebra given by mul/one."""
    rows = [one]
    cur = one
    while True:
        cur = mul(cur, s)
        stack = np.stack(rows + [cur])
        if f.rank(stack) < len(rows) + 1:
            # solve dependence: cur = sum c_i rows[i]
            x = f.solve(np.stack(rows).T, cur.reshape(-1, 1))
            assert x is not None
            coeffs = [f.neg(x[i, 0]) for i in range(len(rows))] + [f.one]
            return _pnorm(f, coeffs)
        rows.append(cur)
        if len(rows) > dim + 1:
            raise AssertionError("minpoly search exceeded algebra dimension")


def _crt_idempotent(f, mul, one, s, m, f1, f2):
    """e = v*f2 evaluated at s, where u*f1 + v*f2 = 1."""
    g, u, v = _pxgcd(f, f1, f2)
    if len(g) != 1:
        return None
    inv = f.inv_el(g[0])
    v = [(c * inv) % f.p if f.kind == "GF" else c * inv for c in v]
    e_poly = _pmod(f, _pmul(f, v, f2), m)
    # evaluate by horner in the algebra
    acc = np.zeros_like(one)
    for c in reversed(e_poly):
        acc = mul(acc, s)
        if c != f.zero:
            acc = f.add(acc, f.smul(c, one))
    ee = mul(acc, acc)
    if not f.equal(ee, acc):
        return None
    if f.is_zero(acc) or f.equal(acc, one):
        return None
    return acc


def _pxgcd(f, a, b):
    a0, b0 = _pnorm(f, list(a)), _pnorm(f, list(b))
    r0, r1 = a0, b0
    s0, s1 = [f.one], [f.zero]
    t0, t1 = [f.zero], [f.one]
    while any(x != f.zero for x in r1):
        q = _pdivmod_q(f, r0, r1)
        r0, r1 = r1, _psub(f, r0, _pmul(f, q, r1))
        s0, s1 = s1, _psub(f, s0, _pmul(f, q, s1))
        t0, t1 = t1, _psub(f, t0, _pmul(f, q, t1))
    return r0, s0, t0


def _psub(f, a, b):
    out = [f.zero] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        v = out[i] - x
        out[i] = v % f.p if f.kind == "GF" else v
    return _pnorm(f, out)


def _pdivmod_q(f, a, b):
    a = list(a)
    out = [f.zero] * max(1, len(a) - len(b) + 1)
    inv = f.inv_el(b[-1])
    while len(a) >= len(b) and any(x != f.zero for x in a):
        c = a[-1] * inv
        if f.kind == "GF":
            c = c % f.p
        k = len(a) - len(b)
        out[k] = c
        for i in range(len(b)):
            v = a[k + i] - c * b[i]
            a[k + i] = v % f.p if f.kind == "GF" else v
        a = _pnorm(f, a)
        if all(x == f.zero for x in a):
            break
    return _pnorm(f, out)


def is_isomorphic(M: Representation, N: Representation, seed: int = 7,
                  trials: int = 32) -> bool:
    """Isomorphism test: dimension vectors plus invertible-intertwiner search."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    homs = hom_space(M, N)
    if not homs:
        return False
    f = M.field
    rng = random.Random(seed)

    def invertible(phi: ModuleMap) -> bool:
        return all(f.rank(b) == b.shape[0] for b in phi.blocks)

    for i in range(min(len(homs), 4)):
        if invertible(homs[i]):
            return True
    for _ in range(trials):
        phi = homs[0].scale(f.rand_el(rng))
        for h in homs[1:]:
            phi = phi.add(h.scale(f.rand_el(rng)))
        if invertible(phi):
            return True
    if f.kind == "GF" and f.p ** len(homs) <= 4096:
        for coeffs in itertools.product(range(f.p), repeat=len(homs)):
            phi = homs[0].scale(f.el(coeffs[0]))
            for h, c in zip(homs[1:], coeffs[1:]):
                phi = phi.add(h.scale(f.el(c)))
            if invertible(phi):
                return True
        return False
    # structural fallback: match indecomposable summands
    dm = decompose(M, seed=seed)
    dn = decompose(N, seed=seed)
    if sorted(m for _, m in dm) != sorted(m for _, m in dn):
        return False
    used = [False] * len(dn)
    for rep, mult in dm:
        for j, (rep2, mult2) in enumerate(dn):
            if used[j] or mult != mult2 or rep.dims != rep2.dims:
                continue
            if any(invertible(h) for h in hom_space(rep, rep2)[:4]):
                used[j] = True
                break
        else:
            return False
    return True


def random_module(A: BoundQuiverAlgebra, rng: random.Random,
                  max_gens: int = 3) -> Representation:
    """A random quotient of a small sum of projectives (always a module)."""
    nv = A.quiver.n_vertices
    slots = [rng.randrange(nv) for _ in range(rng.randint(1, max_gens))]
    P = projectives_sum(A, slots)
    f = A.field
    rad, rad_incl = radical_series(P)
    # random submodule of rad P: generated by a few random elements
    k = rng.randint(0, 2)
    gens = []
    for _ in range(k):
        v = rng.randrange(nv)
        if rad.dims[v] == 0:
            continue
        col = f.zeros(rad.dims[v], 1)
        for r in range(rad.dims[v]):
            col[r, 0] = f.rand_el(rng)
        gens.append((v, f.matmul(rad_incl.blocks[v], col)))
    spaces = _generated_submodule_spaces(P, gens)
    rep, _ = quotient(P, spaces)
    return rep


def _generated_submodule_spaces(M: Representation, gens):
    """Arrow-stable subspaces generated by (vertex, column) seeds."""
    q = M.algebra.quiver
    f = M.field
    spaces = [f.zeros(M.dims[v], 0) for v in range(q.n_vertices)]
    frontier = []
    for v, col in gens:
        spaces[v] = np.concatenate([spaces[v], col], axis=1)
        frontier.append((v, col))
    while frontier:
        v, col = frontier.pop()
        for a in q.arrows_from(v):
            t = q.target(a)
            img = f.matmul(M.action[a], col)
            if f.is_zero(img):
                continue
            test = np.concatenate([spaces[t], img], axis=1)
            if f.rank(test.T) > f.rank(spaces[t].T):
                spaces[t] = test
                frontier.append((t, img))
    return spaces
