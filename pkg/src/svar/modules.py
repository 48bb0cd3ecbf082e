"""Finite dimensional modules over a structure-constant algebra.

A Representation assigns a vector space to every vertex and a matrix to
every degree-1 basis element of the algebra (for a quiver algebra these
are the arrows; for an enveloping algebra the one-sided generator
pairs).  Module elements live in the flattened space, the concatenation
of vertex components in vertex order.

Bimodules over A are representations of enveloping(A); helpers below
translate between the two points of view.
"""

from __future__ import annotations

import warnings

import numpy as np

from .algebra import EnvelopingAlgebra, FDAlgebra
from .linalg import (
    DimensionMismatch,
    Matrix,
    column_space_basis,
    kernel_basis,
    rank,
    rref,
    solve_matrix,
)


class SearchBudgetExceeded(Exception):
    """An exhaustive scan was cut off; the answer is unknown, not 'no'."""


class NonProjectiveWarning(UserWarning):
    pass


class Representation:
    """Module over an FDAlgebra, given per-vertex and per-generator data."""

    def __init__(self, algebra: FDAlgebra, dims, gen_mats: dict[int, Matrix], name=""):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n_vertices:
            raise DimensionMismatch("one dimension per vertex required")
        self.total_dim = sum(self.dims)
        self.offsets = []
        off = 0
        for d in self.dims:
            self.offsets.append(off)
            off += d
        self.name = name
        self.gen_mats = {}
        for g in algebra.generators:
            b = algebra.basis[g]
            m = gen_mats.get(g)
            if m is None:
                m = Matrix.zeros(algebra.field, self.dims[b.target], self.dims[b.source])
            if m.shape != (self.dims[b.target], self.dims[b.source]):
                raise DimensionMismatch(
                    f"generator {b.label}: matrix {m.shape}, expected "
                    f"{(self.dims[b.target], self.dims[b.source])}"
                )
            self.gen_mats[g] = m
        self._act_cache: dict[int, Matrix] = {}
        self._cache: dict = {}  # shared memo slot (resolutions etc.)

    @property
    def field(self):
        return self.algebra.field

    def vertex_slice(self, v: int) -> slice:
        return slice(self.offsets[v], self.offsets[v] + self.dims[v])

    def component(self, vec: Matrix, v: int) -> Matrix:
        return vec.submatrix(self.vertex_slice(v), slice(None))

    def act_basis(self, i: int) -> Matrix:
        """Action of the i-th algebra basis element on the flattened space."""
        if i in self._act_cache:
            return self._act_cache[i]
        A = self.algebra
        b = A.basis[i]
        m = np.zeros((self.total_dim, self.total_dim), dtype=np.int64)
        if i in A.idempotents:
            v = A.idempotents.index(i)
            sl = self.vertex_slice(v)
            m[sl, sl] = np.eye(self.dims[v], dtype=np.int64)
        elif b.degree == 1:
            blk = self.gen_mats[i]
            m[self.vertex_slice(b.target), self.vertex_slice(b.source)] = blk.a
        else:
            for c, g, j in A.factorization(i):
                m = (m + c * (self.act_basis(g).a @ self.act_basis(j).a)) % A.field.p
        out = Matrix(A.field, m)
        self._act_cache[i] = out
        return out

    def act_vector(self, coeffs: dict[int, int]) -> Matrix:
        """Action of an algebra element given by basis coordinates."""
        m = np.zeros((self.total_dim, self.total_dim), dtype=np.int64)
        for i, c in coeffs.items():
            m = (m + c * self.act_basis(i).a) % self.algebra.field.p
        return Matrix(self.algebra.field, m)

    def verify_relations(self) -> bool:
        """Associativity of the action on all (generator, basis) pairs."""
        A = self.algebra
        p = A.field.p
        for g in A.generators:
            for j in range(A.dim):
                lhs = self.act_vector(A.product(g, j))
                rhs = (self.act_basis(g).a @ self.act_basis(j).a) % p
                if not np.array_equal(lhs.a, rhs):
                    return False
        return True

    def __repr__(self):
        nm = self.name or f"dims={self.dims}"
        return f"Representation({nm})"


class ModuleMap:
    """Morphism of representations: one matrix per vertex, intertwining."""

    def __init__(self, source: Representation, target: Representation, blocks):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        for v, b in enumerate(self.blocks):
            if b.shape != (target.dims[v], source.dims[v]):
                raise DimensionMismatch(
                    f"block {v}: {b.shape}, expected {(target.dims[v], source.dims[v])}"
                )

    @staticmethod
    def zero(source, target) -> "ModuleMap":
        return ModuleMap(
            source,
            target,
            [
                Matrix.zeros(source.field, target.dims[v], source.dims[v])
                for v in range(source.algebra.n_vertices)
            ],
        )

    @staticmethod
    def identity(M: Representation) -> "ModuleMap":
        return ModuleMap(
            M, M, [Matrix.identity(M.field, d) for d in M.dims]
        )

    @staticmethod
    def from_total(source, target, total: Matrix) -> "ModuleMap":
        blocks = []
        for v in range(source.algebra.n_vertices):
            blocks.append(
                total.submatrix(target.vertex_slice(v), source.vertex_slice(v))
            )
        return ModuleMap(source, target, blocks)

    def total(self) -> Matrix:
        m = np.zeros((self.target.total_dim, self.source.total_dim), dtype=np.int64)
        for v, b in enumerate(self.blocks):
            m[self.target.vertex_slice(v), self.source.vertex_slice(v)] = b.a
        return Matrix(self.source.field, m)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise DimensionMismatch("maps not composable")
        return ModuleMap(
            other.source,
            self.target,
            [sb @ ob for sb, ob in zip(self.blocks, other.blocks)],
        )

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(
            self.source, self.target,
            [a + b for a, b in zip(self.blocks, other.blocks)],
        )

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(
            self.source, self.target,
            [a - b for a, b in zip(self.blocks, other.blocks)],
        )

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [b.scale(c) for b in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_intertwiner(self) -> bool:
        A = self.source.algebra
        for g in A.generators:
            b = A.basis[g]
            lhs = self.blocks[b.target] @ self.source.gen_mats[g]
            rhs = self.target.gen_mats[g] @ self.blocks[b.source]
            if lhs != rhs:
                return False
        return True

    def is_isomorphism(self) -> bool:
        return all(
            b.rows == b.cols and rank(b) == b.rows for b in self.blocks
        )

    def rank(self) -> int:
        return sum(rank(b) for b in self.blocks)

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def zero_rep(A: FDAlgebra) -> Representation:
    return Representation(A, [0] * A.n_vertices, {}, name="0")


def simple_rep(A: FDAlgebra, v: int) -> Representation:
    dims = [1 if w == v else 0 for w in range(A.n_vertices)]
    return Representation(A, dims, {}, name=f"S({A.vertex_names[v]})")


def trivial_module(A: FDAlgebra) -> Representation:
    """Direct sum of one copy of each simple: A/rad(A) as a module."""
    return Representation(A, [1] * A.n_vertices, {}, name="k")


def direct_sum(reps: list[Representation]):
    """Block-diagonal sum; returns (sum, inclusions, projections)."""
    A = reps[0].algebra
    dims = [sum(r.dims[v] for r in reps) for v in range(A.n_vertices)]
    gen_mats = {}
    for g in A.generators:
        b = A.basis[g]
        blocks = [r.gen_mats[g].a for r in reps]
        m = np.zeros((dims[b.target], dims[b.source]), dtype=np.int64)
        ro = co = 0
        for r, blk in zip(reps, blocks):
            m[ro : ro + r.dims[b.target], co : co + r.dims[b.source]] = blk
            ro += r.dims[b.target]
            co += r.dims[b.source]
        gen_mats[g] = Matrix(A.field, m)
    S = Representation(A, dims, gen_mats, name="(+)".join(r.name or "?" for r in reps))
    incls, projs = [], []
    offs = [0] * A.n_vertices
    for r in reps:
        iblocks, pblocks = [], []
        for v in range(A.n_vertices):
            inc = np.zeros((dims[v], r.dims[v]), dtype=np.int64)
            for t in range(r.dims[v]):
                inc[offs[v] + t, t] = 1
            iblocks.append(Matrix(A.field, inc))
            pblocks.append(Matrix(A.field, inc.T))
        incls.append(ModuleMap(r, S, iblocks))
        projs.append(ModuleMap(S, r, pblocks))
        for v in range(A.n_vertices):
            offs[v] += r.dims[v]
    return S, incls, projs


def sub_representation(R: Representation, vertex_bases: list[Matrix], name=""):
    """Subrepresentation spanned by the given per-vertex column bases.

    The span must be action-closed; generator matrices are re-expressed
    in the new bases by solving.
    """
    A = R.algebra
    dims = [b.cols for b in vertex_bases]
    gen_mats = {}
    for g in A.generators:
        b = A.basis[g]
        image = R.gen_mats[g] @ vertex_bases[b.source]
        if dims[b.target] == 0:
            if not image.is_zero():
                raise ValueError("subspace not action-closed")
            gen_mats[g] = Matrix.zeros(A.field, 0, dims[b.source])
            continue
        X = solve_matrix(vertex_bases[b.target], image)
        if X is None:
            raise ValueError("subspace not action-closed")
        gen_mats[g] = X
    S = Representation(A, dims, gen_mats, name=name)
    incl = ModuleMap(S, R, vertex_bases)
    return S, incl


def quotient_representation(R: Representation, vertex_bases: list[Matrix], name=""):
    """Quotient by an action-closed subspace; returns (Q, projection)."""
    A = R.algebra
    projs, sections, dims = [], [], []
    for v in range(A.n_vertices):
        pr, sec = _space_quotient(A.field, R.dims[v], vertex_bases[v])
        projs.append(pr)
        sections.append(sec)
        dims.append(pr.rows)
    gen_mats = {}
    for g in A.generators:
        b = A.basis[g]
        gen_mats[g] = projs[b.target] @ (R.gen_mats[g] @ sections[b.source])
    Q = Representation(A, dims, gen_mats, name=name)
    proj = ModuleMap(R, Q, projs)
    return Q, proj


def kernel_rep(f: ModuleMap, name=""):
    """Kernel subrepresentation with its inclusion."""
    bases = [kernel_basis(b) for b in f.blocks]
    return sub_representation(f.source, bases, name=name)


def image_rep(f: ModuleMap, name=""):
    bases = [column_space_basis(b) for b in f.blocks]
    return sub_representation(f.target, bases, name=name)


def radical_bases(R: Representation) -> list[Matrix]:
    """Per-vertex bases of rad(A).R = sum of generator images."""
    A = R.algebra
    cols = [[] for _ in range(A.n_vertices)]
    for g in A.generators:
        b = A.basis[g]
        cols[b.target].append(R.gen_mats[g])
    out = []
    for v in range(A.n_vertices):
        if not cols[v] or R.dims[v] == 0:
            out.append(Matrix.zeros(A.field, R.dims[v], 0))
        else:
            out.append(column_space_basis(Matrix.hstack(cols[v])))
    return out


def radical_rep(R: Representation):
    return sub_representation(R, radical_bases(R), name=f"rad({R.name})")


def top_multiplicities(R: Representation) -> tuple[int, ...]:
    rb = radical_bases(R)
    return tuple(R.dims[v] - rb[v].cols for v in range(R.algebra.n_vertices))


def top_rep(R: Representation):
    """R / rad.R with the projection."""
    return quotient_representation(R, radical_bases(R), name=f"top({R.name})")


class ProjectiveRep(Representation):
    """Finite direct sum of the indecomposable projectives A.e_v.

    Flat coordinates are indexed by pairs (summand j, algebra basis
    element b with source = vertex of summand j), grouped per target
    vertex of b.  A map out of this module is freely determined by the
    images of the summand generators e_{v_j}.
    """

    def __init__(self, algebra: FDAlgebra, gens: tuple[int, ...], name=""):
        self.gens = tuple(gens)
        coords: list[list[tuple[int, int]]] = [[] for _ in range(algebra.n_vertices)]
        for j, v in enumerate(self.gens):
            for i, b in enumerate(algebra.basis):
                if b.source == v:
                    coords[b.target].append((j, i))
        self.coords = tuple(tuple(c) for c in coords)
        dims = [len(c) for c in coords]
        index = {}
        for w in range(algebra.n_vertices):
            for pos, key in enumerate(coords[w]):
                index[key] = (w, pos)
        self._coord_index = index
        gen_mats = {}
        for g in algebra.generators:
            bg = algebra.basis[g]
            m = np.zeros((dims[bg.target], dims[bg.source]), dtype=np.int64)
            for pos, (j, i) in enumerate(coords[bg.source]):
                for k, c in algebra.product(g, i).items():
                    w2, pos2 = index[(j, k)]
                    m[pos2, pos] = c
            gen_mats[g] = Matrix(algebra.field, m)
        super().__init__(algebra, dims, gen_mats, name=name)
        self.gen_positions = [index[(j, algebra.idempotents[v])] for j, v in enumerate(self.gens)]

    def generator_vector(self, j: int) -> Matrix:
        """Flat coordinates of the j-th summand generator e_{v_j}."""
        vec = np.zeros((self.total_dim, 1), dtype=np.int64)
        w, pos = self.gen_positions[j]
        vec[self.offsets[w] + pos, 0] = 1
        return Matrix(self.field, vec)


def projective_rep(A: FDAlgebra, gens, name="") -> ProjectiveRep:
    return ProjectiveRep(A, tuple(gens), name=name)


def free_hom_dims(P: ProjectiveRep, N: Representation) -> list[int]:
    """Hom(P, N) is free on generator images: one N_{v_j} block per summand."""
    return [N.dims[v] for v in P.gens]


def hom_from_projective(P: ProjectiveRep, N: Representation, gen_images: list[Matrix]) -> ModuleMap:
    """The module map P -> N with the given generator images."""
    A = P.algebra
    blocks = [
        np.zeros((N.dims[w], P.dims[w]), dtype=np.int64) for w in range(A.n_vertices)
    ]
    for w in range(A.n_vertices):
        for pos, (j, i) in enumerate(P.coords[w]):
            img = gen_images[j]
            if img.rows == 0:
                continue
            col = (N.act_basis(i).a @ _padded(img, N, P.gens[j]).a) % A.field.p
            blocks[w][:, pos] = col[N.vertex_slice(w), 0]
    return ModuleMap(P, N, [Matrix(A.field, b) for b in blocks])


def _padded(img: Matrix, N: Representation, v: int) -> Matrix:
    vec = np.zeros((N.total_dim, 1), dtype=np.int64)
    vec[N.vertex_slice(v), 0] = img.a[:, 0]
    return Matrix(N.field, vec)


def map_gen_images(f: ModuleMap) -> list[Matrix]:
    """Generator images of a map out of a projective (inverse of above)."""
    P = f.source
    out = []
    for j, v in enumerate(P.gens):
        w, pos = P.gen_positions[j]
        out.append(f.blocks[w].col(pos))
    return out


def hom_space_basis(M: Representation, N: Representation) -> list[ModuleMap]:
    """Basis of Hom_A(M, N), the kernel of the intertwining system."""
    A = M.algebra
    p = A.field.p
    nunk = sum(N.dims[v] * M.dims[v] for v in range(A.n_vertices))
    if nunk == 0:
        return []
    offs = []
    off = 0
    for v in range(A.n_vertices):
        offs.append(off)
        off += N.dims[v] * M.dims[v]
    rows = []
    for g in A.generators:
        b = A.basis[g]
        s, t = b.source, b.target
        Xs, Xt = M.gen_mats[g], N.gen_mats[g]
        # f_t X_s - X_t f_s = 0, unknowns flattened row-major per vertex
        nr = N.dims[t] * M.dims[s]
        if nr == 0:
            continue
        block = np.zeros((nr, nunk), dtype=np.int64)
        # d(f_t)/coeffs: (f_t X_s)[r, c] = sum_k f_t[r, k] X_s[k, c]
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                eq = r * M.dims[s] + c
                for k in range(M.dims[t]):
                    block[eq, offs[t] + r * M.dims[t] + k] = (
                        block[eq, offs[t] + r * M.dims[t] + k] + int(Xs.a[k, c])
                    ) % p
                for k in range(M.dims[s]):
                    block[eq, offs[s] + k * M.dims[s] + c] = (
                        block[eq, offs[s] + k * M.dims[s] + c] - int(Xt.a[r, k])
                    ) % p
        rows.append(block)
    if rows:
        Kmat = Matrix(A.field, np.vstack(rows))
        K = kernel_basis(Kmat)
    else:
        K = Matrix.identity(A.field, nunk)
    maps = []
    for col in range(K.cols):
        vec = K.a[:, col]
        blocks = []
        for v in range(A.n_vertices):
            seg = vec[offs[v] : offs[v] + N.dims[v] * M.dims[v]]
            blocks.append(Matrix(A.field, seg.reshape(N.dims[v], M.dims[v])))
        maps.append(ModuleMap(M, N, blocks))
    return maps


def module_iso(M: Representation, N: Representation, budget: int = 2**20):
    """Invertible intertwiner, or None; deterministic scan of the hom space.

    Raises SearchBudgetExceeded when the space is too large to scan, so
    'unknown' is never conflated with 'no'.
    """
    if M.dims != N.dims:
        return None
    if M.total_dim == 0:
        return ModuleMap.zero(M, N)
    basis = hom_space_basis(M, N)
    if not basis:
        return None
    p = M.field.p
    k = len(basis)
    # single-basis-map fast path, then full odometer scan
    for f in basis:
        if f.is_isomorphism():
            return f
    if p**k > budget:
        raise SearchBudgetExceeded(
            f"intertwiner space has {p}^{k} candidates, budget {budget}"
        )
    coeffs = [0] * k
    for _ in range(p**k):
        i = 0
        while i < k:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1
        if i == k:
            break
        f = basis[0].scale(coeffs[0])
        for t in range(1, k):
            if coeffs[t]:
                f = f + basis[t].scale(coeffs[t])
        if f.is_isomorphism():
            return f
    return None


# ---------------------------------------------------------------------------
# bimodules


def regular_bimodule(A: FDAlgebra, env: EnvelopingAlgebra | None = None) -> Representation:
    """A itself as a left module over its enveloping algebra."""
    env = env or EnvelopingAlgebra(A)
    nv = A.n_vertices
    # component (v, w) = e_v . A . e_w
    comp: dict[int, list[int]] = {u: [] for u in range(env.n_vertices)}
    for i, b in enumerate(A.basis):
        comp[env.pair_vertex(b.target, b.source)].append(i)
    dims = [len(comp[u]) for u in range(env.n_vertices)]
    pos = {}
    for u in range(env.n_vertices):
        for t, i in enumerate(comp[u]):
            pos[i] = (u, t)
    gen_mats = {}
    for g in env.generators:
        bg = env.basis[g]
        i, j = env.factors(g)  # element a_i (x) a_j: m -> a_i . m . a_j
        m = np.zeros((dims[bg.target], dims[bg.source]), dtype=np.int64)
        for t, src in enumerate(comp[bg.source]):
            inner = A.product_vectors({i: 1}, A.product_vectors({src: 1}, {j: 1}))
            for k, c in inner.items():
                u2, t2 = pos[k]
                if u2 != bg.target:
                    raise AssertionError("bimodule action left its component")
                m[t2, t] = c
        gen_mats[g] = Matrix(A.field, m)
    B = Representation(env, dims, gen_mats, name=f"{A.name} as bimodule")
    B._cache["left_projective"] = True
    B._cache["right_projective"] = True
    B._cache["base_algebra"] = A
    B._cache["bimodule_basis"] = comp
    return B


def bimodule_side_action(B: Representation, side: str, i: int) -> Matrix:
    """Action of base algebra basis element i on the left or right of B."""
    env: EnvelopingAlgebra = B.algebra  # type: ignore[assignment]
    A = env.base
    coeffs: dict[int, int] = {}
    if side == "left":
        for e in A.idempotents:
            coeffs[env.pair_index(i, e)] = 1
    else:
        for e in A.idempotents:
            coeffs[env.pair_index(e, i)] = 1
    return B.act_vector(coeffs)


def one_sided_restriction(B: Representation, side: str) -> Representation:
    """B as a module over the base algebra (side='left') or its opposite.

    The flat space is regrouped by the relevant vertex factor; generator
    actions are the one-sided multiplications.
    """
    from .algebra import opposite

    env: EnvelopingAlgebra = B.algebra  # type: ignore[assignment]
    A = env.base
    target_alg = A if side == "left" else opposite(A)
    nv = A.n_vertices
    per_vertex: list[list[int]] = [[] for _ in range(nv)]
    for u in range(env.n_vertices):
        v, w = env.vertex_factors(u)
        g = v if side == "left" else w
        sl = B.vertex_slice(u)
        per_vertex[g].extend(range(sl.start, sl.stop))
    dims = [len(per_vertex[v]) for v in range(nv)]
    inv_pos = {}
    for v in range(nv):
        for t, flat in enumerate(per_vertex[v]):
            inv_pos[flat] = (v, t)
    gen_mats = {}
    for g in target_alg.generators:
        bg = target_alg.basis[g]
        s, t = bg.source, bg.target
        act = bimodule_side_action(B, side, g)
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        for cs, flat_s in enumerate(per_vertex[s]):
            col = act.a[:, flat_s]
            for flat_t in np.nonzero(col)[0]:
                v2, t2 = inv_pos[int(flat_t)]
                if v2 != t:
                    raise AssertionError("one-sided action left its component")
                m[t2, cs] = col[int(flat_t)]
        gen_mats[g] = Matrix(A.field, m)
    return Representation(target_alg, dims, gen_mats, name=f"{B.name}|{side}")


def _side_projectivity(B: Representation, side: str) -> bool:
    one_sided = one_sided_restriction(B, side)
    P, _ = projective_cover_data(one_sided)
    return P.total_dim == one_sided.total_dim


def is_left_projective(B: Representation) -> bool:
    if "left_projective" not in B._cache:
        B._cache["left_projective"] = _side_projectivity(B, "left")
    return B._cache["left_projective"]


def is_right_projective(B: Representation) -> bool:
    if "right_projective" not in B._cache:
        B._cache["right_projective"] = _side_projectivity(B, "right")
    return B._cache["right_projective"]


def _space_quotient(field, dim: int, relations: Matrix):
    """Projection and section for F^dim modulo the column span of relations.

    Returns (proj, section) with proj @ section = identity and
    ker(proj) = span(relations).
    """
    Rr, piv = rref(relations.transpose())
    p = field.p
    pivset = set(piv)
    free = [i for i in range(dim) if i not in pivset]
    reducer = np.eye(dim, dtype=np.int64)
    for r, pc in enumerate(piv):
        row = Rr.a[r]
        coeffs = reducer[pc, :].copy()
        nz = np.nonzero(coeffs)[0]
        if nz.size:
            reducer[:, nz] = (reducer[:, nz] - np.outer(row, coeffs[nz])) % p
    pr = np.zeros((len(free), dim), dtype=np.int64)
    for j, fc in enumerate(free):
        pr[j] = reducer[fc]
    sec = np.zeros((dim, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        sec[fc, j] = 1
    return Matrix(field, pr), Matrix(field, sec)


class TensorRep(Representation):
    """B (x)_A M for a bimodule B and left module M.

    The big space at result vertex w is the direct sum over v of
    B_(w,v) (x)_k M_v (row-major Kronecker coordinates); the actual
    module is its quotient by the balancing relations b.a (x) m -
    b (x) a.m, with projection/section matrices kept for transporting
    maps in the M slot.
    """

    def __init__(self, B: Representation, M: Representation):
        env: EnvelopingAlgebra = B.algebra  # type: ignore[assignment]
        A = env.base
        p = A.field.p
        nv = A.n_vertices
        self.B = B
        self.M = M
        # layout of the big space per result vertex w
        self.block_offs: list[dict[int, int]] = []
        big_dims = []
        for w in range(nv):
            offs = {}
            off = 0
            for v in range(nv):
                offs[v] = off
                off += B.dims[env.pair_vertex(w, v)] * M.dims[v]
            self.block_offs.append(offs)
            big_dims.append(off)
        # balancing relations per result vertex
        right_act = {g: bimodule_side_action(B, "right", g) for g in A.generators}
        projs, secs, dims = [], [], []
        for w in range(nv):
            cols = []
            for g in A.generators:
                bg = A.basis[g]
                s, t = bg.source, bg.target
                u_t = env.pair_vertex(w, t)
                u_s = env.pair_vertex(w, s)
                nb = B.dims[u_t]
                nm = M.dims[s]
                if nb == 0 or nm == 0:
                    continue
                ra = right_act[g]
                ra_block = ra.a[B.vertex_slice(u_s), B.vertex_slice(u_t)]
                am = M.gen_mats[g].a  # M_s -> M_t
                for bi in range(nb):
                    for mi in range(nm):
                        vec = np.zeros((big_dims[w], 1), dtype=np.int64)
                        # (b.a) (x) m lives in block (w, s)
                        base_s = self.block_offs[w][s]
                        for b2 in np.nonzero(ra_block[:, bi])[0]:
                            vec[base_s + int(b2) * nm + mi, 0] += ra_block[int(b2), bi]
                        # - b (x) (a.m) lives in block (w, t)
                        base_t = self.block_offs[w][t]
                        for m2 in np.nonzero(am[:, mi])[0]:
                            vec[base_t + bi * M.dims[t] + int(m2), 0] -= am[int(m2), mi]
                        vec %= p
                        if vec.any():
                            cols.append(vec)
            rel = (
                Matrix(A.field, np.hstack(cols))
                if cols
                else Matrix.zeros(A.field, big_dims[w], 0)
            )
            pr, sec = _space_quotient(A.field, big_dims[w], rel)
            projs.append(pr)
            secs.append(sec)
            dims.append(pr.rows)
        self.projs = projs
        self.sections = secs
        self.big_dims = big_dims
        left_act = {g: bimodule_side_action(B, "left", g) for g in A.generators}
        gen_mats = {}
        for g in A.generators:
            bg = A.basis[g]
            s, t = bg.source, bg.target
            big = np.zeros((big_dims[t], big_dims[s]), dtype=np.int64)
            la = left_act[g]
            for v in range(nv):
                u_sv = env.pair_vertex(s, v)
                u_tv = env.pair_vertex(t, v)
                if B.dims[u_sv] == 0 or M.dims[v] == 0:
                    continue
                la_block = la.a[B.vertex_slice(u_tv), B.vertex_slice(u_sv)]
                kron = np.kron(la_block, np.eye(M.dims[v], dtype=np.int64))
                big[
                    self.block_offs[t][v] : self.block_offs[t][v] + kron.shape[0],
                    self.block_offs[s][v] : self.block_offs[s][v] + kron.shape[1],
                ] = kron
            gen_mats[g] = projs[t] @ (Matrix(A.field, big) @ secs[s])
        super().__init__(A, dims, gen_mats, name=f"{B.name}(x){M.name}")

    def pure_tensor_big(self, w: int, v: int, b_idx: int, m_idx: int) -> Matrix:
        vec = np.zeros((self.big_dims[w], 1), dtype=np.int64)
        vec[self.block_offs[w][v] + b_idx * self.M.dims[v] + m_idx, 0] = 1
        return Matrix(self.field, vec)


def tensor_over_algebra(B: Representation, M: Representation) -> TensorRep:
    return TensorRep(B, M)


def tensor_module_map(TB1: TensorRep, TB2: TensorRep, f: ModuleMap) -> ModuleMap:
    """1 (x) f: B (x) M -> B (x) M' for f: M -> M' (same bimodule B)."""
    env: EnvelopingAlgebra = TB1.B.algebra  # type: ignore[assignment]
    A = env.base
    nv = A.n_vertices
    blocks = []
    for w in range(nv):
        big = np.zeros((TB2.big_dims[w], TB1.big_dims[w]), dtype=np.int64)
        for v in range(nv):
            nb = TB1.B.dims[env.pair_vertex(w, v)]
            if nb == 0 or TB1.M.dims[v] == 0 or TB2.M.dims[v] == 0:
                continue
            kron = np.kron(np.eye(nb, dtype=np.int64), f.blocks[v].a)
            big[
                TB2.block_offs[w][v] : TB2.block_offs[w][v] + kron.shape[0],
                TB1.block_offs[w][v] : TB1.block_offs[w][v] + kron.shape[1],
            ] = kron
        blocks.append(TB2.projs[w] @ (Matrix(A.field, big) @ TB1.sections[w]))
    return ModuleMap(TB1, TB2, blocks)


def hom_module(B: Representation, N: Representation) -> Representation:
    """Hom_A(B, N) of left module maps, as a left module via (l.f)(b) = f(b.l).

    Attaches a NonProjectiveWarning when B is not right projective, in
    which case the construction need not be exact in N.
    """
    env: EnvelopingAlgebra = B.algebra  # type: ignore[assignment]
    A = env.base
    if not is_right_projective(B):
        warnings.warn(
            "hom_module: bimodule is not right projective; exactness may fail",
            NonProjectiveWarning,
        )
    BL = one_sided_restriction(B, "left")
    basis = hom_space_basis(BL, N)
    k = len(basis)
    if k == 0:
        return Representation(A, [0] * A.n_vertices, {}, name=f"Hom({B.name},{N.name})")
    flat = [np.concatenate([b.a.reshape(-1) for b in f.blocks]) for f in basis]
    K = Matrix(A.field, np.stack(flat, axis=1))

    def right_endo(i: int) -> ModuleMap:
        # right multiplication by basis element i of A, as an endo of BL
        act = bimodule_side_action(B, "right", i)
        # regroup flat B coords into BL layout (shared with one_sided_restriction)
        nv = A.n_vertices
        per_vertex: list[list[int]] = [[] for _ in range(nv)]
        for u in range(env.n_vertices):
            v, w = env.vertex_factors(u)
            sl = B.vertex_slice(u)
            per_vertex[v].extend(range(sl.start, sl.stop))
        blocks = []
        for v in range(nv):
            idx = per_vertex[v]
            m = act.a[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=np.int64)
            blocks.append(Matrix(A.field, m))
        return ModuleMap(BL, BL, blocks)

    def coords_of(f: ModuleMap) -> Matrix:
        vec = np.concatenate([b.a.reshape(-1) for b in f.blocks]).reshape(-1, 1)
        x = solve_matrix(K, Matrix(A.field, vec))
        if x is None:
            raise AssertionError("composite left the hom space")
        return x

    def action_matrix(i: int) -> Matrix:
        Rg = right_endo(i)
        cols = [coords_of(f.compose(Rg)) for f in basis]
        return Matrix.hstack(cols)

    # adapted basis splitting Hom by the right-slice idempotents
    comp_cols = []
    dims = []
    for v in range(A.n_vertices):
        pv = action_matrix(A.idempotents[v])
        img = column_space_basis(pv)
        comp_cols.append(img)
        dims.append(img.cols)
    U = Matrix.hstack(comp_cols)
    offs = []
    off = 0
    for d in dims:
        offs.append(off)
        off += d
    gen_mats = {}
    for g in A.generators:
        bg = A.basis[g]
        s, t = bg.source, bg.target
        Tg = action_matrix(g)
        src = comp_cols[s]
        if src.cols == 0 or dims[t] == 0:
            gen_mats[g] = Matrix.zeros(A.field, dims[t], dims[s])
            continue
        y = solve_matrix(U, Tg @ src)
        if y is None:
            raise AssertionError("hom action not compatible with grading")
        gen_mats[g] = y.submatrix(slice(offs[t], offs[t] + dims[t]), slice(None))
    H = Representation(A, dims, gen_mats, name=f"Hom({B.name},{N.name})")
    return H


def projective_cover_data(M: Representation):
    """(P, pi) with P = (+) P_v^{m_v}, m_v from top(M), ker(pi) superfluous."""
    A = M.algebra
    rb = radical_bases(M)
    gens = []
    gen_images = []
    for v in range(A.n_vertices):
        n = M.dims[v]
        if n == 0:
            continue
        sub = rb[v]
        # complement of rad(M)_v inside M_v, deterministic order
        chosen = []
        cur = sub
        for i in range(n):
            e = np.zeros((n, 1), dtype=np.int64)
            e[i, 0] = 1
            cand = Matrix(A.field, e)
            test = Matrix.hstack([cur, cand]) if cur.cols else cand
            if rank(test) > cur.cols:
                chosen.append(cand)
                cur = test
            if cur.cols == n:
                break
        for c in chosen:
            gens.append(v)
            gen_images.append(c)
    P = ProjectiveRep(A, tuple(gens), name=f"P({M.name})")
    images = []
    for v, img in zip(gens, gen_images):
        images.append(img)
    pi = hom_from_projective(P, M, images)
    return P, pi
