"""Finite dimensional algebras presented by quivers with relations.

A presentation is turned into a structure-constant algebra degree by
degree: paths of length d are spanned by (basis path of length d-1,
arrow) products, relation instances are imposed by row reduction, and
the surviving products become basis elements.  Relations must be
homogeneous in path length (every bundled family - truncated polynomial
algebras, group algebras of abelian p-groups, radical-square-zero
algebras - is).

Conventions, fixed once:

* a path string "a*b" means traverse a then b;
* the internal product ``mul(x, y)`` is composition order, i.e. apply
  y first, so a representation acts through honest left modules with
  ``act(mul(x, y)) = act(x) @ act(y)``.

The parser and printers translate between the two; nothing else ever
reorders a product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix, PrimeField, rref, solve

PATH_BUDGET = 200_000


class MalformedPresentation(ValueError):
    pass


class InfiniteDimensional(Exception):
    """The quotient still grows at the nilpotency cap: refusing to truncate."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class QuiverPresentation:
    """Quiver with admissible relations over F_p.

    Relations are linear combinations of parallel paths; each path is a
    tuple of arrow names in traversal order and has length >= 2.
    """

    field: PrimeField
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[tuple[int, tuple[str, ...]], ...], ...] = ()
    nilpotency_cap: int = 30

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise MalformedPresentation(f"duplicate vertex {v!r}")
            seen.add(v)
        names = set()
        for a in self.arrows:
            if a.name in names or a.name in seen:
                raise MalformedPresentation(f"duplicate name {a.name!r}")
            names.add(a.name)
            if a.source not in seen or a.target not in seen:
                raise MalformedPresentation(
                    f"arrow {a.name!r} endpoint not a declared vertex"
                )
        arr = {a.name: a for a in self.arrows}
        for rel in self.relations:
            if not rel:
                raise MalformedPresentation("empty relation")
            ends = set()
            lengths = set()
            for coeff, path in rel:
                if len(path) < 2:
                    raise MalformedPresentation(
                        f"relation path {'*'.join(path)} has length < 2 (ideal not admissible)"
                    )
                for x, y in zip(path, path[1:]):
                    if x not in arr or y not in arr:
                        raise MalformedPresentation(f"unknown arrow in {path}")
                    if arr[x].target != arr[y].source:
                        raise MalformedPresentation(
                            f"path {'*'.join(path)} is not composable"
                        )
                ends.add((arr[path[0]].source, arr[path[-1]].target))
                lengths.add(len(path))
            if len(ends) > 1:
                raise MalformedPresentation(
                    "relation terms are not parallel paths"
                )
            if len(lengths) > 1:
                raise MalformedPresentation(
                    "relation mixes path lengths; only length-homogeneous relations are supported"
                )


@dataclass(frozen=True)
class BasisElement:
    """One basis element: a surviving path, kept with its radical degree."""

    label: str
    source: int  # vertex index (traversal start)
    target: int  # vertex index (traversal end)
    degree: int


class FDAlgebra:
    """Finite dimensional algebra with structure constants.

    ``product(i, j)`` returns the internal (composition-order) product
    b_i . b_j as a sparse {basis index: coefficient} dict.  Degree-1
    basis elements together with the vertex idempotents generate.
    """

    def __init__(self, field, vertex_names, basis, idempotents, table, name=""):
        self.field = field
        self.vertex_names = tuple(vertex_names)
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.idempotents = tuple(idempotents)
        self._table = table  # dict[(i, j)] -> dict[k] -> coeff
        self.name = name
        self.generators = tuple(
            i for i, b in enumerate(self.basis) if b.degree == 1
        )
        self.radical_basis = tuple(
            i for i, b in enumerate(self.basis) if b.degree > 0
        )
        self.radical_length = 1 + max((b.degree for b in self.basis), default=0)

    def product(self, i: int, j: int) -> dict[int, int]:
        return self._table.get((i, j), {})

    def factorization(self, i: int) -> tuple[tuple[int, int, int], ...]:
        """Express b_i as sum c * b_g . b_j with b_g a degree-1 generator.

        Gives representations a way to compute the action of any basis
        element from generator matrices alone.  Entries are (c, g, j).
        """
        cache = getattr(self, "_factorizations", None)
        if cache is None:
            cache = self._factorizations = {}
        if i in cache:
            return cache[i]
        d = self.basis[i].degree
        if d <= 1:
            raise ValueError("only degree >= 2 elements need factoring")
        layer = [k for k, b in enumerate(self.basis) if b.degree == d]
        layer_pos = {k: t for t, k in enumerate(layer)}
        pairs = []
        cols = []
        for g in self.generators:
            for j, bj in enumerate(self.basis):
                if bj.degree != d - 1:
                    continue
                prod = self.product(g, j)
                if not prod:
                    continue
                col = [0] * len(layer)
                for k, c in prod.items():
                    col[layer_pos[k]] = c
                pairs.append((g, j))
                cols.append(col)
        A = Matrix(
            self.field,
            [[cols[c][r] for c in range(len(cols))] for r in range(len(layer))],
        )
        for k in layer:
            e = [1 if t == layer_pos[k] else 0 for t in range(len(layer))]
            x = solve(A, e)
            if x is None:
                raise AssertionError(
                    f"degree-{d} element {self.basis[k].label} not generated in degree 1"
                )
            cache[k] = tuple(
                (int(x.a[t, 0]), pairs[t][0], pairs[t][1])
                for t in range(len(pairs))
                if int(x.a[t, 0])
            )
        return cache[i]

    def product_vectors(self, u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        p = self.field.p
        out: dict[int, int] = {}
        for i, ci in u.items():
            for j, cj in v.items():
                for k, ck in self.product(i, j).items():
                    out[k] = (out.get(k, 0) + ci * cj * ck) % p
        return {k: c for k, c in sorted(out.items()) if c}

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    def unit_vector(self) -> dict[int, int]:
        return {e: 1 for e in self.idempotents}

    def is_commutative(self) -> bool:
        return all(
            self.product(i, j) == self.product(j, i)
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def check_associativity(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.product(i, j)
                for k in range(self.dim):
                    left = self.product_vectors(ij, {k: 1})
                    right = self.product_vectors({i: 1}, self.product(j, k))
                    if left != right:
                        return False
        return True

    def check_idempotents(self) -> bool:
        for vi, e in enumerate(self.idempotents):
            for vj, f in enumerate(self.idempotents):
                expect = {e: 1} if vi == vj else {}
                if self.product(e, f) != expect:
                    return False
        total = {}
        for e in self.idempotents:
            for i in range(self.dim):
                for k, c in self.product(e, i).items():
                    total[(i, k)] = (total.get((i, k), 0) + c) % self.field.p
        return all(
            total.get((i, k), 0) == (1 if i == k else 0)
            for i in range(self.dim)
            for k in range(self.dim)
        )

    def __repr__(self):
        return f"FDAlgebra({self.name or 'dim %d' % self.dim})"


def _path_label(path: tuple[str, ...], vertex: str | None = None) -> str:
    if not path:
        return f"e_{vertex}"
    return "*".join(path)


def build_algebra(pres: QuiverPresentation) -> FDAlgebra:
    """Quotient of the path algebra by the relation ideal.

    Works degree by degree.  Candidates at degree d are (live path of
    degree d-1) * arrow; relation instances u*r for every live path u
    are reduced by rref and the pivot candidates die.  Stops when no
    candidate survives; raises InfiniteDimensional when the cap or the
    path budget is hit with candidates still alive.
    """
    p = pres.field.p
    vindex = {v: i for i, v in enumerate(pres.vertices)}
    arrows = list(pres.arrows)

    # basis bookkeeping; normal forms of (live basis element, arrow) products
    elements: list[BasisElement] = []
    paths: list[tuple[str, ...]] = []  # traversal words of basis elements
    idempotents = []
    for v in pres.vertices:
        idempotents.append(len(elements))
        elements.append(BasisElement(_path_label((), v), vindex[v], vindex[v], 0))
        paths.append(())

    by_degree: dict[int, list[int]] = {0: list(idempotents)}
    prodnf: dict[tuple[int, str], dict[int, int]] = {}

    # relations grouped by their (homogeneous) path length
    rel_by_deg: dict[int, list] = {}
    for rel in pres.relations:
        rel_by_deg.setdefault(len(rel[0][1]), []).append(rel)

    def nf_extend(vec: dict[int, int], arrow_name: str) -> dict[int, int]:
        out: dict[int, int] = {}
        for b, c in vec.items():
            for k, ck in prodnf.get((b, arrow_name), {}).items():
                out[k] = (out.get(k, 0) + c * ck) % p
        return {k: c for k, c in out.items() if c}

    def nf_of_path(start_idx: int, word: tuple[str, ...]) -> dict[int, int]:
        vec = {start_idx: 1}
        for a in word:
            vec = nf_extend(vec, a)
        return vec

    d = 1
    while d <= pres.nilpotency_cap:
        prev = by_degree.get(d - 1, [])
        candidates: list[tuple[int, str]] = []
        for b in prev:
            for a in arrows:
                if vindex[a.source] == elements[b].target:
                    candidates.append((b, a.name))
        if not candidates:
            break
        if len(candidates) > PATH_BUDGET:
            raise InfiniteDimensional(
                f"path budget exceeded at degree {d} ({len(candidates)} candidates)"
            )
        cand_index = {c: i for i, c in enumerate(candidates)}

        rows = []
        for m, rels in rel_by_deg.items():
            if m > d:
                continue
            for u in by_degree.get(d - m, []):
                for rel in rels:
                    # instance u * r, accumulated arrow by arrow
                    row = [0] * len(candidates)
                    for coeff, word in rel:
                        vec = {u: 1}
                        for a in word[:-1]:
                            vec = nf_extend(vec, a)
                        last = word[-1]
                        for b, c in vec.items():
                            key = (b, last)
                            if key in cand_index:
                                col = cand_index[key]
                                row[col] = (row[col] + coeff * c) % p
                            elif key in prodnf:
                                # graded quotient: cannot land in lower degree
                                raise AssertionError(
                                    "relation instance left the candidate space"
                                )
                    if any(row):
                        rows.append(row)
        if rows:
            R, pivots = rref(Matrix.from_rows(pres.field, rows, len(candidates)))
        else:
            R, pivots = Matrix.zeros(pres.field, 0, len(candidates)), ()

        pivset = set(pivots)
        new_indices: dict[int, int] = {}
        live_here = []
        for ci, (b, a) in enumerate(candidates):
            if ci in pivset:
                continue
            idx = len(elements)
            word = paths[b] + (a,)
            arr = next(x for x in arrows if x.name == a)
            elements.append(
                BasisElement(_path_label(word), elements[b].source, vindex[arr.target], d)
            )
            paths.append(word)
            new_indices[ci] = idx
            live_here.append(idx)
        for r, pc in enumerate(pivots):
            b, a = candidates[pc]
            vec: dict[int, int] = {}
            for ci in range(pc + 1, len(candidates)):
                c = int(R.a[r, ci])
                if c and ci in new_indices:
                    vec[new_indices[ci]] = (-c) % p
                elif c and ci not in new_indices:
                    # entry on another pivot column is impossible in rref
                    raise AssertionError("non-reduced echelon form")
            prodnf[(b, a)] = vec
        for ci, idx in new_indices.items():
            prodnf[candidates[ci]] = {idx: 1}
        if live_here:
            by_degree[d] = live_here
        else:
            break
        d += 1
    else:
        raise InfiniteDimensional(
            f"basis still growing at nilpotency cap {pres.nilpotency_cap}"
        )

    # seal the normal-form table so top-degree products resolve to zero
    top = max(by_degree)
    for b in by_degree[top]:
        for a in arrows:
            prodnf.setdefault((b, a.name), {})

    table: dict[tuple[int, int], dict[int, int]] = {}
    for i, bi in enumerate(elements):
        for j, bj in enumerate(elements):
            # internal product b_i . b_j = traverse path_j, then path_i
            if bj.target != bi.source:
                continue
            vec = nf_of_path(j, paths[i])
            if vec:
                table[(i, j)] = vec

    return FDAlgebra(
        pres.field,
        pres.vertices,
        elements,
        idempotents,
        table,
        name=f"kQ/I(dim {len(elements)})",
    )


def group_algebra(p: int, cyclic_orders: list[int]) -> QuiverPresentation:
    """Presentation of kG for G a finite abelian p-group, k = F_p.

    Substituting t_i = g_i - 1 turns the group relations g_i^{q_i} = 1
    into t_i^{q_i} = 0 in characteristic p, plus commutators.
    """
    field = PrimeField(p)
    for q in cyclic_orders:
        if q < 2:
            raise MalformedPresentation(f"order {q} is not a power of {p}")
        m = q
        while m % p == 0:
            m //= p
        if m != 1:
            raise MalformedPresentation(f"order {q} is not a power of {p}")
    vs = ("v",)
    names = [f"t{i+1}" for i in range(len(cyclic_orders))]
    arrows = tuple(Arrow(n, "v", "v") for n in names)
    rels = []
    for n, q in zip(names, cyclic_orders):
        rels.append(((1, (n,) * q),))
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            rels.append(((1, (names[i], names[j])), (-1, (names[j], names[i]))))
    return QuiverPresentation(field, vs, arrows, tuple(rels))


def truncated_polynomial_presentation(p: int, exponents: list[int]) -> QuiverPresentation:
    """k[x_1..x_n]/(x_1^{a_1}, ..., x_n^{a_n}) as a one-vertex quiver."""
    field = PrimeField(p)
    names = [f"x{i+1}" for i in range(len(exponents))] if len(exponents) > 1 else ["x"]
    arrows = tuple(Arrow(n, "v", "v") for n in names)
    rels = []
    for n, a in zip(names, exponents):
        if a < 2:
            raise MalformedPresentation("exponents must be >= 2 for an admissible ideal")
        rels.append(((1, (n,) * a),))
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            rels.append(((1, (names[i], names[j])), (-1, (names[j], names[i]))))
    return QuiverPresentation(field, ("v",), arrows, tuple(rels))


class EnvelopingAlgebra(FDAlgebra):
    """A (x) A^op.  Left modules over it are bimodules over A.

    Basis pairs (i, j) stand for a_i (x) a_j^op; the product is
    (a (x) b)(c (x) d) = ac (x) db in internal composition order.
    Vertices are pairs (v, w); the element a (x) b maps the (source(b-op
    side)...) component as worked out from a.m.b.
    """

    def __init__(self, base: FDAlgebra):
        self.base = base
        n = base.dim
        nv = base.n_vertices
        vertex_names = tuple(
            f"({base.vertex_names[v]},{base.vertex_names[w]})"
            for v in range(nv)
            for w in range(nv)
        )

        def pair_vertex(v, w):
            return v * nv + w

        basis = []
        for i, bi in enumerate(base.basis):
            for j, bj in enumerate(base.basis):
                basis.append(
                    BasisElement(
                        f"{bi.label}(x){bj.label}",
                        pair_vertex(bi.source, bj.target),
                        pair_vertex(bi.target, bj.source),
                        bi.degree + bj.degree,
                    )
                )
        idempotents = [
            base.idempotents[v] * n + base.idempotents[w]
            for v in range(nv)
            for w in range(nv)
        ]
        super().__init__(
            base.field, vertex_names, basis, idempotents, table=None,
            name=f"env({base.name})",
        )
        self._nv = nv

    def pair_index(self, i: int, j: int) -> int:
        return i * self.base.dim + j

    def factors(self, k: int) -> tuple[int, int]:
        return divmod(k, self.base.dim)

    def pair_vertex(self, v: int, w: int) -> int:
        return v * self._nv + w

    def vertex_factors(self, u: int) -> tuple[int, int]:
        return divmod(u, self._nv)

    def product(self, i: int, j: int) -> dict[int, int]:
        a, b = self.factors(i)
        c, d = self.factors(j)
        p = self.field.p
        left = self.base.product(a, c)
        right = self.base.product(d, b)
        out = {}
        for m, cm in left.items():
            for q, cq in right.items():
                out[self.pair_index(m, q)] = (cm * cq) % p
        return out


def enveloping(algebra: FDAlgebra) -> EnvelopingAlgebra:
    return EnvelopingAlgebra(algebra)


class OppositeAlgebra(FDAlgebra):
    """Same basis, reversed multiplication, sources and targets swapped."""

    def __init__(self, base: FDAlgebra):
        self.base = base
        basis = [
            BasisElement(b.label + "^op", b.target, b.source, b.degree)
            for b in base.basis
        ]
        super().__init__(
            base.field, base.vertex_names, basis, base.idempotents, table=None,
            name=f"op({base.name})",
        )

    def product(self, i: int, j: int) -> dict[int, int]:
        return self.base.product(j, i)


def opposite(algebra: FDAlgebra) -> OppositeAlgebra:
    return OppositeAlgebra(algebra)
