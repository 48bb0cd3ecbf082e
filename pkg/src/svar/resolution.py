"""Minimal projective resolutions, syzygies and cocycle lifting.

Resolutions are built by iterated projective covers, so minimality
holds by construction: every differential lands inside the radical of
its target.  Towers are cached on the module object and extended
lazily; extension requests serialize on a per-tower lock while separate
modules resolve independently.
"""

from __future__ import annotations

import threading

from .linalg import Matrix, solve_matrix
from .modules import (
    ModuleMap,
    ProjectiveRep,
    Representation,
    free_hom_dims,
    hom_from_projective,
    kernel_rep,
    map_gen_images,
    projective_cover_data,
)


class LiftFailed(Exception):
    """The map to lift is not a cocycle on the source resolution."""


class Resolution:
    """Tower P_n -> ... -> P_0 -> M with cached syzygies.

    terms[i] is minimal by construction; omega(i) is ker(d_{i-1}) with
    its inclusion into P_{i-1} (omega(0) is M itself).
    """

    def __init__(self, module: Representation):
        self.module = module
        self.algebra = module.algebra
        P0, eps = projective_cover_data(module)
        self.terms: list[ProjectiveRep] = [P0]
        self.maps: list[ModuleMap] = [eps]  # maps[0] = augmentation, maps[i] = d_i
        self._omegas: list[tuple[Representation, ModuleMap]] = []
        self._lock = threading.Lock()

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def extend_to(self, n: int) -> "Resolution":
        with self._lock:
            while self.length < n:
                i = self.length
                om, incl = self._omega_step(i + 1)
                P, cover = projective_cover_data(om)
                d = incl.compose(cover)
                self.terms.append(P)
                self.maps.append(d)
        return self

    def _omega_step(self, i: int):
        """Kernel of the last differential, inside P_{i-1}."""
        while len(self._omegas) < i:
            j = len(self._omegas)
            om, incl = kernel_rep(self.maps[j], name=f"O^{j+1}({self.module.name})")
            self._omegas.append((om, incl))
        return self._omegas[i - 1]

    def term(self, n: int) -> ProjectiveRep:
        self.extend_to(n)
        return self.terms[n]

    def differential(self, n: int) -> ModuleMap:
        """d_n: P_n -> P_{n-1} for n >= 1; the augmentation for n = 0."""
        self.extend_to(n)
        return self.maps[n]

    def augmentation(self) -> ModuleMap:
        return self.maps[0]

    def syzygy(self, n: int) -> Representation:
        if n == 0:
            return self.module
        self.extend_to(n - 1)
        with self._lock:
            om, _ = self._omega_step(n)
        return om

    def syzygy_inclusion(self, n: int) -> ModuleMap:
        self.extend_to(n - 1)
        with self._lock:
            _, incl = self._omega_step(n)
        return incl

    def betti(self, n: int) -> list[int]:
        self.extend_to(n)
        return [len(self.terms[i].gens) for i in range(n + 1)]

    def check_exactness(self, n: int) -> bool:
        """rank d_{i+1} + rank d_i = dim P_i through degree n."""
        self.extend_to(n + 1)
        for i in range(n + 1):
            img = self.maps[i + 1].rank()
            ker = self.terms[i].total_dim - self.maps[i].rank()
            if img != ker:
                return False
        return True

    def check_minimality(self, n: int) -> bool:
        """im(d_{i+1}) inside rad P_i: generator images have no top part."""
        from .modules import radical_bases
        from .linalg import in_column_span

        self.extend_to(n + 1)
        for i in range(n + 1):
            rb = radical_bases(self.terms[i])
            d = self.maps[i + 1]
            for v in range(self.algebra.n_vertices):
                for c in range(d.blocks[v].cols):
                    col = d.blocks[v].col(c)
                    if not col.is_zero() and not in_column_span(rb[v], col):
                        return False
        return True


def resolution_of(M: Representation) -> Resolution:
    """Shared tower for this module object."""
    res = M._cache.get("resolution")
    if res is None:
        res = Resolution(M)
        M._cache["resolution"] = res
    return res


def syzygy(M: Representation, n: int) -> Representation:
    return resolution_of(M).syzygy(n)


class ChainLift:
    """Chain map {f_i: P_{n+i} -> Q_i} lifting a degree-n cocycle f.

    Components are produced on demand by solving through projectivity;
    a failure at the first step certifies that f was not a cocycle.
    """

    def __init__(self, f: ModuleMap, source: Resolution, n: int, target: Resolution):
        self.f = f
        self.source = source
        self.n = n
        self.target = target
        self._components: list[ModuleMap] = []

    def component(self, i: int) -> ModuleMap:
        while len(self._components) <= i:
            self._extend()
        return self._components[i]

    def _extend(self):
        i = len(self._components)
        P = self.source.term(self.n + i)
        Q = self.target.term(i)
        if i == 0:
            # solve aug_Q . f_0 = f on generators; always solvable (aug onto)
            rhs_map = self.f
            through = self.target.augmentation()
        else:
            rhs_map = self._components[i - 1].compose(
                self.source.differential(self.n + i)
            )
            through = self.target.differential(i)
        gen_images = []
        for j in range(len(P.gens)):
            gvec = P.generator_vector(j)
            rhs = rhs_map.total() @ gvec
            x = solve_matrix(through.total(), rhs)
            if x is None:
                if i == 1:
                    raise LiftFailed(
                        "composite with the next differential is not a boundary: "
                        "input is not a cocycle"
                    )
                raise AssertionError("lift failed above degree 1: broken resolution")
            gen_images.append(P_target_component(x, Q, P.gens[j]))
        self._components.append(hom_from_projective(P, Q, gen_images))
        if i == 1 and not self._components[0].compose(
            self.source.differential(self.n + 1)
        ).is_zero():
            pass  # nonzero but a boundary: fine, lift exists


def P_target_component(x: Matrix, Q: Representation, v: int) -> Matrix:
    """Restrict a flat solution vector to the vertex-v component."""
    return x.submatrix(Q.vertex_slice(v), slice(None))


def lift_cocycle(
    f: ModuleMap, source: Resolution, n: int, target: Resolution, upto: int = 0
) -> ChainLift:
    """Lift f: P_n -> N to a chain map into the resolution of N.

    The cocycle condition (f . d_{n+1} = 0 up to boundaries in the
    target) is what makes step 1 solvable; a genuinely non-liftable f
    raises LiftFailed there.
    """
    if f.source is not source.term(n):
        raise ValueError("f must be defined on the degree-n term of its resolution")
    lift = ChainLift(f, source, n, target)
    lift.component(upto)
    return lift
