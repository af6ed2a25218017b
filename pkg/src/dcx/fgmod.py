"""Finitely generated modules over a validated local algebra.

A module is a k-vector space carrying an action tensor rho, where
rho[i] is the matrix of multiplication by the i-th basis element of the
algebra.  Minimal covers, syzygies, Hom and tensor modules, and k-linear
duals are all computed by exact elimination on these tensors.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

import numpy as np

from .algebra import RingMat, check_action
from .errors import EngineInconsistency, NotModule, ValidationError
from .exact import (
    Mat,
    column_space_basis,
    kernel_basis,
    quotient_space,
    rank,
    rref,
    solve,
)


def _coerce_rho(field, rho):
    arr = np.asarray(rho)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise NotModule(f"action tensor must have shape (n, d, d), got {arr.shape}")
    if field.p is not None:
        return np.asarray(arr, dtype=np.int64) % field.p
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(*arr.shape):
        out[idx] = Fraction(arr[idx])
    return out


class FgModule:
    """Module given by its action tensor; invariants are cached lazily."""

    __slots__ = ("alg", "dim", "rho", "name", "_acts", "_cache")

    def __init__(self, alg, rho, name=None, validate=True):
        self.alg = alg
        rho = _coerce_rho(alg.field, rho)
        if rho.shape[0] != alg.dim:
            raise NotModule(
                f"action tensor has {rho.shape[0]} layers, algebra has dimension {alg.dim}"
            )
        if validate:
            check_action(alg, rho)
        self.rho = rho
        self.dim = rho.shape[1]
        self.name = name
        self._acts = {}
        self._cache = {}

    # -- actions --------------------------------------------------------

    def action_of_basis(self, i):
        m = self._acts.get(i)
        if m is None:
            m = Mat(self.alg.field, self.rho[i].copy())
            self._acts[i] = m
        return m

    def element_action(self, vec):
        a = np.tensordot(vec.a[:, 0], self.rho, axes=(0, 0))
        if self.alg.field.p is not None:
            a = np.asarray(a, dtype=np.int64) % self.alg.field.p
        return Mat(self.alg.field, a)

    def _max_ideal_actions(self):
        acts = self._cache.get("macts")
        if acts is None:
            mi = self.alg.local.max_ideal
            acts = [self.element_action(mi.col(b)) for b in range(mi.cols)]
            self._cache["macts"] = acts
        return acts

    def radical_submodule(self):
        """Basis of m*M inside M."""
        got = self._cache.get("mM")
        if got is None:
            acts = self._max_ideal_actions()
            if not acts or self.dim == 0:
                got = Mat.zeros(self.alg.field, self.dim, 0)
            else:
                got = column_space_basis(Mat.hcat(acts))[0]
            self._cache["mM"] = got
        return got

    # -- numerical invariants ---------------------------------------------

    @property
    def length(self):
        return self.dim

    @property
    def min_gens(self):
        return self.dim - self.radical_submodule().cols

    @property
    def socle_dim(self):
        got = self._cache.get("socle")
        if got is None:
            acts = self._max_ideal_actions()
            if not acts or self.dim == 0:
                got = self.dim
            else:
                got = kernel_basis(Mat.vcat(acts)).cols
            self._cache["socle"] = got
        return got

    @property
    def ann_dim(self):
        """Dimension of the annihilator ideal of the module inside the algebra."""
        got = self._cache.get("ann")
        if got is None:
            n, d = self.alg.dim, self.dim
            V = Mat(
                self.alg.field,
                self.rho.reshape(n, d * d).T.copy(),
            )
            got = kernel_basis(V).cols
            self._cache["ann"] = got
        return got

    @property
    def is_free(self):
        # a surjection R^g -> M with g = min_gens is bijective iff dims agree
        return self.dim == self.min_gens * self.alg.dim

    @property
    def is_cofree(self):
        got = self._cache.get("cofree")
        if got is None:
            got = k_dual(self).is_free
            self._cache["cofree"] = got
        return got

    @property
    def is_semisimple(self):
        return self.radical_submodule().cols == 0

    def invariants_key(self):
        return (self.length, self.min_gens, self.socle_dim, self.ann_dim)

    def invariants(self):
        return {
            "length": self.length,
            "min_gens": self.min_gens,
            "socle_dim": self.socle_dim,
            "annihilator_dim": self.ann_dim,
            "is_free": self.is_free,
            "is_cofree": self.is_cofree,
            "is_semisimple": self.is_semisimple,
        }

    def digest(self):
        got = self._cache.get("digest")
        if got is None:
            h = hashlib.sha256()
            h.update(self.alg.key().encode())
            h.update(str(self.rho.shape).encode())
            if self.alg.field.p is not None:
                h.update(np.ascontiguousarray(self.rho).tobytes())
            else:
                h.update("|".join(str(x) for x in self.rho.flat).encode())
            got = h.hexdigest()
            self._cache["digest"] = got
        return got

    def to_data(self):
        if self.alg.field.p is None:
            action = [
                [[str(x) for x in row] for row in layer] for layer in self.rho
            ]
        else:
            action = [[[int(x) for x in row] for row in layer] for layer in self.rho]
        return {"dim": self.dim, "action": action}

    @staticmethod
    def from_data(alg, data, name=None):
        try:
            action = data["action"]
        except (KeyError, TypeError) as exc:
            raise NotModule(f"module data missing key: {exc}") from exc
        return FgModule(alg, action, name=name, validate=True)

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"FgModule{nm}(dim={self.dim} over dim-{self.alg.dim} algebra)"


# -- basic constructions -------------------------------------------------------


def zero_module(A):
    n = A.dim
    shape = (n, 0, 0)
    if A.field.p is None:
        rho = np.empty(shape, dtype=object)
    else:
        rho = np.zeros(shape, dtype=np.int64)
    return FgModule(A, rho, name="0", validate=False)


def free_module(A, r, name=None):
    reg = A.regular_action()
    n = A.dim
    eye = np.eye(r, dtype=np.int64)
    rho = np.stack([np.kron(eye, reg[i]) for i in range(n)])
    return FgModule(A, rho, name=name or f"free^{r}", validate=False)


def residue_field_module(A):
    # cached per algebra so resolution caches attach to one shared k
    got = A._cache.get("kmod")
    if got is None:
        lam = A.local.residue_row
        n = A.dim
        rho = np.empty((n, 1, 1), dtype=object)
        for i in range(n):
            rho[i, 0, 0] = lam.entry(0, i)
        got = FgModule(A, rho, name="k", validate=False)
        A._cache["kmod"] = got
    return got


def k_dual(M):
    """Matlis dual Hom_k(M, k) with the transposed action."""
    return FgModule(
        M.alg,
        M.rho.transpose(0, 2, 1).copy(),
        name=f"dual({M.name})" if M.name else None,
        validate=False,
    )


def canonical_module(A):
    """Injective hull of the residue field: the k-dual of the ring."""
    got = A._cache.get("canonical")
    if got is None:
        got = FgModule(A, A.dual_regular_action(), name="canonical", validate=False)
        A._cache["canonical"] = got
    return got


def direct_sum(mods):
    mods = list(mods)
    if not mods:
        raise ValidationError("direct sum of no modules")
    A = mods[0].alg
    for m in mods[1:]:
        if m.alg.key() != A.key():
            raise ValidationError("direct sum over different algebras")
    n = A.dim
    d = sum(m.dim for m in mods)
    if A.field.p is None:
        rho = np.full((n, d, d), Fraction(0), dtype=object)
    else:
        rho = np.zeros((n, d, d), dtype=np.int64)
    off = 0
    for m in mods:
        rho[:, off : off + m.dim, off : off + m.dim] = m.rho
        off += m.dim
    return FgModule(A, rho, validate=False)


def submodule(M, S):
    """The submodule spanned by the columns of S; returns (module, inclusion)."""
    S = column_space_basis(S)[0]
    A = M.alg
    n = A.dim
    rho = []
    for i in range(n):
        X = solve(S, M.action_of_basis(i) @ S)
        if X is None:
            raise ValidationError("subspace is not closed under the algebra action")
        rho.append(X.a)
    s = S.cols
    if A.field.p is None:
        arr = np.empty((n, s, s), dtype=object)
    else:
        arr = np.empty((n, s, s), dtype=np.int64)
    for i in range(n):
        arr[i] = rho[i]
    return FgModule(A, arr, validate=False), S


def quotient_module(M, S):
    """Quotient of M by the submodule spanned by S; (module, proj, section)."""
    A = M.alg
    Sb = column_space_basis(S)[0]
    for i in range(A.dim):
        if solve(Sb, M.action_of_basis(i) @ Sb) is None:
            raise ValidationError("subspace is not closed under the algebra action")
    proj, section = quotient_space(Sb)
    n = A.dim
    q = proj.rows
    if A.field.p is None:
        arr = np.empty((n, q, q), dtype=object)
    else:
        arr = np.empty((n, q, q), dtype=np.int64)
    for i in range(n):
        arr[i] = (proj @ M.action_of_basis(i) @ section).a
    return FgModule(A, arr, validate=False), proj, section


def free_map_from_images(N, images):
    """k-matrix of the R-linear map R^r -> N sending e_j to column j of images."""
    A = N.alg
    n = A.dim
    r = images.cols
    T = np.tensordot(N.rho, images.a, axes=(2, 0))  # (n, d, r)
    K = T.transpose(1, 2, 0).reshape(N.dim, r * n)
    if A.field.p is not None:
        K = np.asarray(K, dtype=np.int64) % A.field.p
    return Mat(A.field, K)


class Cover:
    """Minimal free cover eps: R^g -> M with a chosen k-linear section."""

    __slots__ = ("module", "g", "images", "eps", "section")

    def __init__(self, module, g, images, eps, section):
        self.module = module
        self.g = g
        self.images = images
        self.eps = eps
        self.section = section


def minimal_cover(M):
    got = M._cache.get("cover")
    if got is not None:
        return got
    A = M.alg
    mM = M.radical_submodule()
    aug = Mat.hcat([mM, Mat.identity(A.field, M.dim)])
    _, piv = rref(aug)
    gen_idx = [pc - mM.cols for pc in piv if pc >= mM.cols]
    images = Mat.identity(A.field, M.dim).cols_at(gen_idx)
    g = images.cols
    if g != M.min_gens:
        raise EngineInconsistency("generator count disagrees with min_gens")
    eps = free_map_from_images(M, images)
    if M.dim == 0:
        section = Mat.zeros(A.field, 0, 0)
    else:
        section = solve(eps, Mat.identity(A.field, M.dim))
        if section is None:
            raise EngineInconsistency("minimal cover is not surjective")
    got = Cover(M, g, images, eps, section)
    M._cache["cover"] = got
    return got


def free_submodule_generators(A, r, K):
    """Minimal generating columns for the submodule of R^r spanned by the
    k-subspace K (an (r*dim x w) matrix); returns a column submatrix of a
    basis of K."""
    Kb = column_space_basis(K)[0]
    if Kb.cols == 0:
        return Kb
    mi = A.local.max_ideal
    eye = np.eye(r, dtype=np.int64)
    blocks = []
    for b in range(mi.cols):
        mb = A.mult_matrix(mi.col(b))
        blk = np.kron(eye, mb.a)
        if A.field.p is not None:
            blk = np.asarray(blk, dtype=np.int64) % A.field.p
        blocks.append(Mat(A.field, blk) @ Kb)
    if blocks:
        mK = column_space_basis(Mat.hcat(blocks))[0]
    else:
        mK = Mat.zeros(A.field, Kb.rows, 0)
    _, piv = rref(Mat.hcat([mK, Kb]))
    gen_cols = [pc - mK.cols for pc in piv if pc >= mK.cols]
    return Kb.cols_at(gen_cols)


def _ring_columns(A, r, cols):
    """Reinterpret k-vectors in R^r (slot-major coordinates) as a RingMat."""
    n = A.dim
    out = RingMat.zeros(A, r, cols.cols)
    for j in range(cols.cols):
        for i in range(r):
            out.arr[i, j, :] = cols.a[i * n : (i + 1) * n, j]
    return out


class Presentation:
    """Minimal presentation R^s --d1--> R^g --eps--> M -> 0."""

    __slots__ = ("cover", "d1")

    def __init__(self, cover, d1):
        self.cover = cover
        self.d1 = d1


def syzygy_presentation(M):
    got = M._cache.get("presentation")
    if got is not None:
        return got
    A = M.alg
    cover = minimal_cover(M)
    K = kernel_basis(cover.eps)
    gens = free_submodule_generators(A, cover.g, K)
    d1 = _ring_columns(A, cover.g, gens)
    got = Presentation(cover, d1)
    M._cache["presentation"] = got
    return got


class HomData:
    """Hom_R(M, N) as a module of generator tuples.

    The tuple space W lives inside N^g for a minimal generating set of M;
    to_matrix/from_matrix convert between tuple coordinates and actual
    dN x dM matrices commuting with the action.
    """

    __slots__ = ("module", "source", "target", "W", "g", "_cover")

    def __init__(self, module, source, target, W, g, cover):
        self.module = module
        self.source = source
        self.target = target
        self.W = W
        self.g = g
        self._cover = cover

    @property
    def dim(self):
        return self.module.dim

    def to_matrix(self, coords):
        tup = self.W @ coords
        N = self.target
        images = Mat(
            N.alg.field, tup.a.reshape(self.g, N.dim).T.copy()
        )
        if self.source.dim == 0:
            return Mat.zeros(N.alg.field, N.dim, 0)
        return free_map_from_images(N, images) @ self._cover.section

    def basis_matrix(self, j):
        e = Mat.zeros(self.module.alg.field, self.module.dim, 1)
        e.a[j, 0] = self.module.alg.field.one()
        return self.to_matrix(e)

    def from_matrix(self, phi):
        """Tuple coordinates of a matrix, or None if it is not in Hom."""
        N = self.target
        tup_mat = phi @ self._cover.images  # dN x g
        tup = Mat(N.alg.field, tup_mat.a.T.reshape(self.g * N.dim, 1).copy())
        return solve(self.W, tup)


def hom_module(M, N):
    """Hom_R(M, N) with conversion data; presentation-based, so the cost is
    elimination on an (s*dN) x (g*dN) matrix rather than intertwiner systems."""
    A = M.alg
    if A.key() != N.alg.key():
        raise ValidationError("Hom over different algebras")
    pres = syzygy_presentation(M)
    g = pres.cover.g
    D = pres.d1.transpose().k_matrix(N.rho)  # (s*dN) x (g*dN)
    W = kernel_basis(D)
    h = W.cols
    n = A.dim
    eye = np.eye(g, dtype=np.int64)
    rho = []
    for i in range(n):
        blk = np.kron(eye, N.rho[i])
        if A.field.p is not None:
            blk = np.asarray(blk, dtype=np.int64) % A.field.p
        X = solve(W, Mat(A.field, blk) @ W)
        if X is None:
            raise EngineInconsistency("Hom tuple space is not action-stable")
        rho.append(X.a)
    if A.field.p is None:
        arr = np.empty((n, h, h), dtype=object)
    else:
        arr = np.empty((n, h, h), dtype=np.int64)
    for i in range(n):
        arr[i] = rho[i]
    module = FgModule(A, arr, validate=False)
    return HomData(module, M, N, W, g, pres.cover)


class TensorData:
    """M tensor_R N presented as a quotient of the k-tensor square."""

    __slots__ = ("module", "proj", "section", "left", "right")

    def __init__(self, module, proj, section, left, right):
        self.module = module
        self.proj = proj
        self.section = section
        self.left = left
        self.right = right

    def pure(self, m_vec, n_vec):
        col = np.kron(m_vec.a, n_vec.a)
        if self.module.alg.field.p is not None:
            col = np.asarray(col, dtype=np.int64) % self.module.alg.field.p
        return self.proj @ Mat(self.module.alg.field, col)


def tensor_module(M, N):
    A = M.alg
    if A.key() != N.alg.key():
        raise ValidationError("tensor over different algebras")
    dM, dN = M.dim, N.dim
    p = A.field.p
    eyeM = np.eye(dM, dtype=np.int64)
    eyeN = np.eye(dN, dtype=np.int64)
    mi = A.local.max_ideal
    rels = []
    for b in range(mi.cols):
        a = mi.col(b)
        RM = M.element_action(a).a
        RN = N.element_action(a).a
        blk = np.kron(RM, eyeN) - np.kron(eyeM, RN)
        if p is not None:
            blk = np.asarray(blk, dtype=np.int64) % p
        rels.append(Mat(A.field, blk))
    if rels:
        S = Mat.hcat(rels)
    else:
        S = Mat.zeros(A.field, dM * dN, 0)
    proj, section = quotient_space(S)
    n = A.dim
    q = proj.rows
    if p is None:
        arr = np.empty((n, q, q), dtype=object)
    else:
        arr = np.empty((n, q, q), dtype=np.int64)
    for i in range(n):
        blk = np.kron(M.rho[i], eyeN)
        if p is not None:
            blk = np.asarray(blk, dtype=np.int64) % p
        arr[i] = (proj @ Mat(A.field, blk) @ section).a
    module = FgModule(A, arr, validate=False)
    return TensorData(module, proj, section, M, N)


def presented_module(A, B, name=None):
    """Cokernel of the ring matrix B: R^cols -> R^rows; (module, proj)."""
    F = free_module(A, B.rows)
    S = B.k_matrix(A.regular_action())
    module, proj, _ = quotient_module(F, S)
    module.name = name
    return module, proj


# -- isomorphism testing ---------------------------------------------------------


def _betti_prefix(M, upto=2):
    """Betti numbers beta_0..beta_upto from iterated syzygies."""
    A = M.alg
    out = [M.min_gens]
    pres = syzygy_presentation(M)
    d = pres.d1
    out.append(d.cols)
    reg = A.regular_action()
    for _ in range(upto - 1):
        if d.cols == 0:
            out.append(0)
            continue
        K = kernel_basis(d.k_matrix(reg))
        gens = free_submodule_generators(A, d.cols, K)
        d = _ring_columns(A, d.cols, gens)
        out.append(d.cols)
    return tuple(out[: upto + 1])


def is_isomorphic(M, N, seed=0xDC0DE, max_enum=32768, random_tries=200):
    """Decide whether two modules are isomorphic.

    Returns (verdict, reason): verdict True and False are certified
    (explicit isomorphism, or a separating invariant / exhausted search);
    None means the randomized search was inconclusive.
    """
    if M.alg.key() != N.alg.key():
        raise ValidationError("isomorphism test over different algebras")
    if M.invariants_key() != N.invariants_key():
        return False, (
            f"invariants differ: {M.invariants_key()} vs {N.invariants_key()}"
        )
    d = M.dim
    if d == 0:
        return True, "both modules are zero"
    hom = hom_module(M, N)
    h = hom.dim
    if h == 0:
        return False, "no nonzero homomorphisms exist"
    basis = [hom.basis_matrix(j) for j in range(h)]
    for j, phi in enumerate(basis):
        if rank(phi) == d:
            return True, f"basis homomorphism {j} is invertible"
    field = M.alg.field
    rng = random.Random(seed)
    for _ in range(random_tries):
        if field.p is not None:
            coeffs = [rng.randrange(field.p) for _ in range(h)]
        else:
            coeffs = [rng.randint(-9, 9) for _ in range(h)]
        phi = basis[0].scale(coeffs[0])
        for j in range(1, h):
            phi = phi + basis[j].scale(coeffs[j])
        if rank(phi) == d:
            return True, "random combination of basis homomorphisms is invertible"
    if field.p is not None and field.p**h <= max_enum:
        # projective enumeration: first nonzero coefficient normalized to 1
        import itertools

        for lead in range(h):
            for tail in itertools.product(range(field.p), repeat=h - lead - 1):
                phi = basis[lead]
                for j, c in enumerate(tail):
                    if c:
                        phi = phi + basis[lead + 1 + j].scale(c)
                if rank(phi) == d:
                    return True, "exhaustive search found an isomorphism"
        return False, "no isomorphism exists (exhaustive search over Hom)"
    bM = _betti_prefix(M)
    bN = _betti_prefix(N)
    if bM != bN:
        return False, f"Betti numbers differ: {bM} vs {bN}"
    return None, "randomized isomorphism search inconclusive"
