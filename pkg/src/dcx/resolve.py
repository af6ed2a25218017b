"""Free resolutions: minimal resolutions of modules with structural
certificates, and semi-free resolutions of bounded complexes.

The module route iterates minimal covers of syzygies, so its output is
minimal by construction and its ranks are Betti numbers.  Two structural
certificates can be read off along the way and justify extrapolation
beyond the computed window:
  * a syzygy that is killed by the maximal ideal is a direct sum of
    copies of the residue field, which ties the tail of the resolution
    to the resolution of the residue field;
  * two syzygies in the same class that are certified isomorphic make
    the resolution eventually periodic.

The complex route builds a free complex F with a quasi-isomorphism
F -> X stage by stage: at each degree it covers the homology of the
mapping cone built so far, which is exactly what is needed to make the
cone exact there.  The output is quasi-isomorphic to X through the
computed window but is NOT minimal in general; numerical invariants are
never read from it directly.
"""

from __future__ import annotations

import numpy as np

from .cplx import ChainMap, Complex, FreeComplex
from .errors import ValidationError, WindowExceeded
from .exact import Mat, kernel_basis, solve
from .fgmod import (
    _ring_columns,
    direct_sum,
    free_map_from_images,
    free_module,
    free_submodule_generators,
    is_isomorphic,
    minimal_cover,
    quotient_module,
    submodule,
    zero_module,
)

DEFAULT_RANK_BUDGET = 4096


class ModuleResolution:
    """Growing minimal free resolution of a module.

    finite_pd is None while the resolution keeps going, the projective
    dimension once a syzygy vanishes, and -1 for the zero module.
    """

    __slots__ = (
        "module",
        "rank_budget",
        "finite_pd",
        "budget_exceeded",
        "_granks",
        "_rdiffs",
        "_kernels",
        "_syz",
        "_certs",
    )

    def __init__(self, module, rank_budget=DEFAULT_RANK_BUDGET):
        self.module = module
        self.rank_budget = rank_budget
        self.budget_exceeded = False
        self._syz = {}
        self._certs = {}
        if module.dim == 0:
            self.finite_pd = -1
            self._granks = [0]
            self._rdiffs = {}
            self._kernels = []
        else:
            self.finite_pd = None
            cover = minimal_cover(module)
            self._granks = [cover.g]
            self._rdiffs = {}
            self._kernels = [kernel_basis(cover.eps)]

    @property
    def top(self):
        """Highest degree whose Betti number has been computed."""
        return len(self._granks) - 1

    def ensure(self, top, rank_budget=None):
        if rank_budget is not None and rank_budget > self.rank_budget:
            self.rank_budget = rank_budget
            self.budget_exceeded = False
        A = self.module.alg
        reg = A.regular_action()
        while self.top < top and self.finite_pd is None and not self.budget_exceeded:
            v = len(self._granks)
            K = self._kernels[v - 1]
            gens = free_submodule_generators(A, self._granks[v - 1], K)
            if gens.cols == 0:
                self.finite_pd = v - 1
                break
            if sum(self._granks) + gens.cols > self.rank_budget:
                self.budget_exceeded = True
                break
            d = _ring_columns(A, self._granks[v - 1], gens)
            self._granks.append(gens.cols)
            self._rdiffs[v] = d
            self._kernels.append(kernel_basis(d.k_matrix(reg)))
        return self

    def betti(self, v):
        if v < 0:
            return 0
        if v <= self.top:
            return self._granks[v]
        if self.finite_pd is not None:
            return 0
        raise WindowExceeded(
            f"Betti number in degree {v} is beyond the computed window {self.top}"
        )

    def betti_known(self, v):
        try:
            return self.betti(v)
        except WindowExceeded:
            return None

    def free(self):
        hi = self.top
        ranks = {v: self._granks[v] for v in range(hi + 1)}
        return FreeComplex(self.module.alg, 0, hi, ranks, dict(self._rdiffs), validate=False)

    def augmentation(self):
        """Chain map from the resolution to the module in degree zero."""
        F = self.free().to_complex()
        X = Complex.from_modules(self.module.alg, 0, [self.module], [], validate=False)
        comps = {}
        if self.module.dim:
            comps[0] = minimal_cover(self.module).eps
        return ChainMap(F, X, comps, validate=False)

    def syzygy(self, s):
        """The s-th syzygy module; s = 0 gives the module itself."""
        if s == 0:
            return self.module
        if self.finite_pd is not None and s > max(self.finite_pd, 0):
            return zero_module(self.module.alg)
        got = self._syz.get(s)
        if got is not None:
            return got
        if s - 1 >= len(self._kernels):
            raise WindowExceeded(f"syzygy {s} is beyond the computed window {self.top}")
        K = self._kernels[s - 1]
        if K.cols == 0:
            M = zero_module(self.module.alg)
        else:
            amb = free_module(self.module.alg, self._granks[s - 1])
            M = submodule(amb, K)[0]
        self._syz[s] = M
        return M

    def syzygy_dim(self, s):
        """k-dimension of the s-th syzygy without building the module."""
        if s == 0:
            return self.module.dim
        if self.finite_pd is not None and s > max(self.finite_pd, 0):
            return 0
        if s - 1 >= len(self._kernels):
            raise WindowExceeded(f"syzygy {s} is beyond the computed window {self.top}")
        return self._kernels[s - 1].cols

    def available_syzygies(self):
        if self.finite_pd is not None:
            return max(self.finite_pd, 0)
        return len(self._kernels)

    def semisimple_cert(self):
        """(s, e) with the s-th syzygy isomorphic to e copies of the residue
        field, smallest s >= 1 visible in the window; None if not seen."""
        if "semisimple" in self._certs:
            return self._certs["semisimple"]
        found = None
        for s in range(1, self.available_syzygies() + 1):
            d = self.syzygy_dim(s)
            if d == 0:
                break
            if self._kernel_is_semisimple(s):
                found = (s, d)
                break
        self._certs["semisimple"] = found
        return found

    def _kernel_is_semisimple(self, s):
        """Does the maximal ideal kill the s-th kernel inside its ambient
        free module?  The free action is block-diagonal copies of the
        regular representation, so the check runs blockwise and never
        builds the syzygy as an abstract module."""
        K = self._kernels[s - 1]
        if K.cols == 0:
            return True
        alg = self.module.alg
        n = alg.dim
        r = self._granks[s - 1]
        mi = alg.local.max_ideal
        flat = K.a.reshape(r, n, K.cols).transpose(1, 0, 2).reshape(n, r * K.cols)
        for b in range(mi.cols):
            prod = alg.mult_matrix(mi.col(b)).a @ flat
            if alg.field.p is not None:
                prod = prod % alg.field.p
            if np.any(prod != 0):
                return False
        return True

    def periodicity_cert(self, max_period=2, size_cap=300):
        """(s, p) with syzygy s certified isomorphic to syzygy s + p; the
        smallest s, then the smallest p, visible in the window.  None means
        no certified repetition was found, not that none exists."""
        key = ("periodic", self.available_syzygies(), max_period)
        if key in self._certs:
            return self._certs[key]
        found = None
        upper = self.available_syzygies()
        for s in range(0, upper):
            for p in range(1, max_period + 1):
                if s + p > upper:
                    break
                # dimensions come from the stored kernels; mismatched or
                # oversized pairs are skipped without building the modules
                ds, dp = self.syzygy_dim(s), self.syzygy_dim(s + p)
                if ds == 0 or ds > size_cap or dp > size_cap or ds != dp:
                    continue
                Ms, Mp = self.syzygy(s), self.syzygy(s + p)
                verdict, _ = is_isomorphic(Ms, Mp)
                if verdict is True:
                    found = (s, p)
                    break
            if found:
                break
        self._certs[key] = found
        return found


def resolve_module(M, top, rank_budget=DEFAULT_RANK_BUDGET):
    res = M._cache.get("res")
    if res is None:
        res = ModuleResolution(M, rank_budget)
        M._cache["res"] = res
    res.ensure(top, rank_budget)
    return res


class ComplexResolution:
    """Semi-free replacement of a bounded complex.

    The cone over phi is exact in all degrees <= top, so phi induces an
    isomorphism on homology strictly below top; if finished is True the
    construction closed up and phi is a genuine quasi-isomorphism.
    """

    __slots__ = ("source", "free", "phi_comps", "top", "finished", "budget_exceeded")

    def __init__(self, source, free, phi_comps, top, finished, budget_exceeded):
        self.source = source
        self.free = free
        self.phi_comps = phi_comps
        self.top = top
        self.finished = finished
        self.budget_exceeded = budget_exceeded

    def phi(self):
        return ChainMap(self.free.to_complex(), self.source, self.phi_comps, validate=False)


def resolve_complex(X, top, rank_budget=DEFAULT_RANK_BUDGET):
    """Build a free complex F with a map F -> X whose cone is exact in all
    degrees <= top.  F sits in degrees from inf H(X) up to at most top."""
    A = X.alg
    a = X.inf_h()
    if a is None:
        free = FreeComplex(A, X.lo, X.lo, {X.lo: 0}, {}, validate=False)
        return ComplexResolution(X, free, {}, top, True, False)
    if top < a:
        raise ValidationError(
            f"resolution window {top} lies below the bottom homology degree {a}"
        )
    tau, incl = X.truncate_below_at_cycles(a)
    reg = A.regular_action()
    n = A.dim
    granks = {}
    rdiffs = {}
    phi_tau = {}
    finished = False
    budget_exceeded = False
    reached = a - 1
    v = a
    while v <= top:
        r_prev = granks.get(v - 1, 0)
        dprev = rdiffs.get(v - 1)
        dF_k = (
            dprev.k_matrix(reg)
            if dprev is not None
            else Mat.zeros(A.field, granks.get(v - 2, 0) * n, r_prev * n)
        )
        phi_prev = phi_tau.get(
            v - 1, Mat.zeros(A.field, tau.term_dim(v - 1), r_prev * n)
        )
        # kernel of the cone differential on F_{v-1} (+) tau_v
        D = Mat.block(
            A.field,
            [[-dF_k, None], [phi_prev, tau.diff(v)]],
            row_dims=[dF_k.rows, tau.term_dim(v - 1)],
            col_dims=[r_prev * n, tau.term_dim(v)],
        )
        K = kernel_basis(D)
        B = Mat.block(
            A.field,
            [[None], [tau.diff(v + 1)]],
            row_dims=[r_prev * n, tau.term_dim(v)],
            col_dims=[tau.term_dim(v + 1)],
        )
        if K.cols == 0:
            g = 0
        else:
            ambient = direct_sum([free_module(A, r_prev), tau.module(v)])
            Kmod, Kb = submodule(ambient, K)
            Bz = solve(Kb, B)
            if Bz is None:
                raise ValidationError("cone boundaries escape the cone cycles")
            Q, _, secQ = quotient_module(Kmod, Bz)
            g = 0
            if Q.dim:
                cov = minimal_cover(Q)
                reps = Kb @ (secQ @ cov.images)
                g = cov.g
        if g == 0:
            granks[v] = 0
            phi_tau[v] = Mat.zeros(A.field, tau.term_dim(v), 0)
            if v > tau.hi:
                reached = v
                finished = True
                break
        else:
            if sum(granks.values()) + g > rank_budget:
                budget_exceeded = True
                break
            Y = reps.rows_at(range(r_prev * n))
            Xc = reps.rows_at(range(r_prev * n, reps.rows))
            granks[v] = g
            if v > a:
                rdiffs[v] = _ring_columns(A, r_prev, -Y)
            phi_tau[v] = free_map_from_images(tau.module(v), Xc)
        reached = v
        v += 1
    hi = max(reached, a)
    while hi > a and granks.get(hi, 0) == 0:
        rdiffs.pop(hi, None)
        hi -= 1
    ranks = {w: granks.get(w, 0) for w in range(a, hi + 1)}
    free = FreeComplex(A, a, hi, ranks, rdiffs, validate=False)
    comps = {}
    for w in range(a, hi + 1):
        f = incl.component(w) @ phi_tau.get(w, Mat.zeros(A.field, tau.term_dim(w), 0))
        if f.rows and f.cols:
            comps[w] = f
    return ComplexResolution(X, free, comps, reached, finished, budget_exceeded)
