"""Semidualizing complexes, reflexivity dimension, and the Auslander class.

Over an Artinian local ring every semidualizing complex is a shift of a
semidualizing module.  The reason is the corner identity: for complexes
with bounded nonzero homology, the top homology of Hom into a resolution
sits in degree sup(target) - inf(source) and equals the ordinary Hom of
the two edge homology modules.  Over an Artinian local ring that Hom is
never zero (the source surjects onto k, which embeds in the socle of the
target), so a complex whose self-Hom is the ring in degree zero cannot
have spread-out homology.  This collapses every check in this file to a
module computation plus shift bookkeeping, with exact certificates for
the structural parts and tail certificates for the Ext/Tor parts.

The same corner identity makes grade exact: the first nonvanishing
Ext degree against any complex is read off the edge homologies alone.
"""

from __future__ import annotations

from .derived import (
    Certificate,
    DEFAULT_WINDOW,
    ext_dims,
    tor_dims,
    _homology_profile,
)
from .errors import (
    EngineInconsistency,
    NotSemidualizing,
    ValidationError,
    ZeroComplex,
)
from .exact import Mat, rank
from .fgmod import FgModule, hom_module, tensor_module
from .resolve import DEFAULT_RANK_BUDGET


def _as_shifted_module(obj):
    """(module, shift) for anything whose homology sits in one degree.

    Raises ZeroComplex for exact complexes and ValidationError when the
    homology is spread over several degrees.
    """
    if isinstance(obj, FgModule):
        return obj, 0
    s, i, X = _homology_profile(obj)
    if s != i:
        raise ValidationError(
            f"homology is spread over degrees {i}..{s}; this check needs a "
            f"module or a shift of one"
        )
    return X.homology_module(s), s


def biduality_map(M, C):
    """The evaluation m |-> (f |-> f(m)) from M into Hom(Hom(M,C),C).

    Returns (delta, H, HH) where delta is the k-matrix of the map and H,
    HH are the Hom data of the two stages.  The map is verified to be a
    module homomorphism; that is forced mathematically, so a failure is
    an engine bug.
    """
    F = M.alg.field
    H = hom_module(M, C)
    HH = hom_module(H.module, C)
    basis_mats = [H.basis_matrix(b) for b in range(H.module.dim)]
    cols = []
    for j in range(M.dim):
        ej = Mat.zeros(F, M.dim, 1)
        ej.a[j, 0] = F.one()
        if basis_mats:
            evj = Mat.hcat([bm @ ej for bm in basis_mats])
        else:
            evj = Mat.zeros(F, C.dim, 0)
        coords = HH.from_matrix(evj)
        if coords is None:
            raise EngineInconsistency("evaluation left the double dual")
        cols.append(coords)
    if cols:
        delta = Mat.hcat(cols)
    else:
        delta = Mat.zeros(F, HH.module.dim, 0)
    _check_module_hom(delta, M, HH.module, "biduality")
    return delta, H, HH


def tensor_unit_map(M, C):
    """The unit m |-> (c |-> c tensor m) from M into Hom(C, C tensor M).

    Returns (gamma, T, HT) with T the tensor data and HT the Hom data of
    the target.
    """
    F = M.alg.field
    T = tensor_module(C, M)
    HT = hom_module(C, T.module)
    cols = []
    for j in range(M.dim):
        ej = Mat.zeros(F, M.dim, 1)
        ej.a[j, 0] = F.one()
        pure_cols = []
        for a in range(C.dim):
            ea = Mat.zeros(F, C.dim, 1)
            ea.a[a, 0] = F.one()
            pure_cols.append(T.pure(ea, ej))
        if pure_cols:
            phi = Mat.hcat(pure_cols)
        else:
            phi = Mat.zeros(F, T.module.dim, 0)
        coords = HT.from_matrix(phi)
        if coords is None:
            raise EngineInconsistency("tensor unit left Hom(C, C tensor M)")
        cols.append(coords)
    if cols:
        gamma = Mat.hcat(cols)
    else:
        gamma = Mat.zeros(F, HT.module.dim, 0)
    _check_module_hom(gamma, M, HT.module, "tensor unit")
    return gamma, T, HT


def _check_module_hom(mat, src, dst, what):
    for i in range(src.alg.dim):
        if (mat @ src.action_of_basis(i)) != (dst.action_of_basis(i) @ mat):
            raise EngineInconsistency(f"the {what} map is not a module map")


def _bijective(mat, src_dim, dst_dim):
    return src_dim == dst_dim and rank(mat) == src_dim


class SdcVerdict:
    """Outcome of the semidualizing test.

    holds is True (no obstruction found; the certificate says how far
    that reaches) or False (always exact).  shift and module locate the
    single homology degree when there is one.
    """

    __slots__ = ("holds", "certificate", "shift", "module", "checks")

    def __init__(self, holds, certificate, shift=None, module=None, checks=()):
        self.holds = holds
        self.certificate = certificate
        self.shift = shift
        self.module = module
        self.checks = list(checks)

    def to_json(self):
        return {
            "holds": self.holds,
            "certificate": self.certificate.to_json(),
            "shift": self.shift,
            "checks": [
                {"name": n, "ok": ok, "certificate": c.to_json()}
                for n, ok, c in self.checks
            ],
        }

    def __repr__(self):
        return f"SdcVerdict(holds={self.holds}, {self.certificate!r})"


def is_semidualizing(C, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """Is C a semidualizing complex: is the homothety R -> RHom(C, C) a
    quasi-isomorphism?

    Structural failures (zero, spread homology, a homothety that is not
    bijective) are falsified exactly.  The Ext-vanishing part carries a
    tail certificate when the syzygy structure supplies one and a window
    certificate otherwise.
    """
    A = C.alg
    try:
        M, shift = _as_shifted_module(C)
    except ZeroComplex:
        cert = Certificate.exact(rule="zero-complex")
        return SdcVerdict(False, cert, checks=[("nonzero", False, cert)])
    except ValidationError:
        # spread homology: the corner of RHom(C, C) sits in degree
        # sup - inf > 0 and is the Hom of the edge homology modules,
        # which cannot vanish over an Artinian local ring
        s, i, X = _homology_profile(C)
        corner = hom_module(X.homology_module(i), X.homology_module(s)).module.dim
        if corner == 0:
            raise EngineInconsistency(
                "Hom of nonzero modules over an Artinian local ring vanished"
            )
        cert = Certificate.exact(
            rule="amplitude", amplitude=s - i, corner_dim=corner
        )
        return SdcVerdict(False, cert, checks=[("amplitude-zero", False, cert)])
    if M.dim == 0:
        cert = Certificate.exact(rule="zero-complex")
        return SdcVerdict(False, cert, checks=[("nonzero", False, cert)])

    key = ("sdc", window)
    got = M._cache.get(key)
    if got is not None:
        return SdcVerdict(got.holds, got.certificate, shift, M, got.checks)

    checks = []
    # homothety: r |-> r*id is injective iff the annihilator vanishes and
    # then bijective iff the dimensions match
    hom_dim = hom_module(M, M).module.dim
    chi_ok = M.ann_dim == 0 and hom_dim == A.dim
    chi_cert = Certificate.exact(
        rule="homothety", ann_dim=M.ann_dim, hom_dim=hom_dim, ring_dim=A.dim
    )
    checks.append(("homothety-bijective", chi_ok, chi_cert))
    if not chi_ok:
        out = SdcVerdict(False, chi_cert, shift, M, checks)
        M._cache[key] = out
        return out

    ok, ext_cert = ext_dims(M, M, window=window, rank_budget=rank_budget
                            ).eventually_zero(1)
    if ok is False:
        checks.append(("self-ext-vanishing", False, ext_cert))
        out = SdcVerdict(False, ext_cert, shift, M, checks)
        M._cache[key] = out
        return out
    verified = ok is True
    checks.append(("self-ext-vanishing", verified, ext_cert))
    cert = Certificate.weakest([chi_cert, ext_cert])
    out = SdcVerdict(True, cert, shift, M, checks)
    M._cache[key] = out
    return out


def is_shift_of_ring(C):
    """(verdict, shift): is C quasi-isomorphic to a shift of R?  Exact."""
    try:
        M, shift = _as_shifted_module(C)
    except ValidationError:
        return False, None
    return bool(M.is_free and M.min_gens == 1), shift


def is_dualizing_direct(C, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """Structural test for a dualizing complex: one homology module that
    is cofree with one-dimensional socle (the injective hull of k).
    Exact both ways; the window is unused and kept for interface parity."""
    try:
        M, shift = _as_shifted_module(C)
    except ZeroComplex:
        return SdcVerdict(False, Certificate.exact(rule="zero-complex"))
    except ValidationError:
        return SdcVerdict(False, Certificate.exact(rule="not-one-degree"))
    if M.dim == 0:
        return SdcVerdict(False, Certificate.exact(rule="zero-complex"))
    cofree = M.is_cofree
    socle = M.socle_dim
    holds = bool(cofree and socle == 1)
    cert = Certificate.exact(rule="cofree-socle", cofree=cofree, socle_dim=socle)
    return SdcVerdict(holds, cert, shift, M,
                      checks=[("cofree-with-simple-socle", holds, cert)])


class GcDimension:
    """Reflexivity dimension of X against a semidualizing C.

    finite is True with the value, or False with value None; the
    certificate grades how far the verdict is certified.
    """

    __slots__ = ("value", "finite", "certificate", "checks")

    def __init__(self, value, finite, certificate, checks=()):
        self.value = value
        self.finite = finite
        self.certificate = certificate
        self.checks = list(checks)

    def to_json(self):
        return {
            "value": self.value,
            "finite": self.finite,
            "certificate": self.certificate.to_json(),
            "checks": [
                {"name": n, "ok": ok, "certificate": c.to_json()}
                for n, ok, c in self.checks
            ],
        }

    def __repr__(self):
        return (
            f"GcDimension(value={self.value}, finite={self.finite}, "
            f"{self.certificate!r})"
        )


def _gate_semidualizing(C, window, rank_budget):
    sdc = is_semidualizing(C, window=window, rank_budget=rank_budget)
    if sdc.holds is False:
        raise NotSemidualizing(
            f"the coefficient complex fails the semidualizing test: "
            f"{sdc.certificate!r}"
        )
    return sdc


def gc_dimension(X, C, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """Reflexivity dimension of X with respect to C.

    Over an Artinian local ring a module has reflexivity dimension 0 or
    infinity, so for X with homology in a single degree n the answer is
    n when the module there is totally reflexive and infinite otherwise.
    Total reflexivity is three checks: vanishing of Ext(M, C) above 0,
    vanishing of Ext(Hom(M,C), C) above 0, and bijectivity of the
    biduality map; the last is always exact.

    Two exact shortcuts bypass the generic route: when C is a shift of
    the ring and the ring is self-injective every module is totally
    reflexive, and when C is dualizing every module is reflexive to it.
    """
    sdc = _gate_semidualizing(C, window, rank_budget)
    M, n = _as_shifted_module(X)
    if M.dim == 0:
        raise ValidationError("the zero module has no reflexivity dimension")

    # a dualizing complex makes every module reflexive; this also covers
    # C = R over a self-injective ring, where R itself is cofree
    dualizing = is_dualizing_direct(C)
    if dualizing.holds:
        cert = Certificate.exact(rule="dualizing-coefficients")
        return GcDimension(n, True, cert,
                           checks=[("dualizing-coefficients", True, cert)])

    C0 = sdc.module
    checks = []
    ev1, c1 = ext_dims(M, C0, window=window, rank_budget=rank_budget
                       ).eventually_zero(1)
    checks.append(("ext-into-coefficients-vanishes", ev1, c1))
    if ev1 is False:
        return GcDimension(None, False, c1, checks)
    H = hom_module(M, C0)
    ev2, c2 = ext_dims(H.module, C0, window=window, rank_budget=rank_budget
                       ).eventually_zero(1)
    checks.append(("ext-of-dual-vanishes", ev2, c2))
    if ev2 is False:
        return GcDimension(None, False, c2, checks)
    delta, _, HH = biduality_map(M, C0)
    bd = _bijective(delta, M.dim, HH.module.dim)
    c3 = Certificate.exact(rule="biduality", source_dim=M.dim,
                           double_dual_dim=HH.module.dim)
    checks.append(("biduality-bijective", bd, c3))
    if not bd:
        return GcDimension(None, False, c3, checks)
    cert = Certificate.weakest([sdc.certificate, c1, c2, c3])
    return GcDimension(n, True, cert, checks)


def grade_with_respect_to(X, C):
    """The first degree where Ext(X, C) is nonzero: exactly
    inf(homology of X) - sup(homology of C) over an Artinian local ring,
    because the corner homology of RHom is the Hom of the two edge
    modules and that Hom never vanishes.  Raises ZeroComplex when either
    argument is exact."""
    sX, iX, Xc = _homology_profile(X)
    sC, _, Cc = _homology_profile(C)
    corner = hom_module(Xc.homology_module(iX), Cc.homology_module(sC)).module.dim
    if corner == 0:
        raise EngineInconsistency(
            "Hom of nonzero modules over an Artinian local ring vanished"
        )
    return iX - sC, Certificate.exact(rule="corner", corner_dim=corner)


class AuslanderMembership:
    """Whether X lies in the Auslander class of C, with graded evidence."""

    __slots__ = ("member", "certificate", "checks")

    def __init__(self, member, certificate, checks=()):
        self.member = member
        self.certificate = certificate
        self.checks = list(checks)

    def to_json(self):
        return {
            "member": self.member,
            "certificate": self.certificate.to_json(),
            "checks": [
                {"name": n, "ok": ok, "certificate": c.to_json()}
                for n, ok, c in self.checks
            ],
        }

    def __repr__(self):
        return f"AuslanderMembership(member={self.member}, {self.certificate!r})"


def auslander_membership(X, C, window=DEFAULT_WINDOW,
                         rank_budget=DEFAULT_RANK_BUDGET):
    """Does X belong to the Auslander class of C?

    For a module M the membership conditions are: Tor(C, M) vanishes
    above 0, Ext(C, C tensor M) vanishes above 0, and the unit
    M -> Hom(C, C tensor M) is bijective.  The unit is exact; the two
    vanishing conditions carry tail or window certificates.  Membership
    is invariant under shift, so a complex with one homology degree is
    checked through its module.
    """
    sdc = _gate_semidualizing(C, window, rank_budget)
    M, _ = _as_shifted_module(X)
    if M.dim == 0:
        cert = Certificate.exact(rule="zero-module")
        return AuslanderMembership(True, cert, [("zero-module", True, cert)])
    C0 = sdc.module
    checks = []
    t_ev, tc = tor_dims(C0, M, window=window, rank_budget=rank_budget
                        ).eventually_zero(1)
    checks.append(("tor-with-coefficients-vanishes", t_ev, tc))
    if t_ev is False:
        return AuslanderMembership(False, tc, checks)
    gamma, T, HT = tensor_unit_map(M, C0)
    e_ev, ec = ext_dims(C0, T.module, window=window, rank_budget=rank_budget
                        ).eventually_zero(1)
    checks.append(("ext-from-coefficients-vanishes", e_ev, ec))
    if e_ev is False:
        return AuslanderMembership(False, ec, checks)
    un = _bijective(gamma, M.dim, HT.module.dim)
    uc = Certificate.exact(rule="tensor-unit", source_dim=M.dim,
                           target_dim=HT.module.dim)
    checks.append(("tensor-unit-bijective", un, uc))
    if not un:
        return AuslanderMembership(False, uc, checks)
    cert = Certificate.weakest([sdc.certificate, tc, ec, uc])
    return AuslanderMembership(True, cert, checks)
