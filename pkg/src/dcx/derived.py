"""Derived-category invariants with certified validity ranges.

Every numeric answer carries a certificate:
  * exact     the value is forced by a finite computation (finite
                projective dimension, a free or cofree argument, or an
                explicit nonzero witness in the window);
  * periodic  the value follows from a certified structural recurrence
                on syzygies (isomorphic repeating syzygies, or a syzygy
                that is a sum of copies of the residue field, giving a
                geometric tail);
  * window    verified only through a stated degree bound.
Ordering: exact beats periodic beats window.  A False answer is always
backed by an exact witness.  When two independently certain routes
disagree the engine raises EngineInconsistency, which is a bug alarm
rather than a data condition.

Over an Artinian local ring both projective and injective dimension are
exactly decidable: a finite projective dimension forces dimension zero
(depth is zero), so pd is 0 for free modules and infinite otherwise;
Matlis duality does the same for injective dimension via cofreeness.
"""

from __future__ import annotations

from .cplx import Complex, FreeComplex, complex_from_module
from .errors import EngineInconsistency, WindowExceeded, ZeroComplex
from .exact import rank
from .fgmod import (
    FgModule,
    hom_module,
    k_dual,
    residue_field_module,
    tensor_module,
)
from .resolve import DEFAULT_RANK_BUDGET, resolve_complex, resolve_module

DEFAULT_WINDOW = 8


class Certificate:
    """What backs a reported value; kind is exact, periodic, or window."""

    _RANK = {"exact": 3, "periodic": 2, "window": 1}

    __slots__ = ("kind", "params")

    def __init__(self, kind, **params):
        if kind not in self._RANK:
            raise ValueError(f"unknown certificate kind {kind!r}")
        self.kind = kind
        self.params = params

    @classmethod
    def exact(cls, **params):
        return cls("exact", **params)

    @classmethod
    def periodic(cls, **params):
        return cls("periodic", **params)

    @classmethod
    def window(cls, bound, **params):
        return cls("window", bound=bound, **params)

    @property
    def rank(self):
        return self._RANK[self.kind]

    @property
    def is_certain(self):
        return self.kind != "window"

    @staticmethod
    def weakest(certs):
        return min(certs, key=lambda c: c.rank)

    def to_json(self):
        out = {"kind": self.kind}
        out.update(self.params)
        return out

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"Certificate({self.kind}{', ' + inner if inner else ''})"

    def __eq__(self, other):
        return (
            isinstance(other, Certificate)
            and self.kind == other.kind
            and self.params == other.params
        )


class _Tail:
    """Continuation rule for a dimension sequence past its window.

    zero:      dims vanish from `start`
    periodic:  dims[j] = dims[start + (j - start) % period] for j >= start
    geometric: dims[j] = dims[start] * ratio^(j - start) for j >= start
    unknown:   nothing past the window
    """

    __slots__ = ("kind", "start", "period", "ratio")

    def __init__(self, kind, start=0, period=None, ratio=None):
        self.kind = kind
        self.start = start
        self.period = period
        self.ratio = ratio


class DimSeq:
    """Dimensions of Ext or Tor in degrees 0..window plus a tail rule."""

    __slots__ = ("vals", "tail", "window")

    def __init__(self, vals, tail):
        self.vals = list(vals)
        self.tail = tail
        self.window = len(self.vals) - 1
        self._check_tail_consistency()

    def _check_tail_consistency(self):
        t = self.tail
        if t.kind == "zero":
            for j in range(t.start, self.window + 1):
                if self.vals[j] != 0:
                    raise EngineInconsistency(
                        f"tail says zero from {t.start} but window value at {j} "
                        f"is {self.vals[j]}"
                    )
        elif t.kind == "periodic":
            if t.start + t.period - 1 > self.window:
                raise EngineInconsistency("periodic tail extends past the window")
            for j in range(t.start, self.window + 1):
                if self.vals[j] != self.vals[t.start + (j - t.start) % t.period]:
                    raise EngineInconsistency(
                        f"window value at {j} breaks the certified period {t.period}"
                    )
        elif t.kind == "geometric":
            if t.start > self.window:
                raise EngineInconsistency("geometric tail starts past the window")
            for j in range(t.start, self.window + 1):
                if self.vals[j] != self.vals[t.start] * t.ratio ** (j - t.start):
                    raise EngineInconsistency(
                        f"window value at {j} breaks the certified ratio {t.ratio}"
                    )

    def dim(self, j):
        if j < 0:
            return 0
        if j <= self.window:
            return self.vals[j]
        t = self.tail
        if t.kind == "zero":
            return 0
        if t.kind == "periodic":
            return self.vals[t.start + (j - t.start) % t.period]
        if t.kind == "geometric":
            return self.vals[t.start] * t.ratio ** (j - t.start)
        raise WindowExceeded(f"degree {j} is beyond the verified window {self.window}")

    def known(self, j):
        try:
            return self.dim(j)
        except WindowExceeded:
            return None

    def values(self, upto):
        return [self.dim(j) for j in range(upto + 1)]

    def certificate(self):
        t = self.tail
        if t.kind == "zero":
            return Certificate.exact(rule="vanishing-tail", start=t.start)
        if t.kind == "periodic":
            return Certificate.periodic(start=t.start, period=t.period)
        if t.kind == "geometric":
            return Certificate.periodic(start=t.start, ratio=t.ratio)
        return Certificate.window(self.window)

    def eventually_zero(self, from_degree=0):
        """Is dim(j) = 0 for every j >= from_degree?  (verdict, certificate).
        A False verdict always comes with an exact nonzero witness."""
        for j in range(from_degree, self.window + 1):
            if self.vals[j] != 0:
                return False, Certificate.exact(witness_degree=j, value=self.vals[j])
        t = self.tail
        if t.kind == "zero":
            return True, Certificate.exact(rule="vanishing-tail", start=t.start)
        if t.kind in ("periodic", "geometric"):
            if not self._tail_alive():
                return True, self.certificate()
            # window part vanished but the certified tail does not: the
            # recurrence supplies a nonzero value just past the window
            reach = t.period if t.kind == "periodic" else 1
            for j in range(self.window + 1, self.window + 1 + reach):
                if self.dim(j) != 0:
                    return False, Certificate.exact(
                        witness_degree=j, value=self.dim(j), rule=t.kind + "-tail"
                    )
        return None, Certificate.window(self.window)

    def support_top(self):
        """Where the sequence stops being nonzero.

        ('zero', None, cert)       every value vanishes
        ('finite', j, cert)        j is the largest degree with a nonzero value
        ('unbounded', None, cert)  the certified tail stays nonzero forever
        Raises WindowExceeded when the tail is unknown and the window does
        not settle the question.
        """
        t = self.tail
        if t.kind in ("periodic", "geometric") and self._tail_alive():
            return "unbounded", None, self.certificate()
        if t.kind == "unknown":
            raise WindowExceeded(
                f"support is not settled within the window {self.window}"
            )
        # tail contributes nothing, so the window decides
        for j in range(self.window, -1, -1):
            if self.vals[j] != 0:
                return "finite", j, self.certificate()
        return "zero", None, self.certificate()

    def _tail_alive(self):
        t = self.tail
        if t.kind == "periodic":
            return any(self.vals[t.start + r] != 0 for r in range(t.period))
        if t.kind == "geometric":
            return self.vals[t.start] != 0
        return False


def _zero_dimseq(window):
    return DimSeq([0] * (window + 1), _Tail("zero", start=0))


def _tail_from_certs(res, window, res_k):
    """Continuation rule for Ext/Tor dimensions against the first argument's
    resolution, from the structural certificates visible in the window."""
    if res.finite_pd is not None:
        return _Tail("zero", start=max(res.finite_pd, -1) + 1)
    per = res.periodicity_cert()
    if per is not None:
        s, p = per
        if s + p <= window:
            return _Tail("periodic", start=s + 1, period=p)
    ss = res.semisimple_cert()
    if ss is not None and res_k is not None:
        s, _ = ss
        if res_k.finite_pd is not None:
            return _Tail("zero", start=s + max(res_k.finite_pd, -1) + 2)
        per_k = res_k.periodicity_cert()
        if per_k is not None and s + 1 + per_k[1] - 1 <= window:
            return _Tail("periodic", start=s + 1, period=per_k[1])
        ss_k = res_k.semisimple_cert()
        if ss_k is not None and ss_k[0] == 1 and s + 1 <= window:
            return _Tail("geometric", start=s + 1, ratio=ss_k[1])
    return _Tail("unknown")


def _dims_from_resolution(res, N, window, expand):
    """Homology dimensions of Hom(F, N) or F (x) N degree by degree.

    expand(d, rho) turns a ring differential into the k-matrix of the induced
    map between consecutive terms of the chain in question.
    """
    dN = N.dim
    dims = []
    ranks = {}
    F = res.free()

    def rk(j):
        if j in ranks:
            return ranks[j]
        if res.finite_pd is not None and j > res.top:
            r = 0
        elif j > res.top:
            raise WindowExceeded(f"resolution window {res.top} is too short for {j}")
        else:
            fdiff = F.rdiff(j)
            r = rank(expand(fdiff, N.rho)) if fdiff.rows and fdiff.cols else 0
        ranks[j] = r
        return r

    for j in range(window + 1):
        bj = res.betti(j)
        if bj == 0:
            dims.append(0)
            continue
        dims.append(bj * dN - rk(j) - rk(j + 1))
    return dims


def _hom_expand(d, rho):
    return d.transpose().k_matrix(rho)


def _tensor_expand(d, rho):
    return d.k_matrix(rho)


def _ext_or_tor(M, N, window, rank_budget, expand, direct_dim0, cross_check):
    A = M.alg
    if M.dim == 0 or N.dim == 0:
        return _zero_dimseq(window)
    cache_key = (expand.__name__, N.digest(), window)
    got = M._cache.get(cache_key)
    if got is not None and not cross_check:
        return got
    kmod = residue_field_module(A)
    res = resolve_module(M, window + 1, rank_budget)
    if res.budget_exceeded and res.top < window + 1:
        raise WindowExceeded(
            f"rank budget stopped the resolution at degree {res.top}, "
            f"window {window} needs {window + 1}"
        )
    res_k = resolve_module(kmod, min(window + 1, 6), rank_budget)
    tail = _tail_from_certs(res, window, res_k)
    vals = _dims_from_resolution(res, N, window, expand)
    seq = DimSeq(vals, tail)
    if cross_check:
        d0 = direct_dim0(M, N)
        if d0 != seq.dim(0):
            raise EngineInconsistency(
                f"degree-zero dimension disagrees: resolution route {seq.dim(0)}, "
                f"direct route {d0}"
            )
    M._cache[cache_key] = seq
    return seq


def ext_dims(M, N, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET,
             cross_check=False):
    """Dimensions of Ext^j(M, N) for modules M, N."""
    return _ext_or_tor(
        M, N, window, rank_budget, _hom_expand,
        lambda a, b: hom_module(a, b).module.dim, cross_check,
    )


def tor_dims(M, N, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET,
             cross_check=False):
    """Dimensions of Tor_j(M, N) for modules M, N."""
    return _ext_or_tor(
        M, N, window, rank_budget, _tensor_expand,
        lambda a, b: tensor_module(a, b).module.dim, cross_check,
    )


def betti_sequence(M, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET,
                   cross_check=False):
    """Betti numbers beta_j(M) = dim Tor_j(M, k), read off the minimal
    resolution; the cross check recomputes them through the residue field's
    resolution, which is an independent chain."""
    if M.dim == 0:
        return _zero_dimseq(window)
    A = M.alg
    kmod = residue_field_module(A)
    res = resolve_module(M, window + 1, rank_budget)
    if res.budget_exceeded and res.top < window + 1:
        raise WindowExceeded(
            f"rank budget stopped the resolution at degree {res.top}"
        )
    res_k = resolve_module(kmod, min(window + 1, 6), rank_budget)
    tail = _tail_from_certs(res, window, res_k)
    vals = [res.betti(j) for j in range(window + 1)]
    seq = DimSeq(vals, tail)
    if cross_check:
        other = tor_dims(kmod, M, window=min(window, res_k.top - 1),
                         rank_budget=rank_budget)
        for j in range(other.window + 1):
            if other.vals[j] != seq.vals[j]:
                raise EngineInconsistency(
                    f"Betti number at {j} disagrees between the minimal "
                    f"resolution ({seq.vals[j]}) and the symmetric Tor route "
                    f"({other.vals[j]})"
                )
    return seq


def bass_sequence(N, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET,
                  cross_check=False):
    """Bass numbers mu^j(N) = dim Ext^j(k, N); the cross check uses Matlis
    duality mu^j(N) = beta_j(dual N), an independent resolution."""
    if N.dim == 0:
        return _zero_dimseq(window)
    A = N.alg
    if N.is_cofree:
        # injective modules: the only Bass number is the socle, in degree 0
        vals = [0] * (window + 1)
        vals[0] = N.socle_dim
        return DimSeq(vals, _Tail("zero", start=1))
    kmod = residue_field_module(A)
    seq = ext_dims(kmod, N, window=window, rank_budget=rank_budget)
    if cross_check:
        dual = betti_sequence(k_dual(N), window=window, rank_budget=rank_budget)
        for j in range(window + 1):
            if dual.vals[j] != seq.vals[j]:
                raise EngineInconsistency(
                    f"Bass number at {j} disagrees between Ext from k "
                    f"({seq.vals[j]}) and the dual Betti route ({dual.vals[j]})"
                )
    return seq


def projective_dimension(M):
    """(pd, certificate); pd is 0, infinity (None), or -1 for the zero module.
    Exact in every case: over an Artinian local ring a finite projective
    dimension forces freeness."""
    if M.dim == 0:
        return -1, Certificate.exact(rule="zero-module")
    if M.is_free:
        return 0, Certificate.exact(rule="free")
    if M.alg.is_field:
        return 0, Certificate.exact(rule="field")
    return None, Certificate.exact(rule="nonfree-over-artinian")


def injective_dimension(N):
    """(id, certificate); id is 0, infinity (None), or -1 for the zero module."""
    if N.dim == 0:
        return -1, Certificate.exact(rule="zero-module")
    if N.is_cofree:
        return 0, Certificate.exact(rule="cofree")
    if N.alg.is_field:
        return 0, Certificate.exact(rule="field")
    return None, Certificate.exact(rule="noncofree-over-artinian")


def betti_positive_forever(M):
    """(verdict, certificate) for: beta_j(M) > 0 for every j >= 0."""
    pd, _ = projective_dimension(M)
    if pd is None:
        return True, Certificate.exact(rule="nonfree-over-artinian")
    return False, Certificate.exact(rule="finite-pd", pd=pd)


def bass_positive_forever(N):
    """(verdict, certificate) for: mu^j(N) > 0 for every j >= 0."""
    idim, _ = injective_dimension(N)
    if idim is None:
        return True, Certificate.exact(rule="noncofree-over-artinian")
    return False, Certificate.exact(rule="finite-id", injective_dimension=idim)


# -- derived functors as complexes ---------------------------------------------


class DerivedComplex:
    """A complex together with the degree range where its homology is
    faithful to the derived functor it approximates."""

    __slots__ = ("cx", "honest_lo", "honest_hi", "note")

    def __init__(self, cx, honest_lo=None, honest_hi=None, note=""):
        self.cx = cx
        self.honest_lo = honest_lo
        self.honest_hi = honest_hi
        self.note = note

    def _guard(self, v):
        if self.honest_lo is not None and v < self.honest_lo:
            raise WindowExceeded(
                f"degree {v} is below the honest range ({self.honest_lo}); "
                f"widen the resolution window"
            )
        if self.honest_hi is not None and v > self.honest_hi:
            raise WindowExceeded(
                f"degree {v} is above the honest range ({self.honest_hi})"
            )

    def homology_dim(self, v):
        self._guard(v)
        return self.cx.homology_dim(v)

    def homology_module(self, v):
        self._guard(v)
        return self.cx.homology_module(v)

    def sup_h(self):
        """Top degree with homology; None (certified) if none anywhere."""
        stop = self.cx.lo if self.honest_lo is None else max(self.cx.lo, self.honest_lo)
        for v in range(self.cx.hi, stop - 1, -1):
            if self.cx.homology_dim(v) != 0:
                return v
        if self.honest_lo is not None and self.honest_lo > self.cx.lo:
            raise WindowExceeded(
                f"no homology found down to {stop}, lower degrees unverified"
            )
        return None

    def inf_h(self):
        if self.honest_lo is not None:
            raise WindowExceeded(
                "the bottom of this derived complex is only computed through "
                f"degree {self.honest_lo}"
            )
        stop = self.cx.hi if self.honest_hi is None else min(self.cx.hi, self.honest_hi)
        for v in range(self.cx.lo, stop + 1):
            if self.cx.homology_dim(v) != 0:
                return v
        if self.honest_hi is not None and self.honest_hi < self.cx.hi:
            raise WindowExceeded(f"no homology found up to {stop}")
        return None

    def amplitude(self):
        s = self.sup_h()
        i = self.inf_h()
        if s is None:
            return None
        return s - i


def _as_complex(obj):
    if isinstance(obj, FgModule):
        return complex_from_module(obj)
    if isinstance(obj, FreeComplex):
        return obj.to_complex()
    if isinstance(obj, Complex):
        return obj
    raise TypeError(f"expected a module or complex, got {type(obj).__name__}")


def _free_replacement(obj, top, rank_budget):
    """(FreeComplex, faithful_through, finished) quasi-isomorphic to obj."""
    if isinstance(obj, FreeComplex):
        # already semi-free: bounded below with free terms
        return obj, obj.hi, True
    if isinstance(obj, FgModule):
        res = resolve_module(obj, top, rank_budget)
        return res.free(), res.top, res.finite_pd is not None
    X = _as_complex(obj)
    if X.lo == X.hi:
        M = X.module(X.lo)
        res = resolve_module(M, max(top - X.lo, 0), rank_budget)
        return res.free().shift(X.lo), res.top + X.lo, res.finite_pd is not None
    crx = resolve_complex(X, top, rank_budget)
    return crx.free, crx.top, crx.finished


def _resolution_bottom(Xc):
    """Degree where a free replacement of Xc starts."""
    if Xc.lo == Xc.hi:
        return Xc.lo
    a = Xc.inf_h()
    return Xc.lo if a is None else a


def rhom(X, Y, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """RHom(X, Y) as a DerivedComplex, honest in degrees
    >= sup(Y terms) - (resolution depth) + 1, fully honest if the
    resolution of X closed up."""
    Yc = _as_complex(Y)
    Xc = _as_complex(X)
    top = window + _resolution_bottom(Xc)
    F, through, finished = _free_replacement(X, top, rank_budget)
    H, _ = F.hom_into(Yc)
    lo = None if finished else Yc.hi - through + 1
    return DerivedComplex(H, honest_lo=lo, note="rhom")


def dtensor(X, Y, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """X (x)^L Y as a DerivedComplex, honest in degrees
    <= (resolution depth) + inf(Y terms) - 1, fully honest if the
    resolution closed up."""
    Yc = _as_complex(Y)
    Xc = _as_complex(X)
    top = window + _resolution_bottom(Xc)
    F, through, finished = _free_replacement(X, top, rank_budget)
    T, _ = F.tensor_with(Yc)
    hi = None if finished else through + Yc.lo - 1
    return DerivedComplex(T, honest_hi=hi, note="dtensor")


# -- numerical invariants of complexes -------------------------------------------


def _homology_profile(obj):
    """(sup, inf, complex) for a plain Complex or module; raises ZeroComplex
    when there is no homology at all."""
    X = _as_complex(obj)
    s, i = X.sup_h(), X.inf_h()
    if s is None:
        raise ZeroComplex("the complex is exact; its invariants are undefined")
    return s, i, X


def depth_of(obj):
    """Over an Artinian local ring the depth of a complex with bounded
    homology is the negative of its top homology degree (every nonzero
    module has a nonzero socle)."""
    s, _, _ = _homology_profile(obj)
    return -s


def krull_dim_of(obj):
    """Krull dimension of a complex: modules all have dimension zero, so
    this is the negative of the bottom homology degree."""
    _, i, _ = _homology_profile(obj)
    return -i


def amplitude_of(obj):
    s, i, _ = _homology_profile(obj)
    return s - i


def is_cohen_macaulay(obj):
    """Depth equals dimension exactly when homology sits in one degree."""
    return amplitude_of(obj) == 0


def type_of(obj):
    """Type: the socle dimension of the top homology module, which is the
    Bass number at depth."""
    s, _, X = _homology_profile(obj)
    return X.homology_module(s).socle_dim


def socle_bass_check(N):
    """Two routes to mu^0: the socle and Ext^0(k, -); their agreement is a
    live consistency check, EngineInconsistency on mismatch."""
    mu0 = bass_sequence(N, window=1).dim(0)
    if mu0 != N.socle_dim:
        raise EngineInconsistency(
            f"mu^0 = {mu0} but the socle has dimension {N.socle_dim}"
        )
    return mu0


def min_gens_betti_check(M):
    """Two routes to beta_0: minimal generators and Tor_0(M, k)."""
    b0 = betti_sequence(M, window=1).dim(0)
    if b0 != M.min_gens:
        raise EngineInconsistency(
            f"beta_0 = {b0} but the minimal number of generators is {M.min_gens}"
        )
    return b0
