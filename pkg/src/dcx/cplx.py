"""Bounded complexes of modules, chain maps, and free complexes.

Homological indexing throughout: the differential of a complex X in
degree v maps X_v to X_{v-1}.  A Complex stores term dimensions and
differentials densely but materializes term modules lazily, because the
Hom and tensor complexes built from resolutions can have large terms
whose action tensors are only needed when homology is requested as a
module rather than a number.

Sign conventions, fixed once here and tested on the nose:
  shift          (S^n X)_v = X_{v-n},  d = (-1)^n d^X
  hom complex    Hom(F, Y)_n = prod_i Hom(F_i, Y_{i+n}),
                 (D f)_i = d^Y f_i - (-1)^n f_{i-1} d^F
  tensor         (F ox Y)_n = sum_i F_i ox Y_{n-i},
                 D(xi ox y) = d xi ox y + (-1)^i xi ox d y
  cone(f)_n      = X_{n-1} + Y_n,  D(x, y) = (-d x, f x + d y)
With these choices Hom(F, S^n Y) = S^n Hom(F, Y) holds exactly.
"""

from __future__ import annotations

import numpy as np

from .algebra import RingMat
from .errors import ValidationError
from .exact import Mat, column_space_basis, kernel_basis, rank, solve
from .fgmod import (
    FgModule,
    direct_sum,
    free_module,
    quotient_module,
    submodule,
    zero_module,
)


def _kron_eye(r, M):
    """Block-diagonal of r copies of M."""
    a = np.kron(np.eye(r, dtype=np.int64), M.a)
    if M.field.p is not None:
        a = np.asarray(a, dtype=np.int64) % M.field.p
    return Mat(M.field, a)


class Complex:
    """A bounded complex with lazily built term modules."""

    __slots__ = ("alg", "lo", "hi", "_dims", "_diffs", "_factory", "_mods", "_hcache")

    def __init__(self, alg, lo, hi, dims, diffs, factory=None, validate=False):
        self.alg = alg
        self.lo = lo
        self.hi = hi
        self._dims = dict(dims)
        self._diffs = dict(diffs)
        self._factory = factory
        self._mods = {}
        self._hcache = {}
        if lo > hi:
            raise ValidationError(f"empty complex range [{lo}, {hi}]")
        for v in range(lo, hi + 1):
            if v not in self._dims:
                raise ValidationError(f"missing term dimension in degree {v}")
        if validate:
            self._validate_squares()

    def _validate_squares(self):
        for v in range(self.lo, self.hi + 1):
            d = self.diff(v)
            if d.shape != (self.term_dim(v - 1), self.term_dim(v)):
                raise ValidationError(
                    f"differential in degree {v} has shape {d.shape}, expected "
                    f"({self.term_dim(v - 1)}, {self.term_dim(v)})"
                )
            if not (self.diff(v - 1) @ d).is_zero():
                raise ValidationError(f"differential does not square to zero at degree {v}")

    @classmethod
    def from_modules(cls, alg, lo, mods, diffs, validate=True):
        """Terms listed bottom degree first; diffs[t] maps mods[t+1] -> mods[t]."""
        mods = list(mods)
        hi = lo + len(mods) - 1
        dims = {lo + t: m.dim for t, m in enumerate(mods)}
        dd = {lo + t + 1: d for t, d in enumerate(diffs)}
        store = {lo + t: m for t, m in enumerate(mods)}
        cx = cls(alg, lo, hi, dims, dd, factory=store.get, validate=validate)
        cx._mods.update(store)
        if validate:
            for v in range(lo + 1, hi + 1):
                d = cx.diff(v)
                src, dst = store[v], store[v - 1]
                for i in range(alg.dim):
                    if not (d @ src.action_of_basis(i) == dst.action_of_basis(i) @ d):
                        raise ValidationError(
                            f"differential in degree {v} is not a module homomorphism"
                        )
        return cx

    @classmethod
    def zero(cls, alg):
        return cls(alg, 0, 0, {0: 0}, {})

    # -- access ---------------------------------------------------------------

    def term_dim(self, v):
        return self._dims.get(v, 0)

    def diff(self, v):
        """The differential X_v -> X_{v-1}, zero outside the stored range."""
        d = self._diffs.get(v)
        if d is None:
            return Mat.zeros(self.alg.field, self.term_dim(v - 1), self.term_dim(v))
        return d

    def module(self, v):
        m = self._mods.get(v)
        if m is None:
            if self._factory is not None:
                m = self._factory(v)
            if m is None:
                if self.term_dim(v) != 0:
                    raise ValidationError(f"no module factory for degree {v}")
                m = zero_module(self.alg)
            self._mods[v] = m
        return m

    @property
    def range(self):
        return (self.lo, self.hi)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def is_zero_dims(self):
        return all(self.term_dim(v) == 0 for v in self.degrees())

    # -- homology ---------------------------------------------------------------

    def homology_dim(self, v):
        if v < self.lo or v > self.hi:
            return 0
        return self.term_dim(v) - rank(self.diff(v)) - rank(self.diff(v + 1))

    def homology_dims(self):
        return {v: self.homology_dim(v) for v in self.degrees()}

    def sup_h(self):
        """Largest degree with nonzero homology, None if exact."""
        for v in reversed(self.degrees()):
            if self.homology_dim(v) != 0:
                return v
        return None

    def inf_h(self):
        for v in self.degrees():
            if self.homology_dim(v) != 0:
                return v
        return None

    def amplitude(self):
        s, i = self.sup_h(), self.inf_h()
        if s is None:
            return None
        return s - i

    def is_exact(self):
        return self.sup_h() is None

    def homology_data(self, v):
        """(module, Z, projH, secH): cycles basis Z and the quotient maps from
        cycle coordinates to homology coordinates."""
        got = self._hcache.get(v)
        if got is not None:
            return got
        Z = kernel_basis(self.diff(v))
        T = self.module(v)
        Zmod, _ = submodule(T, Z) if Z.cols else (zero_module(self.alg), Z)
        if Z.cols:
            B = column_space_basis(self.diff(v + 1))[0]
            Bz = solve(Z, B)
            if Bz is None:
                raise ValidationError("boundaries do not lie inside cycles")
            Hmod, projH, secH = quotient_module(Zmod, Bz)
        else:
            Hmod = zero_module(self.alg)
            projH = Mat.zeros(self.alg.field, 0, 0)
            secH = Mat.zeros(self.alg.field, 0, 0)
        got = (Hmod, Z, projH, secH)
        self._hcache[v] = got
        return got

    def homology_module(self, v):
        if v < self.lo or v > self.hi:
            return zero_module(self.alg)
        return self.homology_data(v)[0]

    # -- constructions -----------------------------------------------------------

    def shift(self, n):
        """(S^n X)_v = X_{v-n} with differentials scaled by (-1)^n."""
        dims = {v + n: self.term_dim(v) for v in self.degrees()}
        if n % 2:
            diffs = {v + n: -d for v, d in self._diffs.items()}
        else:
            diffs = {v + n: d for v, d in self._diffs.items()}
        outer = self

        def factory(v):
            return outer.module(v - n)

        return Complex(self.alg, self.lo + n, self.hi + n, dims, diffs, factory=factory)

    def truncate_below_at_cycles(self, a):
        """Keep degrees > a as they are and replace degree a by its cycles.

        Homology in degrees >= a is unchanged, lower degrees become zero.
        Returns (T, include) with include a chain map T -> X.
        """
        if a <= self.lo:
            ident = {
                v: Mat.identity(self.alg.field, self.term_dim(v)) for v in self.degrees()
            }
            return self, ChainMap(self, self, ident, validate=False)
        if a > self.hi:
            raise ValidationError(f"cannot truncate above the top degree {self.hi}")
        Z = kernel_basis(self.diff(a))
        dims = {v: self.term_dim(v) for v in range(a, self.hi + 1)}
        dims[a] = Z.cols
        diffs = {v: self._diffs[v] for v in range(a + 2, self.hi + 1) if v in self._diffs}
        lift = solve(Z, self.diff(a + 1)) if Z.cols else Mat.zeros(
            self.alg.field, 0, self.term_dim(a + 1)
        )
        if lift is None:
            raise ValidationError("boundaries escape the cycle space")
        diffs[a + 1] = lift
        outer = self

        def factory(v):
            if v == a:
                return submodule(outer.module(a), Z)[0] if Z.cols else zero_module(outer.alg)
            return outer.module(v)

        T = Complex(self.alg, a, self.hi, dims, diffs, factory=factory)
        comps = {a: Z}
        for v in range(a + 1, self.hi + 1):
            comps[v] = Mat.identity(self.alg.field, self.term_dim(v))
        return T, ChainMap(T, self, comps, validate=False)

    def truncate_above_soft(self, N):
        """Keep degrees < N, replace degree N by coker of the incoming
        differential.  Homology in degrees <= N is unchanged.
        Returns (T, project) with project a chain map X -> T."""
        if N >= self.hi:
            ident = {
                v: Mat.identity(self.alg.field, self.term_dim(v)) for v in self.degrees()
            }
            return self, ChainMap(self, self, ident, validate=False)
        if N < self.lo:
            raise ValidationError(f"cannot truncate below the bottom degree {self.lo}")
        B = column_space_basis(self.diff(N + 1))[0]
        Q, projQ, secQ = quotient_module(self.module(N), B)
        dims = {v: self.term_dim(v) for v in range(self.lo, N + 1)}
        dims[N] = Q.dim
        diffs = {v: self._diffs[v] for v in range(self.lo + 1, N) if v in self._diffs}
        if N > self.lo:
            diffs[N] = self.diff(N) @ secQ
        outer = self

        def factory(v):
            if v == N:
                return Q
            return outer.module(v)

        T = Complex(self.alg, self.lo, N, dims, diffs, factory=factory)
        comps = {v: Mat.identity(self.alg.field, self.term_dim(v)) for v in range(self.lo, N)}
        comps[N] = projQ
        return T, ChainMap(self, T, comps, validate=False)

    def __repr__(self):
        dims = ", ".join(f"{v}:{self.term_dim(v)}" for v in self.degrees())
        return f"Complex[{dims}]"


def complex_from_module(M, degree=0):
    return Complex.from_modules(M.alg, degree, [M], [], validate=False)


class ChainMap:
    """Degree-zero chain map; missing components are zero."""

    __slots__ = ("src", "dst", "comps")

    def __init__(self, src, dst, comps, validate=True):
        if src.alg.key() != dst.alg.key():
            raise ValidationError("chain map between complexes over different algebras")
        self.src = src
        self.dst = dst
        self.comps = dict(comps)
        for v, f in self.comps.items():
            if f.shape != (dst.term_dim(v), src.term_dim(v)):
                raise ValidationError(
                    f"component {v} has shape {f.shape}, expected "
                    f"({dst.term_dim(v)}, {src.term_dim(v)})"
                )
        if validate:
            self.check_squares()

    def component(self, v):
        f = self.comps.get(v)
        if f is None:
            return Mat.zeros(self.src.alg.field, self.dst.term_dim(v), self.src.term_dim(v))
        return f

    def check_squares(self):
        lo = min(self.src.lo, self.dst.lo)
        hi = max(self.src.hi, self.dst.hi)
        for v in range(lo, hi + 1):
            lhs = self.dst.diff(v) @ self.component(v)
            rhs = self.component(v - 1) @ self.src.diff(v)
            if not lhs == rhs:
                raise ValidationError(f"chain map squares fail at degree {v}")

    def cone(self):
        """Mapping cone; exact iff the map is a quasi-isomorphism."""
        X, Y = self.src, self.dst
        lo = min(X.lo + 1, Y.lo)
        hi = max(X.hi + 1, Y.hi)
        dims = {v: X.term_dim(v - 1) + Y.term_dim(v) for v in range(lo, hi + 1)}
        diffs = {}
        for v in range(lo + 1, hi + 1):
            dx = X.diff(v - 1)
            blocks = Mat.block(
                X.alg.field,
                [[-dx, None], [self.component(v - 1), Y.diff(v)]],
                row_dims=[X.term_dim(v - 2), Y.term_dim(v - 1)],
                col_dims=[X.term_dim(v - 1), Y.term_dim(v)],
            )
            diffs[v] = blocks

        def factory(v):
            return direct_sum([X.module(v - 1), Y.module(v)])

        return Complex(X.alg, lo, hi, dims, diffs, factory=factory)

    def is_quasi_iso(self):
        return self.cone().is_exact()

    def induced_on_homology(self, v):
        """Matrix of H_v(f) in the chosen homology coordinates."""
        HX, ZX, _, secX = self.src.homology_data(v)
        HY, ZY, projY, _ = self.dst.homology_data(v)
        if HX.dim == 0 or HY.dim == 0:
            return Mat.zeros(self.src.alg.field, HY.dim, HX.dim)
        w = self.component(v) @ (ZX @ secX)
        c = solve(ZY, w)
        if c is None:
            raise ValidationError("image of a cycle is not a cycle")
        return projY @ c

    def compose(self, other):
        """self o other (other first)."""
        if other.dst is not self.src:
            raise ValidationError("chain map composition mismatch")
        lo = min(other.src.lo, self.dst.lo)
        hi = max(other.src.hi, self.dst.hi)
        comps = {}
        for v in range(lo, hi + 1):
            m = self.component(v) @ other.component(v)
            if m.rows and m.cols:
                comps[v] = m
        return ChainMap(other.src, self.dst, comps, validate=False)


class Layout:
    """Slot offsets of a Hom or tensor complex: per total degree an ordered
    list of (resolution degree i, rank, module dimension, offset)."""

    __slots__ = ("slots",)

    def __init__(self):
        self.slots = {}

    def add(self, n, i, rank_i, ydim, offset):
        self.slots.setdefault(n, []).append((i, rank_i, ydim, offset))

    def find(self, n, i):
        for (ii, r, yd, off) in self.slots.get(n, ()):
            if ii == i:
                return (r, yd, off)
        return None


class FreeComplex:
    """Complex of free modules with ring-entry differentials."""

    __slots__ = ("alg", "lo", "hi", "ranks", "rdiffs")

    def __init__(self, alg, lo, hi, ranks, rdiffs, validate=True):
        self.alg = alg
        self.lo = lo
        self.hi = hi
        self.ranks = dict(ranks)
        self.rdiffs = dict(rdiffs)
        if lo > hi:
            raise ValidationError(f"empty complex range [{lo}, {hi}]")
        for v in range(lo, hi + 1):
            if v not in self.ranks:
                raise ValidationError(f"missing rank in degree {v}")
        if validate:
            for v in range(lo + 1, hi + 1):
                d = self.rdiff(v)
                if (d.rows, d.cols) != (self.rank(v - 1), self.rank(v)):
                    raise ValidationError(
                        f"ring differential in degree {v} has shape "
                        f"({d.rows}, {d.cols}), expected "
                        f"({self.rank(v - 1)}, {self.rank(v)})"
                    )
                if not self.rdiff(v - 1).compose(d).is_zero():
                    raise ValidationError(
                        f"ring differential does not square to zero at degree {v}"
                    )

    def rank(self, v):
        return self.ranks.get(v, 0)

    def rdiff(self, v):
        d = self.rdiffs.get(v)
        if d is None:
            return RingMat.zeros(self.alg, self.rank(v - 1), self.rank(v))
        return d

    def total_rank(self):
        return sum(self.ranks.values())

    def betti_ranks(self):
        return {v: self.rank(v) for v in range(self.lo, self.hi + 1)}

    def is_minimal(self):
        return all(self.rdiff(v).is_minimal() for v in range(self.lo + 1, self.hi + 1))

    def shift(self, n):
        ranks = {v + n: r for v, r in self.ranks.items()}
        diffs = {}
        for v, d in self.rdiffs.items():
            diffs[v + n] = (-d) if n % 2 else d
        return FreeComplex(self.alg, self.lo + n, self.hi + n, ranks, diffs, validate=False)

    def to_complex(self):
        reg = self.alg.regular_action()
        n = self.alg.dim
        dims = {v: self.rank(v) * n for v in range(self.lo, self.hi + 1)}
        diffs = {
            v: self.rdiffs[v].k_matrix(reg)
            for v in range(self.lo + 1, self.hi + 1)
            if v in self.rdiffs
        }
        outer = self

        def factory(v):
            return free_module(outer.alg, outer.rank(v))

        return Complex(self.alg, self.lo, self.hi, dims, diffs, factory=factory)

    # -- hom and tensor against a complex of modules --------------------------------

    def hom_into(self, Y):
        """Hom(F, Y) as a Complex, with the slot Layout.

        Degree n, slot i holds Hom(F_i, Y_{i+n}) as generator-image tuples.
        """
        alg = self.alg
        lo = Y.lo - self.hi
        hi = Y.hi - self.lo
        layout = Layout()
        dims = {}
        for m in range(lo, hi + 1):
            off = 0
            for i in range(self.lo, self.hi + 1):
                r = self.rank(i)
                yd = Y.term_dim(i + m)
                layout.add(m, i, r, yd, off)
                off += r * yd
            dims[m] = off
        diffs = {}
        for m in range(lo + 1, hi + 1):
            D = Mat.zeros(alg.field, dims[m - 1], dims[m])
            sign = alg.field.elem(-1 if m % 2 == 0 else 1)  # -(-1)^m
            for (i, r, yd, off) in layout.slots[m]:
                if r == 0 or yd == 0:
                    continue
                # postcompose with the differential of Y: slot i -> slot i
                tgt = layout.find(m - 1, i)
                if tgt is not None and tgt[1] != 0:
                    dY = Y.diff(i + m)
                    blk = _kron_eye(r, dY)
                    D.a[tgt[2] : tgt[2] + r * tgt[1], off : off + r * yd] = blk.a
                # precompose with the differential of F: slot i -> slot i + 1
                tgt = layout.find(m - 1, i + 1)
                if tgt is not None and tgt[0] != 0 and tgt[1] != 0:
                    dF = self.rdiff(i + 1)
                    blk = dF.transpose().k_matrix(Y.module(i + m).rho).scale(sign)
                    D.a[tgt[2] : tgt[2] + tgt[0] * tgt[1], off : off + r * yd] = blk.a
            diffs[m] = D

        def factory(m):
            parts = []
            for (i, r, yd, _) in layout.slots.get(m, ()):
                if r and yd:
                    parts.append(
                        FgModule(
                            alg,
                            np.stack(
                                [
                                    _kron_eye(r, Mat(alg.field, Y.module(i + m).rho[t])).a
                                    for t in range(alg.dim)
                                ]
                            ),
                            validate=False,
                        )
                    )
            return direct_sum(parts) if parts else zero_module(alg)

        return Complex(alg, lo, hi, dims, diffs, factory=factory), layout

    def tensor_with(self, Y):
        """F tensor Y as a Complex, with the slot Layout.

        Degree n, slot i holds F_i ox Y_{n-i} as generator tuples.
        """
        alg = self.alg
        lo = self.lo + Y.lo
        hi = self.hi + Y.hi
        layout = Layout()
        dims = {}
        for m in range(lo, hi + 1):
            off = 0
            for i in range(self.lo, self.hi + 1):
                r = self.rank(i)
                yd = Y.term_dim(m - i)
                layout.add(m, i, r, yd, off)
                off += r * yd
            dims[m] = off
        diffs = {}
        for m in range(lo + 1, hi + 1):
            D = Mat.zeros(alg.field, dims[m - 1], dims[m])
            for (i, r, yd, off) in layout.slots[m]:
                if r == 0 or yd == 0:
                    continue
                # d^F ox 1: slot i -> slot i - 1, same Y degree
                tgt = layout.find(m - 1, i - 1)
                if tgt is not None and tgt[0] != 0 and tgt[1] != 0:
                    dF = self.rdiff(i)
                    blk = dF.k_matrix(Y.module(m - i).rho)
                    D.a[tgt[2] : tgt[2] + tgt[0] * tgt[1], off : off + r * yd] = blk.a
                # (-1)^i 1 ox d^Y: slot i -> slot i, Y degree drops
                tgt = layout.find(m - 1, i)
                if tgt is not None and tgt[1] != 0:
                    dY = Y.diff(m - i)
                    sign = alg.field.elem(-1 if i % 2 else 1)
                    blk = _kron_eye(r, dY).scale(sign)
                    D.a[tgt[2] : tgt[2] + r * tgt[1], off : off + r * yd] = blk.a
            diffs[m] = D

        def factory(m):
            parts = []
            for (i, r, yd, _) in layout.slots.get(m, ()):
                if r and yd:
                    parts.append(
                        FgModule(
                            alg,
                            np.stack(
                                [
                                    _kron_eye(r, Mat(alg.field, Y.module(m - i).rho[t])).a
                                    for t in range(alg.dim)
                                ]
                            ),
                            validate=False,
                        )
                    )
            return direct_sum(parts) if parts else zero_module(alg)

        return Complex(alg, lo, hi, dims, diffs, factory=factory), layout

    # -- serialization ----------------------------------------------------------

    def to_data(self):
        return {
            "lo": self.lo,
            "ranks": [self.rank(v) for v in range(self.lo, self.hi + 1)],
            "diffs": [
                self.rdiff(v).to_entry_strings() for v in range(self.lo + 1, self.hi + 1)
            ],
        }

    @staticmethod
    def from_data(alg, data):
        try:
            lo = int(data["lo"])
            ranks = [int(r) for r in data["ranks"]]
            raw = data.get("diffs", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"complex data malformed: {exc}") from exc
        hi = lo + len(ranks) - 1
        rankmap = {lo + t: r for t, r in enumerate(ranks)}
        diffs = {}
        for t, entries in enumerate(raw):
            v = lo + t + 1
            if entries is None:
                continue
            d = RingMat.from_entries(alg, entries) if entries else RingMat.zeros(
                alg, rankmap[v - 1], rankmap[v]
            )
            diffs[v] = d
        return FreeComplex(alg, lo, hi, rankmap, diffs, validate=True)

    def __repr__(self):
        rk = ", ".join(f"{v}:{self.rank(v)}" for v in range(self.lo, self.hi + 1))
        return f"FreeComplex[{rk}]"
