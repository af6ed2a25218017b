"""Finite-dimensional commutative local k-algebras given by structure constants.

An Algebra is a k-vector space with a bilinear product described by a
dense tensor C, where e_i * e_j = sum_t C[i,j,t] e_t.  Construction
validates everything: a unit must exist, the product must be commutative
and associative, and the algebra must be local with residue field k
itself (every basis element must act with a single eigenvalue inside k).
Validation also extracts the data every later layer consumes: the
residue functional, a basis of the maximal ideal, the socle, the
nilpotency index, and the Hilbert function of the associated graded ring.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction

import numpy as np

from .errors import (
    EngineInconsistency,
    NotArtinian,
    NotArtinianLocal,
    NotAssociative,
    NotCommutative,
    NotLocal,
    NotModule,
    ParseError,
    ValidationError,
)
from .exact import Field, Mat, column_space_basis, kernel_basis, rank, solve

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _coerce_tensor(field, table):
    """Normalize a nested-list or ndarray multiplication table into the
    backing dtype of the field (int64 residues or Fraction objects)."""
    arr = np.asarray(table, dtype=object)
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[0] != arr.shape[2]:
        raise ValidationError(
            f"structure constants must form an (n, n, n) tensor, got shape {arr.shape}"
        )
    n = arr.shape[0]
    if field.p is None:
        out = np.empty((n, n, n), dtype=object)
        for idx in np.ndindex(n, n, n):
            out[idx] = field.elem(arr[idx])
        return out
    out = np.empty((n, n, n), dtype=np.int64)
    for idx in np.ndindex(n, n, n):
        out[idx] = field.elem(arr[idx])
    return out


class LocalData:
    """Validated local structure of an Algebra."""

    __slots__ = (
        "residue_row",
        "max_ideal",
        "socle",
        "nilpotency_index",
        "embdim",
        "hilbert",
    )

    def __init__(self, residue_row, max_ideal, socle, nilpotency_index, embdim, hilbert):
        self.residue_row = residue_row
        self.max_ideal = max_ideal
        self.socle = socle
        self.nilpotency_index = nilpotency_index
        self.embdim = embdim
        self.hilbert = hilbert


class Algebra:
    """A commutative Artinian local k-algebra with residue field k."""

    __slots__ = (
        "field",
        "dim",
        "names",
        "C",
        "unit",
        "local",
        "_mult_cache",
        "_ident_vecs",
        "_digest",
        "_cache",
    )

    def __init__(self, field, table, names=None, idents=None):
        if not isinstance(field, Field):
            raise ValidationError("field must be a Field instance")
        self.field = field
        self.C = _coerce_tensor(field, table)
        n = self.C.shape[0]
        if n == 0:
            raise ValidationError("the zero ring is not a local algebra")
        self.dim = n
        if names is None:
            names = [f"e{i}" for i in range(n)]
        names = [str(x) for x in names]
        if len(names) != n:
            raise ValidationError(f"expected {n} basis names, got {len(names)}")
        if len(set(names)) != n:
            raise ValidationError("basis names must be distinct")
        self.names = names
        self._mult_cache = {}
        self._digest = None
        self._cache = {}
        self._check_commutative()
        self.unit = self._find_unit()
        self._check_associative()
        self.local = self._check_local()
        if idents is None:
            idents = {
                nm: self.basis_vec(i) for i, nm in enumerate(names) if _IDENT_RE.match(nm)
            }
        self._ident_vecs = dict(idents)

    # -- element access -------------------------------------------------

    def basis_vec(self, i):
        v = Mat.zeros(self.field, self.dim, 1)
        v.a[i, 0] = self.field.one()
        return v

    def zero_vec(self):
        return Mat.zeros(self.field, self.dim, 1)

    def coord_vec(self, entries):
        if len(entries) != self.dim:
            raise ValidationError(
                f"element needs {self.dim} coordinates, got {len(entries)}"
            )
        return Mat.column(self.field, entries)

    def element(self, spec):
        """Coerce a string expression, coordinate list, Mat, or scalar."""
        if isinstance(spec, Mat):
            if spec.shape != (self.dim, 1):
                raise ValidationError(f"element column must be {self.dim} x 1")
            return spec
        if isinstance(spec, str):
            return _parse_element(self, spec)
        if isinstance(spec, (list, tuple)):
            return self.coord_vec(spec)
        if isinstance(spec, (int, Fraction)):
            return self.unit.scale(spec)
        raise ValidationError(f"cannot interpret {spec!r} as a ring element")

    # -- multiplication ---------------------------------------------------

    def basis_mult_matrix(self, i):
        m = self._mult_cache.get(i)
        if m is None:
            m = Mat(self.field, self.C[i].T.copy())
            self._mult_cache[i] = m
        return m

    def mult_matrix(self, vec):
        """Matrix of multiplication by the element with coordinates vec."""
        u = vec.a[:, 0]
        D = np.tensordot(u, self.C, axes=(0, 0)).T
        if self.field.p is not None:
            D = np.asarray(D, dtype=np.int64) % self.field.p
        return Mat(self.field, D)

    def multiply(self, u, v):
        return self.mult_matrix(u) @ v

    def power(self, vec, e):
        if e < 0:
            raise ValidationError("negative powers are not defined")
        out = self.unit
        for _ in range(e):
            out = self.multiply(out, vec)
        return out

    def residue_of(self, vec):
        """Image of the element in the residue field."""
        return (self.local.residue_row @ vec).entry(0, 0)

    def is_unit_element(self, vec):
        return self.residue_of(vec) != 0

    def inverse(self, vec):
        if not self.is_unit_element(vec):
            raise ValidationError("element lies in the maximal ideal, not invertible")
        x = solve(self.mult_matrix(vec), self.unit)
        if x is None:
            raise EngineInconsistency("unit element without inverse")
        return x

    def regular_action(self):
        """Action tensor of the rank-one free module: rho[i] = mult by e_i."""
        n = self.dim
        rho = np.empty((n, n, n), dtype=self.C.dtype)
        for i in range(n):
            rho[i] = self.C[i].T
        return rho

    def dual_regular_action(self):
        """Action on the k-linear dual of the ring: transposed multiplications."""
        return self.C.copy()

    # -- derived scalars ---------------------------------------------------

    @property
    def socle_dim(self):
        return self.local.socle.cols

    @property
    def is_field(self):
        return self.local.max_ideal.cols == 0

    @property
    def embdim(self):
        return self.local.embdim

    @property
    def nilpotency_index(self):
        return self.local.nilpotency_index

    @property
    def hilbert(self):
        return self.local.hilbert

    def key(self):
        if self._digest is None:
            h = hashlib.sha256()
            h.update(repr(self.field).encode())
            h.update(str(self.dim).encode())
            if self.field.p is not None:
                h.update(np.ascontiguousarray(self.C).tobytes())
            else:
                h.update("|".join(str(x) for x in self.C.flat).encode())
            h.update("|".join(self.names).encode())
            self._digest = h.hexdigest()
        return self._digest

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r}, names={self.names})"

    # -- serialization ------------------------------------------------------

    def to_data(self):
        if self.field.p is None:
            table = [
                [[str(self.C[i, j, t]) for t in range(self.dim)] for j in range(self.dim)]
                for i in range(self.dim)
            ]
            fld = "QQ"
        else:
            table = [
                [[int(self.C[i, j, t]) for t in range(self.dim)] for j in range(self.dim)]
                for i in range(self.dim)
            ]
            fld = self.field.p
        return {"field": fld, "names": list(self.names), "table": table}

    @staticmethod
    def from_data(data):
        try:
            fld = data["field"]
            names = data["names"]
            table = data["table"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"ring data missing key: {exc}") from exc
        field = Field(None) if fld in ("QQ", "Q") else Field(int(fld))
        return Algebra(field, table, names=names)

    # -- validation ---------------------------------------------------------

    def _check_commutative(self):
        Ct = self.C.transpose(1, 0, 2)
        if self.field.p is not None:
            ok = np.array_equal(self.C, Ct)
        else:
            ok = bool((self.C == Ct).all())
        if not ok:
            bad = np.argwhere(self.C != Ct)
            i, j, _ = (int(x) for x in bad[0])
            raise NotCommutative(
                f"products {self.names[i]}*{self.names[j]} and "
                f"{self.names[j]}*{self.names[i]} differ"
            )

    def _find_unit(self):
        n = self.dim
        E = Mat(self.field, self.C.transpose(1, 2, 0).reshape(n * n, n).copy())
        delta = Mat.zeros(self.field, n * n, 1)
        one = self.field.one()
        for j in range(n):
            delta.a[j * n + j, 0] = one
        u = solve(E, delta)
        if u is None:
            raise ValidationError("structure constants admit no multiplicative unit")
        return u

    def _check_associative(self):
        n = self.dim
        C = self.C
        p = self.field.p
        C2 = C.reshape(n * n, n)
        E = C.reshape(n, n * n)
        for i in range(n):
            left = np.dot(C2, C[i]).reshape(n, n, n)
            right = np.dot(C[i], E).reshape(n, n, n)
            if p is not None:
                left = left % p
                right = right % p
                ok = np.array_equal(right, left)
            else:
                ok = bool((left == right).all())
            if not ok:
                bad = np.argwhere(left != right)
                j, k, _ = (int(x) for x in bad[0])
                raise NotAssociative(
                    f"({self.names[i]}*{self.names[j]})*{self.names[k]} != "
                    f"{self.names[i]}*({self.names[j]}*{self.names[k]})"
                )

    def _is_nilpotent(self, M):
        n = M.rows
        N = M
        steps = max(1, n.bit_length())
        for _ in range(steps + 1):
            if N.is_zero():
                return True
            N = N @ N
        return N.is_zero()

    def _eigenvalue_of(self, i):
        """The single eigenvalue of mult-by-e_i inside k, or None."""
        n = self.dim
        p = self.field.p
        Mi = self.basis_mult_matrix(i)
        I = Mat.identity(self.field, n)
        if p is None or n % p != 0:
            tr = sum(Mi.entry(t, t) for t in range(n))
            if p is None:
                lam = Fraction(tr, n)
            else:
                lam = tr * pow(n % p, p - 2, p) % p
            if self._is_nilpotent(Mi - I.scale(lam)):
                return lam
            return None
        found = []
        for c in range(p):
            if rank(Mi - I.scale(c)) < n:
                found.append(c)
                if len(found) > 1:
                    return None
        if len(found) == 1 and self._is_nilpotent(Mi - I.scale(found[0])):
            return found[0]
        return None

    def _check_local(self):
        n = self.dim
        p = self.field.p
        lam = []
        for i in range(n):
            li = self._eigenvalue_of(i)
            if li is None:
                raise NotLocal(
                    f"basis element {self.names[i]} does not act with a single "
                    f"eigenvalue in the coefficient field"
                )
            lam.append(li)
        lamv = np.array(lam, dtype=object if p is None else np.int64)
        # residue functional must be multiplicative and send the unit to 1
        T = np.tensordot(self.C, lamv, axes=(2, 0))
        outer = np.outer(lamv, lamv)
        if p is not None:
            T = np.asarray(T, dtype=np.int64) % p
            outer = outer % p
            ok = np.array_equal(T, outer)
        else:
            ok = bool((T == outer).all())
        if not ok:
            raise NotLocal("candidate residue functional is not multiplicative")
        residue_row = Mat(self.field, lamv.reshape(1, n).copy())
        if (residue_row @ self.unit).entry(0, 0) != self.field.one():
            raise NotLocal("candidate residue functional does not send 1 to 1")
        # maximal ideal: span of e_i - lam_i * 1
        u = self.unit.a[:, 0]
        spanm = np.eye(n, dtype=np.int64) - np.outer(u, lamv)
        if p is not None:
            spanm = np.asarray(spanm, dtype=np.int64) % p
        else:
            spanm = np.asarray(
                [[Fraction(x) for x in row] for row in spanm.tolist()], dtype=object
            )
        max_ideal, _ = column_space_basis(Mat(self.field, spanm))
        if max_ideal.cols != n - 1:
            raise EngineInconsistency(
                f"maximal ideal has codimension {n - max_ideal.cols}, expected 1"
            )
        # power chain m, m^2, ... gives nilpotency index and Hilbert function
        mults = [self.mult_matrix(max_ideal.col(b)) for b in range(max_ideal.cols)]
        chain_dims = [n, max_ideal.cols]
        cur = max_ideal
        while cur.cols > 0:
            prods = Mat.hcat([mm @ cur for mm in mults]) if mults else None
            nxt, _ = column_space_basis(prods)
            if nxt.cols >= cur.cols:
                raise NotArtinianLocal(
                    "maximal ideal power chain fails to shrink; ideal not nilpotent"
                )
            chain_dims.append(nxt.cols)
            cur = nxt
        if max_ideal.cols == 0:
            nilpotency_index = 1
            socle = Mat.identity(self.field, n)
            hilbert = (1,)
        else:
            nilpotency_index = len(chain_dims) - 1
            stacked = Mat.vcat([mm for mm in mults])
            socle = kernel_basis(stacked)
            hilbert = tuple(
                chain_dims[t] - chain_dims[t + 1] for t in range(len(chain_dims) - 1)
            )
        embdim = hilbert[1] if len(hilbert) > 1 else 0
        return LocalData(residue_row, max_ideal, socle, nilpotency_index, embdim, hilbert)


# -- constructors ------------------------------------------------------------


def _parse_monomial(s, variables):
    """A monomial string like 'x^2*y' into an exponent tuple."""
    exps = [0] * len(variables)
    index = {v: i for i, v in enumerate(variables)}
    s = s.strip()
    if s == "1":
        return tuple(exps)
    for part in s.split("*"):
        part = part.strip()
        if "^" in part:
            name, _, deg = part.partition("^")
            name = name.strip()
            try:
                d = int(deg)
            except ValueError as exc:
                raise ParseError(f"bad exponent in monomial factor {part!r}") from exc
        else:
            name, d = part, 1
        if name not in index:
            raise ParseError(f"unknown variable {name!r} in monomial {s!r}")
        if d < 1:
            raise ParseError(f"monomial exponent must be positive in {part!r}")
        exps[index[name]] += d
    return tuple(exps)


def _monomial_name(exps, variables):
    if not any(exps):
        return "1"
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def monomial_quotient(field, variables, relations):
    """k[x_1..x_m] / (monomial relations), with degree-lex standard monomial basis.

    Raises NotArtinian unless the relations contain a pure power of every
    variable (otherwise the quotient has an infinite monomial basis).
    """
    variables = [str(v) for v in variables]
    for v in variables:
        if not _IDENT_RE.match(v):
            raise ValidationError(f"variable name {v!r} is not an identifier")
    if len(set(variables)) != len(variables):
        raise ValidationError("variable names must be distinct")
    gens = []
    for r in relations:
        e = _parse_monomial(r, variables) if isinstance(r, str) else tuple(int(x) for x in r)
        if len(e) != len(variables) or any(x < 0 for x in e):
            raise ValidationError(f"bad exponent vector {e}")
        if not any(e):
            raise ValidationError("the unit monomial cannot be a relation")
        gens.append(e)
    bounds = []
    for i, v in enumerate(variables):
        pure = [g[i] for g in gens if g[i] > 0 and all(g[j] == 0 for j in range(len(variables)) if j != i)]
        if not pure:
            raise NotArtinian(
                f"no pure power of {v} among the relations; quotient is infinite dimensional"
            )
        bounds.append(min(pure))

    def divisible(e, g):
        return all(ge <= ee for ge, ee in zip(g, e))

    standard = []
    for exps in np.ndindex(*[b for b in bounds]) if variables else [()]:
        e = tuple(int(x) for x in exps)
        if not any(divisible(e, g) for g in gens):
            standard.append(e)
    standard.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    index = {e: i for i, e in enumerate(standard)}
    n = len(standard)
    table = np.zeros((n, n, n), dtype=np.int64)
    for i, ei in enumerate(standard):
        for j, ej in enumerate(standard):
            s = tuple(a + b for a, b in zip(ei, ej))
            if not any(divisible(s, g) for g in gens):
                table[i, j, index[s]] = 1
    names = [_monomial_name(e, variables) for e in standard]
    alg = Algebra(field, table, names=names, idents={})
    idents = {}
    for i, v in enumerate(variables):
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        vec = alg.basis_vec(index[e]) if e in index else alg.zero_vec()
        idents[v] = vec
    alg._ident_vecs = idents
    return alg


def tensor_algebra(A, B):
    """A tensor_k B with basis pairs ordered A-major.

    Generators from either side are registered for the element parser;
    on a name clash the left copy gets suffix 'l' and the right 'r'.
    """
    if A.field != B.field:
        raise ValidationError("tensor factors must share the coefficient field")
    n, m = A.dim, B.dim
    CT = np.multiply.outer(A.C, B.C)
    # axes (i,k,s, j,l,t) -> group as ((i,j),(k,l),(s,t))
    CT = CT.transpose(0, 3, 1, 4, 2, 5).reshape(n * m, n * m, n * m)
    if A.field.p is not None:
        CT = np.asarray(CT, dtype=np.int64) % A.field.p
    names = []
    for i in range(n):
        for j in range(m):
            an, bn = A.names[i], B.names[j]
            if an == "1":
                names.append(bn)
            elif bn == "1":
                names.append(an)
            else:
                names.append(f"{an}*{bn}")
    if len(set(names)) != len(names):
        names = [f"{A.names[i]}|{B.names[j]}" for i in range(n) for j in range(m)]
    alg = Algebra(A.field, CT, names=names, idents={})

    def embed(vec_a, vec_b):
        w = np.outer(vec_a.a[:, 0], vec_b.a[:, 0]).reshape(n * m, 1)
        if A.field.p is not None:
            w = np.asarray(w, dtype=np.int64) % A.field.p
        return Mat(A.field, w.copy())

    idents = {}
    for nm, vec in A._ident_vecs.items():
        key = nm + "l" if nm in B._ident_vecs else nm
        idents[key] = embed(vec, B.unit)
    for nm, vec in B._ident_vecs.items():
        key = nm + "r" if nm in A._ident_vecs else nm
        idents[key] = embed(A.unit, vec)
    alg._ident_vecs = idents
    return alg


def check_action(A, rho):
    """Validate a k-basis action tensor rho[i] = action of e_i; NotModule if bad."""
    rho = np.asarray(rho)
    if rho.ndim != 3 or rho.shape[0] != A.dim or rho.shape[1] != rho.shape[2]:
        raise NotModule(
            f"action tensor must have shape ({A.dim}, d, d), got {rho.shape}"
        )
    d = rho.shape[1]
    p = A.field.p
    if p is not None:
        rho = np.asarray(rho, dtype=np.int64) % p
    unit_action = np.tensordot(A.unit.a[:, 0], rho, axes=(0, 0))
    eye = np.eye(d, dtype=np.int64)
    if p is not None:
        unit_action = np.asarray(unit_action, dtype=np.int64) % p
        ok = np.array_equal(unit_action, eye)
    else:
        ok = bool((unit_action == eye).all())
    if not ok:
        raise NotModule("the unit does not act as the identity")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = np.dot(rho[i], rho[j])
            rhs = np.tensordot(A.C[i, j], rho, axes=(0, 0))
            if p is not None:
                lhs = lhs % p
                rhs = np.asarray(rhs, dtype=np.int64) % p
                ok = np.array_equal(lhs, rhs)
            else:
                ok = bool((lhs == rhs).all())
            if not ok:
                raise NotModule(
                    f"action violates rho({A.names[i]}) rho({A.names[j]}) = "
                    f"rho({A.names[i]} * {A.names[j]})"
                )
    return rho


def trivial_extension(A, rho, ext_names=None):
    """Square-zero extension of A by the module with action tensor rho."""
    rho = check_action(A, rho)
    n = A.dim
    d = rho.shape[1]
    N = n + d
    if A.field.p is None:
        table = np.full((N, N, N), Fraction(0), dtype=object)
    else:
        table = np.zeros((N, N, N), dtype=np.int64)
    table[:n, :n, :n] = A.C
    for i in range(n):
        # e_i * m_v = sum_w rho[i][w, v] m_w, and symmetrically
        table[i, n:, n:] = rho[i].T
        table[n:, i, n:] = rho[i].T
    if ext_names is None:
        ext_names = [f"z{u}" for u in range(d)]
    ext_names = [str(x) for x in ext_names]
    taken = set(A.names)
    fixed = []
    for nm in ext_names:
        while nm in taken:
            nm = nm + "_"
        taken.add(nm)
        fixed.append(nm)
    alg = Algebra(A.field, table, names=list(A.names) + fixed, idents={})
    idents = {}
    for nm, vec in A._ident_vecs.items():
        w = Mat.zeros(A.field, N, 1)
        w.a[:n, :] = vec.a
        idents[nm] = w
    for u, nm in enumerate(fixed):
        if _IDENT_RE.match(nm):
            idents[nm] = alg.basis_vec(n + u)
    alg._ident_vecs = idents
    return alg


# -- element expression parser -----------------------------------------------


def _tokenize(s):
    tokens = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(("num", int(s[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            tokens.append(("name", s[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None, len(s)))
    return tokens


def _parse_element(alg, s):
    toks = _tokenize(s)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def take(kind=None):
        t = toks[pos[0]]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind!r} at position {t[2]} in {s!r}")
        pos[0] += 1
        return t

    def atom():
        t = peek()
        if t[0] == "num":
            take()
            val = t[1]
            if peek()[0] == "/":
                take()
                den = take("num")[1]
                if den == 0:
                    raise ParseError("zero denominator")
                scalar = Fraction(val, den)
            else:
                scalar = val
            return alg.unit.scale(alg.field.elem(scalar))
        if t[0] == "name":
            take()
            vec = alg._ident_vecs.get(t[1])
            if vec is None:
                known = ", ".join(sorted(alg._ident_vecs)) or "(none)"
                raise ParseError(f"unknown name {t[1]!r}; known names: {known}")
            return vec
        if t[0] == "(":
            take()
            v = expr()
            take(")")
            return v
        raise ParseError(f"unexpected token at position {t[2]} in {s!r}")

    def factor():
        if peek()[0] == "-":
            take()
            return -factor()
        v = atom()
        while peek()[0] == "^":
            take()
            e = take("num")[1]
            v = alg.power(v, e)
        return v

    def term():
        v = factor()
        while peek()[0] == "*":
            take()
            v = alg.multiply(v, factor())
        return v

    def expr():
        v = term()
        while peek()[0] in ("+", "-"):
            op = take()[0]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    v = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input at position {peek()[2]} in {s!r}")
    return v


# -- matrices with ring entries ------------------------------------------------


class RingMat:
    """Matrix over an Algebra, stored as an (rows, cols, dim) coefficient tensor.

    Used for differentials of complexes of free modules, where keeping
    ring entries (rather than expanded k-matrices) makes minimality
    checks and base change cheap.
    """

    __slots__ = ("alg", "arr")

    def __init__(self, alg, arr):
        self.alg = alg
        self.arr = arr

    @classmethod
    def zeros(cls, alg, r, c):
        if alg.field.p is None:
            arr = np.full((r, c, alg.dim), Fraction(0), dtype=object)
        else:
            arr = np.zeros((r, c, alg.dim), dtype=np.int64)
        return cls(alg, arr)

    @classmethod
    def identity(cls, alg, r):
        m = cls.zeros(alg, r, r)
        for i in range(r):
            m.arr[i, i, :] = alg.unit.a[:, 0]
        return m

    @classmethod
    def from_entries(cls, alg, entries):
        r = len(entries)
        c = len(entries[0]) if r else 0
        m = cls.zeros(alg, r, c)
        for i, row in enumerate(entries):
            if len(row) != c:
                raise ValidationError("ragged ring matrix rows")
            for j, x in enumerate(row):
                m.arr[i, j, :] = alg.element(x).a[:, 0]
        return m

    @property
    def rows(self):
        return self.arr.shape[0]

    @property
    def cols(self):
        return self.arr.shape[1]

    def entry(self, i, j):
        return Mat(self.alg.field, self.arr[i, j].reshape(-1, 1).copy())

    def compose(self, other):
        """Ring matrix product self @ other."""
        if self.alg is not other.alg and self.alg.key() != other.alg.key():
            raise ValidationError("ring matrix product over different algebras")
        if self.cols != other.rows:
            raise ValidationError(
                f"inner dimension mismatch {self.arr.shape[:2]} vs {other.arr.shape[:2]}"
            )
        # P[i,k,s,u] = sum_j self[i,j,s] other[j,k,u]
        P = np.tensordot(self.arr, other.arr, axes=(1, 0)).transpose(0, 2, 1, 3)
        out = np.tensordot(P, self.alg.C, axes=([2, 3], [0, 1]))
        if self.alg.field.p is not None:
            out = np.asarray(out, dtype=np.int64) % self.alg.field.p
        return RingMat(self.alg, out)

    def k_matrix(self, rho):
        """Expand to a k-linear matrix acting on copies of the module with
        action tensor rho (shape (dim, d, d)); result is (rows*d) x (cols*d)."""
        d = rho.shape[1]
        K = np.tensordot(self.arr, rho, axes=(2, 0))
        K = K.transpose(0, 2, 1, 3).reshape(self.rows * d, self.cols * d)
        if self.alg.field.p is not None:
            K = np.asarray(K, dtype=np.int64) % self.alg.field.p
        return Mat(self.alg.field, K)

    def residues(self):
        """k-matrix of residue-field images of the entries."""
        lam = self.alg.local.residue_row.a[0, :]
        R = np.tensordot(self.arr, lam, axes=(2, 0))
        if self.alg.field.p is not None:
            R = np.asarray(R, dtype=np.int64) % self.alg.field.p
        return Mat(self.alg.field, R)

    def is_minimal(self):
        """All entries in the maximal ideal."""
        return self.residues().is_zero()

    def transpose(self):
        return RingMat(self.alg, self.arr.transpose(1, 0, 2).copy())

    def scale_ring(self, vec):
        """Multiply every entry by the ring element vec."""
        M = self.alg.mult_matrix(vec)
        out = np.tensordot(self.arr, M.a, axes=(2, 1))
        if self.alg.field.p is not None:
            out = np.asarray(out, dtype=np.int64) % self.alg.field.p
        return RingMat(self.alg, out)

    def __add__(self, other):
        out = self.arr + other.arr
        if self.alg.field.p is not None:
            out = out % self.alg.field.p
        return RingMat(self.alg, out)

    def __sub__(self, other):
        out = self.arr - other.arr
        if self.alg.field.p is not None:
            out = out % self.alg.field.p
        return RingMat(self.alg, out)

    def __neg__(self):
        out = -self.arr
        if self.alg.field.p is not None:
            out = out % self.alg.field.p
        return RingMat(self.alg, out)

    def is_zero(self):
        if self.arr.size == 0:
            return True
        return bool((self.arr == 0).all())

    def __eq__(self, other):
        if not isinstance(other, RingMat):
            return NotImplemented
        if self.arr.shape != other.arr.shape:
            return False
        if self.arr.size == 0:
            return True
        return bool((self.arr == other.arr).all())

    def __hash__(self):
        return hash(self.digest())

    @classmethod
    def block(cls, alg, grid, row_dims=None, col_dims=None):
        nr = len(grid)
        nc = len(grid[0]) if nr else 0
        rdims = list(row_dims) if row_dims is not None else [None] * nr
        cdims = list(col_dims) if col_dims is not None else [None] * nc
        for i in range(nr):
            for j in range(nc):
                b = grid[i][j]
                if b is None:
                    continue
                if rdims[i] is None:
                    rdims[i] = b.rows
                elif rdims[i] != b.rows:
                    raise ValidationError(f"block row {i} has inconsistent heights")
                if cdims[j] is None:
                    cdims[j] = b.cols
                elif cdims[j] != b.cols:
                    raise ValidationError(f"block column {j} has inconsistent widths")
        if any(x is None for x in rdims) or any(x is None for x in cdims):
            raise ValidationError("cannot infer all block sizes; pass row_dims/col_dims")
        out = cls.zeros(alg, sum(rdims), sum(cdims))
        roff = 0
        for i in range(nr):
            coff = 0
            for j in range(nc):
                b = grid[i][j]
                if b is not None:
                    out.arr[roff : roff + rdims[i], coff : coff + cdims[j], :] = b.arr
                coff += cdims[j]
            roff += rdims[i]
        return out

    @classmethod
    def from_k_matrix(cls, alg, K, r, c):
        """Recover ring entries from a k-matrix of a map R^c -> R^r that is
        given in regular-representation block form."""
        n = alg.dim
        if K.shape != (r * n, c * n):
            raise ValidationError(
                f"k-matrix shape {K.shape} does not match blocks ({r}, {c}) of size {n}"
            )
        out = cls.zeros(alg, r, c)
        u = alg.unit
        for j in range(c):
            colk = Mat(alg.field, K.a[:, j * n : (j + 1) * n].copy()) @ u
            for i in range(r):
                out.arr[i, j, :] = colk.a[i * n : (i + 1) * n, 0]
        return out

    def digest(self):
        h = hashlib.sha256()
        h.update(self.alg.key().encode())
        h.update(str(self.arr.shape).encode())
        if self.alg.field.p is not None:
            h.update(np.ascontiguousarray(self.arr).tobytes())
        else:
            h.update("|".join(str(x) for x in self.arr.flat).encode())
        return h.hexdigest()

    def to_entry_strings(self):
        """Entries as expression strings in the algebra's basis names."""
        out = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                terms = []
                for t in range(self.alg.dim):
                    ct = self.arr[i, j, t]
                    if ct == 0:
                        continue
                    nm = self.alg.names[t]
                    if nm == "1":
                        terms.append(str(ct))
                    elif ct == 1:
                        terms.append(nm)
                    else:
                        terms.append(f"{ct}*{nm}")
                row.append(" + ".join(terms) if terms else "0")
            out.append(row)
        return out

    def __repr__(self):
        return f"RingMat({self.rows}x{self.cols} over dim-{self.alg.dim} algebra)"
