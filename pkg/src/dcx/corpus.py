"""The bundled example rings and modules.

Nine small local algebras exercise every qualitative regime the engine
distinguishes: the field itself, truncated polynomial rings, a monomial
complete intersection, two non-Gorenstein fat points, a tensor square
with a non-free semidualizing module, and a Gorenstein trivial extension
with exponentially growing Betti numbers.
"""

from __future__ import annotations

import numpy as np

from .algebra import monomial_quotient, tensor_algebra, trivial_extension
from .errors import ValidationError
from .exact import GF, Field
from .fgmod import FgModule, canonical_module, free_module, residue_field_module

DEFAULT_FIELD_P = 101

RING_NAMES = ("pt", "d2", "d3", "d4", "ci2", "fat", "fat3", "prod", "triv")

# Per-ring homological window: how many degrees of Ext/Tor the bundled
# checks request.  Rings with fast Betti growth get shorter windows so
# the rank budget is never the binding constraint.
CORPUS_WINDOWS = {
    "pt": 8,
    "d2": 12,
    "d3": 12,
    "d4": 12,
    "ci2": 10,
    "fat": 8,
    "fat3": 5,
    "prod": 4,
    "triv": 4,
}


def build_ring(name, field=None):
    if field is None:
        field = GF(DEFAULT_FIELD_P)
    if not isinstance(field, Field):
        raise ValidationError("field must be a Field instance")
    if name == "pt":
        return monomial_quotient(field, [], [])
    if name == "d2":
        return monomial_quotient(field, ["x"], ["x^2"])
    if name == "d3":
        return monomial_quotient(field, ["x"], ["x^3"])
    if name == "d4":
        return monomial_quotient(field, ["x"], ["x^4"])
    if name == "ci2":
        return monomial_quotient(field, ["x", "y"], ["x^2", "y^2"])
    if name == "fat":
        return monomial_quotient(field, ["x", "y"], ["x^2", "x*y", "y^2"])
    if name == "fat3":
        return monomial_quotient(
            field, ["x", "y", "z"], ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]
        )
    if name == "prod":
        f = monomial_quotient(field, ["x", "y"], ["x^2", "x*y", "y^2"])
        return tensor_algebra(f, f)
    if name == "triv":
        f = monomial_quotient(field, ["x", "y"], ["x^2", "x*y", "y^2"])
        return trivial_extension(f, f.dual_regular_action())
    raise ValidationError(f"unknown corpus ring {name!r}; known: {', '.join(RING_NAMES)}")


def all_rings(field=None):
    return {name: build_ring(name, field) for name in RING_NAMES}


def external_tensor(MA, MB, T):
    """M_A boxtimes M_B as a module over the tensor algebra T = A tensor B.

    T's basis must be ordered left-factor-major, which is what
    tensor_algebra produces.
    """
    nA = MA.alg.dim
    nB = MB.alg.dim
    if T.dim != nA * nB:
        raise ValidationError("tensor algebra dimension mismatch")
    dA, dB = MA.dim, MB.dim
    shape = (nA * nB, dA * dB, dA * dB)
    if T.field.p is None:
        rho = np.empty(shape, dtype=object)
    else:
        rho = np.empty(shape, dtype=np.int64)
    for i in range(nA):
        for j in range(nB):
            blk = np.kron(MA.rho[i], MB.rho[j])
            if T.field.p is not None:
                blk = np.asarray(blk, dtype=np.int64) % T.field.p
            rho[i * nB + j] = blk
    return FgModule(T, rho, validate=True)


def inflate_to_trivial_extension(M, T, base):
    """View a module over the base ring A as a module over T = A ltimes W,
    letting the square-zero part act by zero."""
    n = base.dim
    d = M.dim
    ext = T.dim - n
    shape = (T.dim, d, d)
    if T.field.p is None:
        rho = np.empty(shape, dtype=object)
        zero_block = np.full((d, d), 0, dtype=object)
    else:
        rho = np.empty(shape, dtype=np.int64)
        zero_block = np.zeros((d, d), dtype=np.int64)
    for i in range(n):
        rho[i] = M.rho[i]
    for u in range(ext):
        rho[n + u] = zero_block
    return FgModule(T, rho, validate=True)


def standard_modules(alg, ring_name=None):
    """The named modules every ring contributes to the checks."""
    mods = {
        "k": residue_field_module(alg),
        "ring": free_module(alg, 1, name="ring"),
        "canonical": canonical_module(alg),
    }
    if ring_name == "prod":
        f = monomial_quotient(alg.field, ["x", "y"], ["x^2", "x*y", "y^2"])
        omega_f = canonical_module(f)
        ring_f = free_module(f, 1)
        mods["mixed_left"] = external_tensor(omega_f, ring_f, alg)
        mods["mixed_right"] = external_tensor(ring_f, omega_f, alg)
    return mods


def window_for(ring_name):
    return CORPUS_WINDOWS.get(ring_name, 6)
