"""Theorem checkers: each dualizing-complex characterization as a decision
procedure that evaluates both sides independently and compares.

Every checker produces a TheoremReport with one row per evaluated
condition, each carrying its own certificate.  The comparison contract:

  * consistent      the evaluated sides agree (at the weakest certificate
                    involved);
  * INCONSISTENT    two routes that are both certified (exact or
                    structural) disagree.  This is the bug alarm of the
                    whole engine: the mathematics forces agreement, so a
                    certified disagreement means a computation is wrong.
  * inconclusive    the sides disagree but at least one is only
                    window-graded, or a hypothesis needed by the
                    statement is not satisfied by the given instance, or
                    an existential scan found no witness in its pool.

Existential conditions (is there a module with such and such
properties?) are evaluated against a finite pool: a witness is evidence,
absence in the pool is not a refutation and on its own never produces
INCONSISTENT against a certified opposite side unless the theory
guarantees the pool must contain a witness (the coefficient module
itself is always added to the pool for exactly this reason).

Everything here assumes the zero-dimensional local setting of the rest
of the engine, where depth R = 0 collapses several indices: the Bass
index inf C + dim C is always 0, every nonzero module is
Cohen-Macaulay, and type is the socle dimension of the top homology.
"""

from __future__ import annotations

from .derived import (
    Certificate,
    DEFAULT_WINDOW,
    amplitude_of,
    is_cohen_macaulay,
    krull_dim_of,
    type_of,
)
from .errors import NotSemidualizing, ValidationError, ZeroComplex
from .exact import Mat, kernel_basis
from .fgmod import (
    FgModule,
    free_module,
    hom_module,
    residue_field_module,
)
from .resolve import DEFAULT_RANK_BUDGET
from .sdc import (
    _as_shifted_module,
    auslander_membership,
    gc_dimension,
    grade_with_respect_to,
    is_dualizing_direct,
    is_semidualizing,
    is_shift_of_ring,
)

CONSISTENT = "consistent"
INCONSISTENT = "INCONSISTENT"
INCONCLUSIVE = "inconclusive"

THEOREM_IDS = (
    "anni", "bass_criterion", "type_equiv", "tak", "module_cor",
    "grade_cm", "main_equiv", "auslander_char", "cut_regular",
    "q_bass", "q_amp",
)


class TheoremReport:
    """Outcome of one checker run: named condition rows plus a conclusion."""

    __slots__ = ("theorem_id", "inputs", "conditions", "conclusion", "detail")

    def __init__(self, theorem_id, inputs, conditions, conclusion, detail=""):
        if theorem_id not in THEOREM_IDS:
            raise ValidationError(f"unknown theorem id {theorem_id!r}")
        if conclusion not in (CONSISTENT, INCONSISTENT, INCONCLUSIVE):
            raise ValidationError(f"unknown conclusion {conclusion!r}")
        self.theorem_id = theorem_id
        self.inputs = dict(inputs)
        self.conditions = list(conditions)
        self.conclusion = conclusion
        self.detail = detail

    def certificate(self):
        """Weakest certificate among the condition rows that carry one."""
        certs = [c for _, _, c in self.conditions if c is not None]
        if not certs:
            return Certificate.exact(rule="no-computation")
        return Certificate.weakest(certs)

    def condition(self, name):
        for n, v, c in self.conditions:
            if n == name:
                return v, c
        raise KeyError(name)

    def to_json(self):
        return {
            "theorem": self.theorem_id,
            "inputs": self.inputs,
            "conditions": [
                {
                    "name": n,
                    "value": v,
                    "certificate": None if c is None else c.to_json(),
                }
                for n, v, c in self.conditions
            ],
            "conclusion": self.conclusion,
            "detail": self.detail,
        }

    def __repr__(self):
        return f"TheoremReport({self.theorem_id}, {self.conclusion})"


def _name_of(obj, fallback):
    name = getattr(obj, "name", None)
    return name if name else fallback


def _conjunction(parts):
    """(value, certificate) of a conjunction of certified booleans.
    A certified False leg settles the whole thing exactly."""
    for v, c in parts:
        if v is False:
            return False, c
    return True, Certificate.weakest([c for _, c in parts])


def _compare(lhs, lhs_cert, rhs, rhs_cert):
    """Conclusion for a biconditional evaluated on one instance."""
    if lhs == rhs:
        return CONSISTENT, ""
    if lhs_cert.is_certain and rhs_cert.is_certain:
        return INCONSISTENT, (
            f"certified routes disagree: {lhs} ({lhs_cert.kind}) vs "
            f"{rhs} ({rhs_cert.kind})"
        )
    return INCONCLUSIVE, (
        "sides disagree but at least one is only window-graded"
    )


def _gate(C, window, rank_budget):
    sdc = is_semidualizing(C, window=window, rank_budget=rank_budget)
    if sdc.holds is False:
        raise NotSemidualizing(
            f"the coefficient complex is certified not semidualizing: "
            f"{sdc.certificate!r}"
        )
    return sdc


def _default_pool(A, C0, extra):
    pool = [
        ("k", residue_field_module(A)),
        ("ring", free_module(A, 1)),
        ("coefficients", C0),
    ]
    seen = {id(m) for _, m in pool}
    for i, M in enumerate(extra or ()):
        if isinstance(M, tuple):
            name, mod = M
        else:
            name, mod = _name_of(M, f"pool[{i}]"), M
        if id(mod) not in seen:
            pool.append((name, mod))
            seen.add(id(mod))
    return pool


# -- individual characterizations ------------------------------------------------


def check_anni(C, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """Cohen-Macaulay semidualizing of type 1 on one side, the direct
    structural test for a dualizing complex on the other."""
    sdc = is_semidualizing(C, window=window, rank_budget=rank_budget)
    conditions = [("semidualizing", sdc.holds, sdc.certificate)]
    legs = [(sdc.holds, sdc.certificate)]
    try:
        amp = amplitude_of(C)
        conditions.append(("cohen-macaulay", amp == 0,
                           Certificate.exact(amplitude=amp)))
        legs.append((amp == 0, Certificate.exact(amplitude=amp)))
        t = type_of(C)
        conditions.append(("type-one", t == 1, Certificate.exact(type=t)))
        legs.append((t == 1, Certificate.exact(type=t)))
    except ZeroComplex:
        cert = Certificate.exact(rule="zero-complex")
        conditions.append(("nonzero", False, cert))
        legs.append((False, cert))
    lhs, lhs_cert = _conjunction(legs)
    dual = is_dualizing_direct(C)
    conditions.append(("dualizing-direct", dual.holds, dual.certificate))
    conclusion, detail = _compare(lhs, lhs_cert, dual.holds, dual.certificate)
    return TheoremReport(
        "anni", {"C": _name_of(C, "complex")}, conditions, conclusion, detail
    )


def check_bass_criterion(C, window=DEFAULT_WINDOW,
                         rank_budget=DEFAULT_RANK_BUDGET):
    """The Bass-number equality against the direct dualizing test: the
    Bass number of the ring at degree inf C + dim C must equal the
    bottom Betti number of C exactly when C is dualizing."""
    sdc = _gate(C, window, rank_budget)
    C0, s = sdc.module, sdc.shift
    A = C0.alg
    idx = s + krull_dim_of(C)
    # depth R = 0 collapses the index to zero, where the Bass number of
    # the ring is its socle dimension
    if idx != 0:
        raise ValidationError(
            f"inf C + dim C = {idx} cannot happen over a zero-dimensional ring"
        )
    mu = free_module(A, 1).socle_dim
    beta = C0.min_gens
    equal = mu == beta
    eq_cert = Certificate.exact(bass_of_ring=mu, bottom_betti=beta)
    dual = is_dualizing_direct(C)
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("bass-index", idx, Certificate.exact()),
        ("bass-equals-bottom-betti", equal, eq_cert),
        ("dualizing-direct", dual.holds, dual.certificate),
    ]
    conclusion, detail = _compare(equal, eq_cert, dual.holds, dual.certificate)
    return TheoremReport(
        "bass_criterion", {"C": _name_of(C, "complex")},
        conditions, conclusion, detail,
    )


def _witness_scan(pool, C, window, rank_budget, need_type_one):
    """Scan a module pool for a Cohen-Macaulay member of finite
    reflexivity dimension (optionally of type 1).  Returns
    (witness_name_or_None, rows, weakest_cert_of_found)."""
    rows = []
    found = None
    found_cert = None
    for name, M in pool:
        if M.dim == 0:
            continue
        t = M.socle_dim
        if need_type_one and t != 1:
            rows.append((f"pool.{name}", f"type {t}, skipped", None))
            continue
        g = gc_dimension(M, C, window=window, rank_budget=rank_budget)
        rows.append((
            f"pool.{name}",
            f"type {t}, reflexivity {'finite' if g.finite else 'infinite'}",
            g.certificate,
        ))
        if g.finite and found is None:
            found = name
            found_cert = g.certificate
    return found, rows, found_cert


def check_type_equiv(C, Zs=(), window=DEFAULT_WINDOW,
                     rank_budget=DEFAULT_RANK_BUDGET):
    """Three equivalent statements: a type-1 finite-reflexivity witness
    exists, the ring's type equals the bottom Betti number of C, and C
    itself has type 1.  Also verifies the two product formulas tying
    type, Betti and Bass numbers together; those are unconditional, so a
    failure is reported INCONSISTENT immediately."""
    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    A = C0.alg
    rR = free_module(A, 1).socle_dim
    type_C = C0.socle_dim
    beta0 = C0.min_gens
    ii = rR == beta0
    iii = type_C == 1
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("ring-type-equals-bottom-betti", ii,
         Certificate.exact(ring_type=rR, bottom_betti=beta0)),
        ("coefficient-type-one", iii, Certificate.exact(type=type_C)),
    ]
    # unconditional product formula: r(R) = beta_0(C) * r(C)
    prod_ok = rR == beta0 * type_C
    conditions.append((
        "type-product-formula", prod_ok,
        Certificate.exact(ring_type=rR, product=beta0 * type_C),
    ))
    if not prod_ok:
        return TheoremReport(
            "type_equiv", {"C": _name_of(C, "complex")}, conditions,
            INCONSISTENT, "the type product formula failed on certified integers",
        )
    if ii != iii:
        return TheoremReport(
            "type_equiv", {"C": _name_of(C, "complex")}, conditions,
            INCONSISTENT, "the two numeric conditions disagree exactly",
        )
    pool = _default_pool(A, C0, Zs)
    witness, rows, found_cert = _witness_scan(
        pool, C, window, rank_budget, need_type_one=True
    )
    conditions.extend(rows)
    conditions.append((
        "type-one-witness", witness,
        found_cert if witness else None,
    ))
    if witness is not None:
        # verify the witness product formula r(Z) = beta_{inf C}(dual Z) * r(C)
        M = dict(pool)[witness]
        dualZ = hom_module(M, C0).module
        lhs = M.socle_dim
        rhs = dualZ.min_gens * type_C
        conditions.append((
            "witness-product-formula", lhs == rhs,
            Certificate.exact(witness_type=lhs, product=rhs),
        ))
        if lhs != rhs:
            return TheoremReport(
                "type_equiv", {"C": _name_of(C, "complex")}, conditions,
                INCONSISTENT,
                "the witness product formula failed on certified integers",
            )
    if ii and witness is None:
        # the coefficient module itself must have been a witness
        return TheoremReport(
            "type_equiv", {"C": _name_of(C, "complex")}, conditions,
            INCONSISTENT,
            "numeric conditions hold but the guaranteed witness was not found",
        )
    if not ii and witness is not None:
        if found_cert.is_certain:
            return TheoremReport(
                "type_equiv", {"C": _name_of(C, "complex")}, conditions,
                INCONSISTENT,
                "certified witness found although the numeric conditions fail",
            )
        return TheoremReport(
            "type_equiv", {"C": _name_of(C, "complex")}, conditions,
            INCONCLUSIVE, "window-graded witness against exact numeric failure",
        )
    return TheoremReport(
        "type_equiv", {"C": _name_of(C, "complex")}, conditions, CONSISTENT
    )


def check_tak(C, M, window=DEFAULT_WINDOW, rank_budget=DEFAULT_RANK_BUDGET):
    """Type-1 coefficients plus any Cohen-Macaulay module of finite
    reflexivity dimension force the coefficients to be dualizing."""
    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    type_C = C0.socle_dim
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("coefficient-type-one", type_C == 1, Certificate.exact(type=type_C)),
    ]
    inputs = {"C": _name_of(C, "complex"), "M": _name_of(M, "module")}
    if M.dim == 0:
        conditions.append(("module-nonzero", False,
                           Certificate.exact(rule="zero-module")))
        return TheoremReport("tak", inputs, conditions, INCONCLUSIVE,
                             "hypotheses-not-met")
    cm = is_cohen_macaulay(M)
    conditions.append(("module-cohen-macaulay", cm, Certificate.exact()))
    g = gc_dimension(M, C, window=window, rank_budget=rank_budget)
    conditions.append(("module-reflexivity-finite", g.finite, g.certificate))
    if not (type_C == 1 and cm and g.finite):
        return TheoremReport("tak", inputs, conditions, INCONCLUSIVE,
                             "hypotheses-not-met")
    dual = is_dualizing_direct(C)
    conditions.append(("dualizing-direct", dual.holds, dual.certificate))
    if dual.holds:
        return TheoremReport("tak", inputs, conditions, CONSISTENT)
    hyp_cert = Certificate.weakest(
        [sdc.certificate, g.certificate, dual.certificate]
    )
    if hyp_cert.is_certain:
        return TheoremReport(
            "tak", inputs, conditions, INCONSISTENT,
            "certified hypotheses hold but the conclusion fails",
        )
    return TheoremReport("tak", inputs, conditions, INCONCLUSIVE,
                         "hypotheses hold only at window grade")


def check_module_cor(C, Ms=(), window=DEFAULT_WINDOW,
                     rank_budget=DEFAULT_RANK_BUDGET):
    """Module form of the characterization: dualizing, a type-1 witness,
    and the ring-type condition with any finite-reflexivity witness."""
    if not isinstance(C, FgModule):
        M0, shift = _as_shifted_module(C)
        if shift != 0:
            raise ValidationError(
                "this characterization is stated for modules; pass the "
                "degree-zero homology module"
            )
        C = M0
    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    A = C0.alg
    dual = is_dualizing_direct(C)
    rR = free_module(A, 1).socle_dim
    beta0 = C0.min_gens
    pool = _default_pool(A, C0, Ms)
    w1, rows1, cert1 = _witness_scan(pool, C, window, rank_budget,
                                     need_type_one=True)
    w2, rows2, cert2 = _witness_scan(pool, C, window, rank_budget,
                                     need_type_one=False)
    iii = (rR == beta0) and w2 is not None
    iii_cert = Certificate.exact(ring_type=rR, bottom_betti=beta0)
    if w2 is not None and rR == beta0:
        iii_cert = Certificate.weakest([iii_cert, cert2])
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("dualizing-direct", dual.holds, dual.certificate),
        ("type-one-witness", w1, cert1),
        ("ring-type-equals-bottom-betti", rR == beta0,
         Certificate.exact(ring_type=rR, bottom_betti=beta0)),
        ("any-witness", w2, cert2),
    ]
    conditions.extend(rows1)
    inputs = {"C": _name_of(C, "module")}
    # three-way equivalence: (i) dualizing, (ii) type-one witness,
    # (iii) numeric condition + any witness
    vals = [
        (dual.holds, dual.certificate),
        (w1 is not None, cert1 or Certificate.exact(rule="pool-exhausted")),
        (iii, iii_cert),
    ]
    names = ["dualizing", "type-one-witness", "numeric-plus-witness"]
    for a in range(3):
        for b in range(a + 1, 3):
            (va, ca), (vb, cb) = vals[a], vals[b]
            if va != vb:
                # a missing witness refutes nothing: scanning a pool is
                # one-directional evidence
                scan_limited = (
                    (a == 1 and not va)
                    or (b == 1 and not vb)
                    or (b == 2 and not vb and w2 is None)
                )
                if scan_limited:
                    return TheoremReport(
                        "module_cor", inputs, conditions, INCONCLUSIVE,
                        f"{names[a]} and {names[b]} disagree but the "
                        f"pool scan is not exhaustive",
                    )
                if ca.is_certain and cb.is_certain:
                    return TheoremReport(
                        "module_cor", inputs, conditions, INCONSISTENT,
                        f"{names[a]} and {names[b]} disagree with certificates",
                    )
                return TheoremReport(
                    "module_cor", inputs, conditions, INCONCLUSIVE,
                    f"{names[a]} and {names[b]} disagree at window grade",
                )
    return TheoremReport("module_cor", inputs, conditions, CONSISTENT)


def check_grade_cm(C, X, window=DEFAULT_WINDOW,
                   rank_budget=DEFAULT_RANK_BUDGET):
    """A Cohen-Macaulay complex of finite reflexivity dimension whose
    dimension equals dim C minus its grade forces C Cohen-Macaulay."""
    sdc = _gate(C, window, rank_budget)
    conditions = [("semidualizing", sdc.holds, sdc.certificate)]
    inputs = {"C": _name_of(C, "complex"), "X": _name_of(X, "complex")}
    try:
        cm_X = is_cohen_macaulay(X)
    except ZeroComplex:
        conditions.append(("X-nonzero", False,
                           Certificate.exact(rule="zero-complex")))
        return TheoremReport("grade_cm", inputs, conditions, INCONCLUSIVE,
                             "hypotheses-not-met")
    conditions.append(("X-cohen-macaulay", cm_X, Certificate.exact()))
    g = gc_dimension(X, C, window=window, rank_budget=rank_budget)
    conditions.append(("X-reflexivity-finite", g.finite, g.certificate))
    if not (cm_X and g.finite):
        return TheoremReport("grade_cm", inputs, conditions, INCONCLUSIVE,
                             "hypotheses-not-met")
    dim_X = krull_dim_of(X)
    dim_C = krull_dim_of(C)
    gr, gr_cert = grade_with_respect_to(X, C)
    equal = dim_X == dim_C - gr
    eq_cert = Certificate.weakest([gr_cert, Certificate.exact(
        dim_x=dim_X, dim_c=dim_C, grade=gr)])
    conditions.append(("dimension-grade-identity", equal, eq_cert))
    cm_C = amplitude_of(C) == 0
    conditions.append(("C-cohen-macaulay", cm_C, Certificate.exact()))
    if equal and cm_C:
        return TheoremReport("grade_cm", inputs, conditions, CONSISTENT)
    if equal and not cm_C:
        hyp = Certificate.weakest([sdc.certificate, g.certificate, eq_cert])
        if hyp.is_certain:
            return TheoremReport("grade_cm", inputs, conditions, INCONSISTENT,
                                 "identity holds but C is not Cohen-Macaulay")
        return TheoremReport("grade_cm", inputs, conditions, INCONCLUSIVE,
                             "identity holds only at window grade")
    return TheoremReport("grade_cm", inputs, conditions, INCONCLUSIVE,
                         "the dimension identity does not hold on this X")


def check_main_equiv(C, X, window=DEFAULT_WINDOW,
                     rank_budget=DEFAULT_RANK_BUDGET):
    """The four-condition characterization with its three closing cases.

    Evaluates the numeric conditions, determines which closing case the
    supplied X matches, and when the closing hypotheses hold verifies
    that C passes the direct dualizing test."""
    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    A = C0.alg
    type_C = C0.socle_dim
    rR = free_module(A, 1).socle_dim
    beta0 = C0.min_gens
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("coefficient-type-one", type_C == 1, Certificate.exact(type=type_C)),
        ("ring-type-equals-bottom-betti", rR == beta0,
         Certificate.exact(ring_type=rR, bottom_betti=beta0)),
    ]
    inputs = {"C": _name_of(C, "complex"), "X": _name_of(X, "complex")}
    # (iii) and (iv) share their existential half, so they are equivalent
    # exactly when the numeric halves agree
    if (type_C == 1) != (rR == beta0):
        return TheoremReport("main_equiv", inputs, conditions, INCONSISTENT,
                             "the numeric halves of (iii) and (iv) disagree")
    dual = is_dualizing_direct(C)
    conditions.append(("dualizing-direct", dual.holds, dual.certificate))
    if dual.holds and type_C != 1:
        # the forward implication needs no closing case at all
        return TheoremReport("main_equiv", inputs, conditions, INCONSISTENT,
                             "dualizing coefficients must have type one")
    try:
        amp_X = amplitude_of(X)
    except ZeroComplex:
        conditions.append(("X-nonzero", False,
                           Certificate.exact(rule="zero-complex")))
        return TheoremReport("main_equiv", inputs, conditions, INCONCLUSIVE,
                             "hypotheses-not-met")
    cm_X = amp_X == 0
    conditions.append(("X-cohen-macaulay", cm_X,
                       Certificate.exact(amplitude=amp_X)))
    if type_C != 1:
        # the forward check above already rules out dual.holds here, so
        # both sides of the equivalence are certified false
        return TheoremReport(
            "main_equiv", inputs, conditions, CONSISTENT,
            "the type condition fails exactly and C is not dualizing; "
            "there is nothing to close",
        )
    if not cm_X:
        return TheoremReport(
            "main_equiv", inputs, conditions, INCONCLUSIVE,
            "the supplied X is not Cohen-Macaulay, so it does not witness "
            "the existential condition",
        )
    g = gc_dimension(X, C, window=window, rank_budget=rank_budget)
    conditions.append(("X-reflexivity-finite", g.finite, g.certificate))
    cases = ["amplitude-zero"]
    if is_dualizing_direct(X).holds:
        cases.append("X-dualizing")
    gr, _ = grade_with_respect_to(X, C)
    if krull_dim_of(X) == krull_dim_of(C) - gr:
        cases.append("dimension-grade-identity")
    conditions.append(("closing-cases", "+".join(cases), Certificate.exact()))
    if not g.finite:
        return TheoremReport(
            "main_equiv", inputs, conditions, INCONCLUSIVE,
            "the supplied X has infinite reflexivity dimension, so it does "
            "not witness the existential condition",
        )
    if dual.holds:
        return TheoremReport("main_equiv", inputs, conditions, CONSISTENT)
    hyp = Certificate.weakest([sdc.certificate, g.certificate])
    if hyp.is_certain:
        return TheoremReport("main_equiv", inputs, conditions, INCONSISTENT,
                             "closing case certified but C is not dualizing")
    return TheoremReport("main_equiv", inputs, conditions, INCONCLUSIVE,
                         "closing case holds only at window grade")


def check_auslander_char(C, Ms=(), window=DEFAULT_WINDOW,
                         rank_budget=DEFAULT_RANK_BUDGET):
    """Shift-of-the-ring, the residue field in the Auslander class, and
    a type-1 Cohen-Macaulay member of the Auslander class are all
    equivalent."""
    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    A = C0.alg
    ring_like, _ = is_shift_of_ring(C)
    ring_cert = Certificate.exact(rule="free-rank-one")
    k = residue_field_module(A)
    mem_k = auslander_membership(k, C, window=window, rank_budget=rank_budget)
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("shift-of-ring", ring_like, ring_cert),
        ("k-in-auslander-class", mem_k.member, mem_k.certificate),
    ]
    pool = _default_pool(A, C0, Ms)
    witness = None
    witness_cert = None
    for name, M in pool:
        if M.dim == 0 or M.socle_dim != 1:
            conditions.append((f"pool.{name}", f"type {M.socle_dim}, skipped",
                               None))
            continue
        mem = auslander_membership(M, C, window=window,
                                   rank_budget=rank_budget)
        conditions.append((f"pool.{name}",
                           "member" if mem.member else "not a member",
                           mem.certificate))
        if mem.member and witness is None:
            witness = name
            witness_cert = mem.certificate
    conditions.append(("type-one-member", witness, witness_cert))
    inputs = {"C": _name_of(C, "complex")}
    vals = [
        (ring_like, ring_cert),
        (mem_k.member, mem_k.certificate),
        (witness is not None,
         witness_cert or Certificate.exact(rule="pool-exhausted")),
    ]
    names = ["shift-of-ring", "k-membership", "type-one-member"]
    for a in range(3):
        for b in range(a + 1, 3):
            (va, ca), (vb, cb) = vals[a], vals[b]
            if va != vb:
                if b == 2 and not vb:
                    return TheoremReport(
                        "auslander_char", inputs, conditions, INCONCLUSIVE,
                        "no pool member qualifies; the scan is not exhaustive",
                    )
                if ca.is_certain and cb.is_certain:
                    return TheoremReport(
                        "auslander_char", inputs, conditions, INCONSISTENT,
                        f"{names[a]} and {names[b]} disagree with certificates",
                    )
                return TheoremReport(
                    "auslander_char", inputs, conditions, INCONCLUSIVE,
                    f"{names[a]} and {names[b]} disagree at window grade",
                )
    return TheoremReport("auslander_char", inputs, conditions, CONSISTENT)


def cut_regular(C, M, xs=(), window=DEFAULT_WINDOW,
                rank_budget=DEFAULT_RANK_BUDGET):
    """Regular sequences shift the reflexivity dimension by their length.

    Over a zero-dimensional ring no element of the maximal ideal is
    regular on a nonzero module (the socle is killed), so for a
    nonempty sequence the report exhibits the obstruction; the empty
    sequence verifies the identity trivially.  Units are rejected as
    not lying in the maximal ideal."""
    A = M.alg
    inputs = {"C": _name_of(C, "complex"), "M": _name_of(M, "module"),
              "length": len(xs)}
    conditions = []
    if M.dim == 0:
        conditions.append(("module-nonzero", False,
                           Certificate.exact(rule="zero-module")))
        return TheoremReport("cut_regular", inputs, conditions, INCONCLUSIVE,
                             "hypotheses-not-met")
    if not xs:
        try:
            g = gc_dimension(M, C, window=window, rank_budget=rank_budget)
            conditions.append(("empty-sequence-identity", True, g.certificate))
            detail = "reflexivity dimension unchanged by the empty sequence"
        except NotSemidualizing:
            conditions.append(("empty-sequence-identity", True,
                               Certificate.exact(rule="vacuous")))
            detail = "identity is vacuous; coefficients not semidualizing"
        return TheoremReport("cut_regular", inputs, conditions, CONSISTENT,
                             detail)
    lam = A.local.residue_row
    for i, x in enumerate(xs):
        res = lam @ x
        if any(res.a[0, j] != 0 for j in range(res.cols)):
            conditions.append((f"x[{i}]", "rejected: unit, not in the maximal "
                               "ideal", Certificate.exact()))
            continue
        act = M.element_action(x)
        ker = kernel_basis(act)
        if ker.cols == 0:
            conditions.append((f"x[{i}]", "regular", Certificate.exact()))
            return TheoremReport(
                "cut_regular", inputs, conditions, INCONSISTENT,
                "a maximal-ideal element acted injectively on a nonzero "
                "module over a zero-dimensional ring",
            )
        witness = [int(v) for v in ker.col(0).a[:, 0].tolist()]
        conditions.append((
            f"x[{i}]", "zerodivisor",
            Certificate.exact(kernel_dim=ker.cols, witness=witness),
        ))
    return TheoremReport(
        "cut_regular", inputs, conditions, CONSISTENT,
        "no regular element exists: depth zero forces zerodivisors",
    )


def explore_question(kind, C, pool=(), window=DEFAULT_WINDOW,
                     rank_budget=DEFAULT_RANK_BUDGET):
    """Evidence scans for the two open questions; never claims the
    general question settled, only records what this instance shows."""
    if kind == "q_bass":
        return _explore_q_bass(C, window, rank_budget)
    if kind == "q_amp":
        return _explore_q_amp(C, pool, window, rank_budget)
    raise ValidationError(f"unknown question kind {kind!r}")


def _explore_q_bass(C, window, rank_budget):
    """Both sides of the Bass-number question on one instance.  One
    implication is proven, so a certified one-sided failure in that
    direction is an engine inconsistency; agreement is evidence only."""
    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    A = C0.alg
    side_i = C0.socle_dim == 1
    side_ii = free_module(A, 1).socle_dim == C0.min_gens
    conditions = [
        ("semidualizing", sdc.holds, sdc.certificate),
        ("bass-of-coefficients-is-one", side_i,
         Certificate.exact(value=C0.socle_dim)),
        ("ring-bass-equality", side_ii,
         Certificate.exact(ring_type=free_module(A, 1).socle_dim,
                           bottom_betti=C0.min_gens)),
    ]
    inputs = {"C": _name_of(C, "complex")}
    if side_i == side_ii:
        return TheoremReport("q_bass", inputs, conditions, CONSISTENT,
                             "evidence only; the general question stays open")
    if side_ii and not side_i:
        return TheoremReport("q_bass", inputs, conditions, INCONSISTENT,
                             "the proven implication failed on exact integers")
    return TheoremReport(
        "q_bass", inputs, conditions, INCONSISTENT,
        "over a zero-dimensional ring both sides characterize dualizing, "
        "so certified disagreement is an engine fault",
    )


def _explore_q_amp(C, pool, window, rank_budget):
    """Construct positive-amplitude complexes of finite reflexivity
    dimension and record that none of them is Cohen-Macaulay: over a
    zero-dimensional ring the question's hypothesis class is empty."""
    from .cplx import Complex

    sdc = _gate(C, window, rank_budget)
    C0 = sdc.module
    A = C0.alg
    conditions = [("semidualizing", sdc.holds, sdc.certificate)]
    inputs = {"C": _name_of(C, "complex")}

    def _two_term(M, diff=None):
        if diff is None:
            diff = Mat.zeros(A.field, M.dim, M.dim)
        return Complex.from_modules(A, 0, [M, M], [diff])

    # a sum of shifted copies of the coefficients, and a cone on a
    # multiplication map between them: both have finite reflexivity
    # dimension by construction (closure under sums, shifts, and the
    # two-of-three property along the defining triangle)
    exhibits = [("sum-with-shift", _two_term(C0),
                 Certificate.exact(rule="shift-closure"))]
    mi = A.local.max_ideal
    if mi.cols:
        exhibits.append((
            "multiplication-cone", _two_term(C0, C0.element_action(mi.col(0))),
            Certificate.exact(rule="triangle-closure"),
        ))
    for i, entry in enumerate(pool or ()):
        name, M = entry if isinstance(entry, tuple) else (f"pool[{i}]", entry)
        if M.dim == 0:
            continue
        g = gc_dimension(M, C, window=window, rank_budget=rank_budget)
        if g.finite:
            exhibits.append((f"sum-with-shift.{name}", _two_term(M),
                             g.certificate))

    hypothesis_met = False
    for name, X, refl_cert in exhibits:
        amp = amplitude_of(X)
        cm = amp == 0
        conditions.append((
            f"exhibit.{name}",
            f"amplitude {amp}, "
            f"{'cohen-macaulay' if cm else 'not cohen-macaulay'}, "
            f"reflexivity finite by construction",
            Certificate.weakest([Certificate.exact(amplitude=amp), refl_cert]),
        ))
        if cm and amp > 0:
            hypothesis_met = True
    conditions.append(("hypothesis-instance-found", hypothesis_met,
                       Certificate.exact()))
    return TheoremReport(
        "q_amp", inputs, conditions, INCONCLUSIVE,
        "positive amplitude excludes Cohen-Macaulay over a zero-dimensional "
        "ring, so the hypothesis class is empty here; evidence recorded",
    )
