"""Frobenius fixed-point solvers over the truncated valued rings.

The central equation is the semilinear system phi(x) = x F for a row
vector x over a truncated ring, F the specialized Frobenius matrix of a
height-i module.  Approximate solutions whose defect

    Q = phi(x0) - x0 F

has valuation above the threshold a = p*i/(p-1) lift to exact solutions
via a contraction

    y -> (Q + phi(y)) V / (scaling of valuation i),

unique with correction above b = i/(p-1).  The same engine serves the
tilt ring and the untilted cyclotomic ring; in the latter the p-th
power of a sum has no mixed terms (characteristic p), so the binomial
cross terms of the classical iteration vanish identically.

enumerate_jc is the deliberately brute-force oracle: a full grid scan
of coefficient vectors against the congruence, guarded by a budget.  No
semilinear-algebra shortcut is taken on this path; it is what the
contraction solver is validated against.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from . import tiltring
from .errors import (
    BudgetExceeded,
    NonCharacter,
    NoConvergenceWithinCut,
    ParamMismatch,
    PrecisionTooLow,
    RankError,
    RegimeViolation,
    StructureViolation,
)
from .qring import gamma_q
from .tiltring import RingSpec, ValuedTrunc, frobenius, galois_act
from .wach import mat_inverse_unit, mat_map, specialize, verify_height

__all__ = [
    "SolverParams",
    "PhiVector",
    "JcSet",
    "LiftResult",
    "TstarResult",
    "enumerate_jc",
    "contraction_lift",
    "contraction_lift_untilted",
    "compute_tstar",
    "compute_tstar_untilted",
    "character_of",
    "galois_act_jc",
]


# -- parameters ---------------------------------------------------------------

@dataclass(frozen=True)
class SolverParams:
    """Numerical regime of one lifting run.

    c_work and the thresholds a, b are indexed the way the truncation
    ideals are: in tilt mode these are tilted valuations, in untilted
    mode at level s the ring valuation is c/p^s for index c.  h is the
    guaranteed defect-valuation gain per iterate, already expressed in
    the ring's own valuation units.
    """

    p: int
    i: int
    s: Optional[int]  # None marks tilt mode
    c_work: Fraction
    h: Fraction

    @property
    def b(self):
        return Fraction(self.i, self.p - 1)

    @property
    def a(self):
        return Fraction(self.p * self.i, self.p - 1)

    @property
    def ring_scale(self):
        """Ring valuation of index-1: 1 in tilt mode, 1/p^s untilted."""
        return Fraction(1) if self.s is None else Fraction(1, self.p**self.s)

    @property
    def defect_floor(self):
        """Ring valuation the defect must strictly exceed: a (scaled)."""
        return self.a * self.ring_scale

    @property
    def correction_floor(self):
        """Ring valuation the correction stays above: b (scaled)."""
        return self.b * self.ring_scale

    def __post_init__(self):
        object.__setattr__(self, "c_work", Fraction(self.c_work))
        object.__setattr__(self, "h", Fraction(self.h))
        if self.i < 0:
            raise ValueError("height i must be >= 0")
        if self.s is not None and self.p**self.s <= self.a:
            raise RegimeViolation(
                f"p^s = {self.p ** self.s} <= a = {self.a}",
                precondition="p^s > a",
            )
        if self.c_work <= self.a:
            raise ValueError(f"c_work = {self.c_work} must exceed a = {self.a}")
        if self.h <= 0:
            raise ValueError("h must be positive")
        if self.s is None:
            if self.h > self.c_work / self.p - self.b:
                raise ValueError("h inconsistent: need h <= c_work/p - i/(p-1)")
        else:
            ps = self.p**self.s
            bound = min(Fraction(1), Fraction((self.p - 1), 1) * (self.c_work - self.i) / ps) \
                - Fraction(self.i, ps)
            if self.h > bound:
                raise ValueError(
                    "h inconsistent: need h <= min(1, (p-1)c/p^s) - i/p^s "
                    "with c = c_work - i"
                )

    @classmethod
    def for_tilt(cls, p, i, spec):
        """Defaults: defect certified one grid step above a, plus margin."""
        a = Fraction(p * i, p - 1)
        c_work = a + Fraction(2, spec.denominator)
        h = c_work / p - Fraction(i, p - 1)
        return cls(p=p, i=i, s=None, c_work=c_work, h=h)

    @classmethod
    def for_untilted(cls, p, i, s):
        """Defaults: one ring grid step above a (index step p^s/D = 1/(p-1))."""
        a = Fraction(p * i, p - 1)
        c_work = a + Fraction(1, p - 1)
        ps = p**s
        h = min(Fraction(1), Fraction(p - 1) * (c_work - i) / ps) - Fraction(i, ps)
        return cls(p=p, i=i, s=s, c_work=c_work, h=h)


# -- vectors ------------------------------------------------------------------

class PhiVector:
    """Row vector over one truncated valued ring."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec, entries):
        for e in entries:
            if e.spec != spec:
                raise ParamMismatch("vector entries live in different rings")
        self.spec = spec
        self.entries = tuple(entries)

    @classmethod
    def zero(cls, spec, d):
        return cls(spec, tuple(ValuedTrunc.zero(spec) for _ in range(d)))

    @property
    def dim(self):
        return len(self.entries)

    def val(self):
        return min((tiltring.val(e) for e in self.entries), default=math.inf)

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def __add__(self, other):
        return PhiVector(self.spec, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return PhiVector(self.spec, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c):
        return PhiVector(self.spec, tuple(a.scale(c) for a in self.entries))

    def frobenius(self):
        return PhiVector(self.spec, tuple(frobenius(e) for e in self.entries))

    def times_matrix(self, M):
        d = len(M)
        out = []
        for j in range(len(M[0]) if d else 0):
            acc = ValuedTrunc.zero(self.spec)
            for k in range(d):
                acc = acc + self.entries[k] * M[k][j]
            out.append(acc)
        return PhiVector(self.spec, tuple(out))

    def shift_down(self, j):
        return PhiVector(self.spec, tuple(e.shift_down(j) for e in self.entries))

    def with_cut(self, cut):
        entries = tuple(e.with_cut(cut) for e in self.entries)
        spec = entries[0].spec if entries else self.spec.with_cut(cut)
        return PhiVector(spec, entries)

    def reduce_to(self, cut):
        if Fraction(cut) > self.spec.cut:
            raise ValueError("reduce_to cannot raise the cut")
        return self.with_cut(cut)

    def _key(self):
        return (self.spec, tuple(e._key() for e in self.entries))

    def __eq__(self, other):
        if not isinstance(other, PhiVector):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_text(self):
        return " | ".join(e.terms_str() for e in self.entries) if self.entries else "()"

    def __repr__(self):
        return f"PhiVector({self.spec.describe()}; {self.to_text()})"


def _defect(x, F_t):
    return x.frobenius() - x.times_matrix(F_t) if x.dim else PhiVector(x.spec, ())


@dataclass(frozen=True)
class JcSet:
    spec: RingSpec
    cut: Fraction
    elements: tuple

    def verify(self, F_t):
        for x in self.elements:
            if not _defect(x, F_t).is_zero():
                raise StructureViolation("stored element fails the congruence")
        return True

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class LiftResult:
    solution: PhiVector
    transcript: tuple  # defect valuations per iterate, math.inf terminal
    iterations: int
    input_defect: object = None  # valuation of the caller's defect (Fraction or inf)


@dataclass(frozen=True)
class TstarResult:
    solutions: tuple
    rank: int
    lifts: tuple
    params: SolverParams
    spec: RingSpec

    def __len__(self):
        return len(self.solutions)


# -- brute-force oracle -------------------------------------------------------

def _all_ring_elements(spec):
    q = spec.params.order
    slots = spec.m_max + 1
    for assignment in product(range(q), repeat=slots):
        yield ValuedTrunc(spec, {m: c for m, c in enumerate(assignment) if c})


def enumerate_jc(module, spec, budget, cut=None, witness=None):
    """Exhaustively list solutions of phi(x) = x F at the given cut.

    The search space is the full coefficient grid, of size
    (p^f)^(d * (m_max+1)); a BudgetExceeded carrying that number is
    raised when it would exceed the budget.
    """
    if cut is not None:
        spec = spec.with_cut(cut)
    d = module.rank
    q = module.params.order
    slots = d * (spec.m_max + 1)
    size = q**slots
    if size > budget:
        raise BudgetExceeded(
            f"search space {size} exceeds budget {budget}",
            search_space=size,
            budget=budget,
        )
    if d == 0:
        empty = PhiVector(spec, ())
        return JcSet(spec=spec, cut=spec.cut, elements=(empty,))
    F_t, _ = specialize(module, spec, witness=witness)
    found = []
    coords = list(_all_ring_elements(spec))
    for combo in product(coords, repeat=d):
        x = PhiVector(spec, combo)
        if _defect(x, F_t).is_zero():
            found.append(x)
    result = JcSet(spec=spec, cut=spec.cut,
                   elements=tuple(sorted(found, key=lambda v: v._key())))
    result.verify(F_t)
    return result


# -- contraction lifting ------------------------------------------------------

def _run_contraction(F_t, V_t, x0, div_exp, params, max_iter):
    """Shared fixed-point loop; all inputs live at the working spec."""
    spec = x0.spec
    defect = _defect(x0, F_t)
    v0 = defect.val()
    transcript = [v0]
    if v0 <= params.defect_floor:
        raise PrecisionTooLow(
            f"defect valuation {v0} does not exceed a = {params.defect_floor} "
            "(ring units)",
            precondition="val(phi(x0) - x0 F) > a",
        )
    Q = defect
    y = PhiVector.zero(spec, x0.dim)
    x = x0
    for it in range(1, max_iter + 1):
        if defect.is_zero():
            return LiftResult(solution=x, transcript=tuple(transcript), iterations=it - 1)
        numerator = Q + y.frobenius()
        y = numerator.times_matrix(V_t).shift_down(div_exp)
        x = x0 + y
        defect = _defect(x, F_t)
        v = defect.val()
        transcript.append(v)
        prev = transcript[-2]
        if v != math.inf and v - prev < params.h:
            raise StructureViolation(
                f"contraction rate violated: defect went {prev} -> {v}, "
                f"gain below h = {params.h}"
            )
    raise NoConvergenceWithinCut(
        f"defect still nonzero after {max_iter} iterates at cut {spec.cut}"
    )


def _max_iterations(cut, start_val, h):
    if start_val == math.inf:
        return 1
    return int(math.ceil((cut - start_val) / h)) + 8


def contraction_lift(module, spec, x0, params=None, witness=None):
    """Lift an approximate tilt-mode solution to an exact one.

    Returns the unique solution congruent to x0 above valuation b, as a
    LiftResult whose transcript lists defect valuations per iterate.
    Internally the cut is inflated by i so that divisions by the scaling
    element (valuation i) lose nothing below the caller's cut; the
    result is reduced back and is the exact truncation of the true
    solution.
    """
    if spec.mode != tiltring.TILT:
        raise RegimeViolation("contraction_lift expects a tilt-mode ring")
    if x0.spec != spec:
        raise ParamMismatch("x0 does not live in the given ring")
    p, i = module.params.p, module.height
    if params is None:
        params = SolverParams.for_tilt(p, i, spec)
    if params.s is not None:
        raise ValueError("tilt lift given untilted params")
    if spec.cut < params.c_work:
        raise PrecisionTooLow(
            f"ring cut {spec.cut} below working cut {params.c_work}",
            precondition="cut >= c_work > a",
        )
    if witness is None:
        witness = verify_height(module)
    spec_int = spec.with_cut(spec.cut + i)
    F_t, V_t = specialize(module, spec_int, witness=witness)
    x0_int = x0.with_cut(spec_int.cut)
    div_exp = i * spec.denominator  # scaling element has valuation i
    max_iter = _max_iterations(spec_int.cut, _defect(x0_int, F_t).val(), params.h)
    result = _run_contraction(F_t, V_t, x0_int, div_exp, params, max_iter)
    solution = result.solution.reduce_to(spec.cut)
    corr = (solution - x0).val()
    if corr != math.inf and corr <= params.correction_floor:
        raise StructureViolation(
            f"correction valuation {corr} not above b = {params.correction_floor}"
        )
    return LiftResult(solution=solution, transcript=result.transcript,
                      iterations=result.iterations,
                      input_defect=result.transcript[0])


def contraction_lift_untilted(module, spec, x0, params=None, witness=None):
    """Untilted variant: solve x^p = x F over O_E modulo valuations > cut.

    Requires the regime p^s > a.  In this characteristic-p quotient the
    mixed binomial terms of (x + y)^p vanish, so the iteration is the
    same contraction as in tilt mode with the scaling element of
    valuation i/p^s.  The cut inflation is capped below 1 (the ring must
    stay a k-algebra); within that cap the returned solution is again an
    exact truncation.
    """
    if spec.mode != tiltring.UNTILTED:
        raise RegimeViolation("contraction_lift_untilted expects an untilted ring")
    if x0.spec != spec:
        raise ParamMismatch("x0 does not live in the given ring")
    p, i = module.params.p, module.height
    s = spec.level
    a = Fraction(p * i, p - 1)
    if p**s <= a:
        raise RegimeViolation(
            f"p^s = {p ** s} <= a = {a}: level s too small",
            precondition="p^s > a",
        )
    if params is None:
        params = SolverParams.for_untilted(p, i, s)
    if params.s != s:
        raise ValueError(f"params are for level {params.s}, ring has level {s}")
    if spec.cut < params.c_work * params.ring_scale:
        raise PrecisionTooLow(
            f"ring cut {spec.cut} below working cut {params.c_work * params.ring_scale}",
            precondition="cut >= c_work/p^s > a/p^s",
        )
    if witness is None:
        witness = verify_height(module)
    D = spec.denominator
    cap = Fraction(D - 1, D)
    c_int = min(spec.cut + Fraction(i, p**s), cap)
    spec_int = spec.with_cut(c_int) if c_int > spec.cut else spec
    F_t, V_t = specialize(module, spec_int, witness=witness)
    x0_int = x0.with_cut(spec_int.cut)
    input_defect = _defect(x0_int, F_t).val()
    if input_defect <= params.defect_floor:
        raise PrecisionTooLow(
            f"defect valuation {input_defect} does not exceed a/p^s = "
            f"{params.defect_floor}",
            precondition="val(x0^p - x0 F) > a/p^s",
        )
    # The cut cap may leave a band the equation cannot constrain; restart
    # from the reduction at the injectivity level b, which already pins
    # the solution down, so no unconstrained tail of x0 can survive.
    x0_clean = x0.reduce_to(_candidate_cut(spec, params)).with_cut(spec_int.cut)
    div_exp = i * (p - 1)  # theta^(i(p-1)) has valuation i/p^s
    max_iter = _max_iterations(spec_int.cut, _defect(x0_clean, F_t).val(), params.h)
    result = _run_contraction(F_t, V_t, x0_clean, div_exp, params, max_iter)
    solution = result.solution.reduce_to(spec.cut)
    corr = (solution - x0).val()
    if corr != math.inf and corr <= params.correction_floor:
        raise StructureViolation(
            f"correction valuation {corr} not above b/p^s = {params.correction_floor}"
        )
    return LiftResult(solution=solution, transcript=result.transcript,
                      iterations=result.iterations, input_defect=input_defect)


# -- the full pipeline --------------------------------------------------------

def _candidate_cut(spec, params):
    b_ring = params.correction_floor
    if b_ring > 0:
        return b_ring
    # height 0: only the constant band matters
    return Fraction(1, 2 * spec.denominator)


def _tstar_pipeline(module, spec, budget, params, lift_fn):
    """Shared driver: enumerate at the injectivity cut b, zero-extend,
    keep candidates whose defect valuation exceeds a, lift those.

    A candidate lifts exactly when it is the reduction of a true
    solution, so the lifted set is the full solution set; it is asserted
    to be an F_p-vector space of size p^r.
    """
    p = module.params.p
    witness = verify_height(module)
    if module.rank == 0:
        empty = PhiVector(spec, ())
        return TstarResult(solutions=(empty,), rank=0, lifts=(), params=params, spec=spec)
    cut_b = _candidate_cut(spec, params)
    candidates = enumerate_jc(module, spec.with_cut(cut_b), budget, witness=witness)
    F_t, _ = specialize(module, spec, witness=witness)
    solutions = []
    lifts = []
    for cand in candidates.elements:
        x0 = cand.with_cut(spec.cut)
        if _defect(x0, F_t).val() <= params.defect_floor:
            continue  # not the shadow of an exact solution
        lifted = lift_fn(module, spec, x0, params=params, witness=witness)
        solutions.append(lifted.solution)
        lifts.append(lifted)
    if len(set(solutions)) != len(solutions):
        raise StructureViolation("distinct candidates lifted to one solution")
    _assert_fp_structure(solutions, spec, p)
    count = len(solutions)
    rank = 0
    while p**rank < count:
        rank += 1
    if p**rank != count:
        raise StructureViolation(f"|solutions| = {count} is not a power of p = {p}")
    if rank > module.rank * module.params.f:
        raise StructureViolation(
            f"rank {rank} exceeds the bound d*f = {module.rank * module.params.f}"
        )
    order = sorted(range(count), key=lambda t: solutions[t]._key())
    return TstarResult(
        solutions=tuple(solutions[t] for t in order),
        rank=rank,
        lifts=tuple(lifts[t] for t in order),
        params=params,
        spec=spec,
    )


def compute_tstar(module, spec, budget, params=None):
    """All exact solutions of phi(x) = x F over the tilt ring at the cut."""
    if spec.mode != tiltring.TILT:
        raise RegimeViolation("compute_tstar expects a tilt-mode ring")
    p, i = module.params.p, module.height
    if params is None:
        params = SolverParams.for_tilt(p, i, spec)
    if spec.cut < params.c_work:
        raise PrecisionTooLow(
            f"ring cut {spec.cut} below working cut {params.c_work}",
            precondition="cut >= c_work > a",
        )
    return _tstar_pipeline(module, spec, budget, params, contraction_lift)


def compute_tstar_untilted(module, spec, budget, params=None):
    """Untilted analogue over O_E mod valuations > cut; needs p^s > a."""
    if spec.mode != tiltring.UNTILTED:
        raise RegimeViolation("compute_tstar_untilted expects an untilted ring")
    p, i = module.params.p, module.height
    s = spec.level
    a = Fraction(p * i, p - 1)
    if p**s <= a:
        raise RegimeViolation(
            f"p^s = {p ** s} <= a = {a}: level s too small",
            precondition="p^s > a",
        )
    if params is None:
        params = SolverParams.for_untilted(p, i, s)
    if spec.cut < params.c_work * params.ring_scale:
        raise PrecisionTooLow(
            f"ring cut {spec.cut} below working cut "
            f"{params.c_work * params.ring_scale}",
            precondition="cut >= c_work/p^s > a/p^s",
        )
    return _tstar_pipeline(module, spec, budget, params, contraction_lift_untilted)


def _assert_fp_structure(solutions, spec, p):
    pool = set(solutions)
    if not pool:
        raise StructureViolation("empty solution set (zero vector missing)")
    for x in solutions:
        for c in range(p):
            if x.scale(c) not in pool:
                raise StructureViolation("solution set not stable under F_p-scaling")
        for y in solutions:
            if (x + y) not in pool:
                raise StructureViolation("solution set not stable under addition")


# -- Galois structure ---------------------------------------------------------

def galois_act_jc(module, vec, power=1):
    """Hom-set Galois action of the module's stored generator.

    The action on maps twists by the module datum: the generator g with
    exponent u_G sends the value vector x to g(x H) where H is the
    matrix of g^(-1) on the basis, H = gamma_{u^(-1)}(G^(-1)).  Only the
    stored generator (and its powers, by iterating) is available; the
    matrix of an unrelated group element is not determined by G.
    """
    if power < 0:
        raise ValueError("power must be >= 0")
    for _ in range(power):
        vec = _galois_generator_step(module, vec)
    return vec


def _galois_generator_step(module, vec):
    if module.G is None:
        raise ValueError("module carries no Galois generator matrix")
    spec = vec.spec
    p = module.params.p
    u = module.u_g
    T = 1
    while T < module.trunc:
        T *= p
    u_inv = pow(u, -1, T) if T > 1 else 1
    G_inv = mat_inverse_unit(module.G)
    H = mat_map(lambda e: gamma_q(e, u_inv), G_inv)
    if spec.mode == tiltring.UNTILTED and module.params.f > 1:
        s = spec.level
        k = module.params

        def push(a):
            from .qring import QPoly
            twisted = QPoly(a.params, a.trunc,
                            {e: k.frobenius_pow(c, -s) for e, c in a.coeffs.items()})
            return tiltring.embed_q(twisted, spec)
    else:
        def push(a):
            return tiltring.embed_q(a, spec)

    H_t = mat_map(push, H)
    moved = vec.times_matrix(H_t)
    return PhiVector(spec, tuple(galois_act(e, u) for e in moved.entries))


def character_of(tstar, u):
    """Read the mod-p cyclotomic character power on a rank-1 solution set.

    Applies the coefficient Galois action to a nonzero solution and
    takes the leading-coefficient ratio; the module's Galois matrix is
    trivial mod (q-1), so the twist cannot touch the leading band and
    the ratio equals the character value.  Returns its discrete log to
    the base u mod p, an exponent mod (p-1).
    """
    solutions = tstar.solutions if isinstance(tstar, TstarResult) else tuple(tstar)
    if not solutions:
        raise RankError("empty solution set")
    spec = solutions[0].spec
    p = spec.params.p
    if len(solutions) != p:
        raise RankError(
            f"need a one-dimensional solution set (p = {p} elements), "
            f"got {len(solutions)}"
        )
    if p == 2:
        return 0  # the group F_2^x is trivial
    nonzero = sorted((x for x in solutions if not x.is_zero()), key=lambda v: v._key())
    x = nonzero[0]
    v = x.val()
    g = PhiVector(spec, tuple(galois_act(e, u) for e in x.entries))
    if g.val() != v:
        raise NonCharacter("Galois image has different valuation")
    k = spec.params
    lead = []
    for xe, ge in zip(x.entries, g.entries):
        for m, c in xe.coeffs.items():
            if spec.monomial_val(m) == v:
                lead.append((c, ge.coeffs.get(m, 0)))
        for m, c in ge.coeffs.items():
            if spec.monomial_val(m) == v and m not in xe.coeffs:
                raise NonCharacter("leading band of image not proportional")
    ratio = None
    for c, gc in lead:
        r = k.mul(gc, k.inv(c))
        if ratio is None:
            ratio = r
        elif ratio != r:
            raise NonCharacter("leading-coefficient ratio is not constant")
    if ratio is None or ratio == 0 or not k.in_prime_field(ratio):
        raise NonCharacter(f"leading ratio {ratio} is not in F_p^x")
    base = u % p
    acc = 1
    for j in range(p - 1):
        if acc == ratio:
            return j
        acc = (acc * base) % p
    raise NonCharacter(f"{ratio} is not a power of {base} mod {p}; "
                       "is u a primitive root?")
