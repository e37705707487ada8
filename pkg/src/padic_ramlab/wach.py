"""Mod-p Wach modules: rank-d free modules over k[[q-1]]/(q-1)^N with a
semilinear Frobenius matrix F and, optionally, the matrix G of one
Galois generator acting with exponent u_G.

The defining conditions checked here:

  * height <= i: there is a matrix V with F V = (q-1)^((p-1)i) Id
    (verify_height produces V or fails);
  * the Galois action is trivial modulo (q-1): G = Id mod (q-1), and
    G commutes with Frobenius in the semilinear sense
    G * gamma(F) = F * phi(G) (verify_gamma, report-valued);
  * iterated containment: the operator (gamma - 1)^(p^s) applied to
    basis vectors lands in (q-1)^(p^s) M (gamma_power_containment).

specialize() pushes (F, V) into a truncated valued ring, giving the
matrices the fixed-point solvers consume.
"""

import json
from dataclasses import dataclass
from typing import Optional

from . import qring, tiltring
from .errors import HeightExceeded, NotDivisible, RegimeViolation, TruncationTooLow
from .gf import FiniteFieldParams
from .qring import QPoly, frobenius_q, gamma_q, invert_unit, try_divide

__all__ = [
    "WachModuleModP",
    "HeightWitness",
    "GammaReport",
    "verify_height",
    "verify_gamma",
    "gamma_power_containment",
    "specialize",
    "make_rank1_module",
    "random_module",
    "standard_rank1_gamma",
    "module_from_dict",
    "module_to_dict",
    "load_module_file",
]


# -- small matrix helpers over QPoly ----------------------------------------

def mat_identity(params, trunc, d):
    one = QPoly.one(params, trunc)
    zero = QPoly.zero(params, trunc)
    return tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))


def mat_mul(A, B):
    d = len(A)
    n = len(B[0]) if B else 0
    out = []
    for i in range(d):
        row = []
        for j in range(n):
            acc = None
            for k in range(len(B)):
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_map(fn, A):
    return tuple(tuple(fn(a) for a in row) for row in A)


def mat_det(A):
    d = len(A)
    if d == 0:
        return None
    if d == 1:
        return A[0][0]
    det = None
    for j in range(d):
        minor = tuple(row[:j] + row[j + 1:] for row in A[1:])
        term = A[0][j] * mat_det(minor)
        if j % 2:
            term = -term
        det = term if det is None else det + term
    return det


def mat_adjugate(A):
    d = len(A)
    if d == 1:
        one = QPoly.one(A[0][0].params, A[0][0].trunc)
        return ((one,),)
    adj = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = tuple(
                tuple(A[r][c] for c in range(d) if c != j)
                for r in range(d) if r != i
            )
            cof = mat_det(minor)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof  # transpose of cofactors
    return tuple(tuple(row) for row in adj)


def mat_inverse_unit(A):
    """Inverse of a matrix whose determinant is a unit of k[[x]]/(x^N)."""
    det = mat_det(A)
    det_inv = invert_unit(det)
    adj = mat_adjugate(A)
    return mat_map(lambda a: a * det_inv, adj)


# -- the module type ---------------------------------------------------------

@dataclass(frozen=True)
class WachModuleModP:
    params: FiniteFieldParams
    trunc: int
    rank: int
    height: int
    F: tuple            # rank x rank matrix of QPoly
    G: Optional[tuple] = None
    u_g: Optional[int] = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        if self.height < 0:
            raise ValueError("height must be >= 0")
        for M, name in ((self.F, "F"), (self.G, "G")):
            if M is None:
                continue
            if len(M) != self.rank or any(len(row) != self.rank for row in M):
                raise ValueError(f"{name} is not a {self.rank}x{self.rank} matrix")
            for row in M:
                for a in row:
                    if a.params != self.params or a.trunc != self.trunc:
                        raise ValueError(f"{name} entry at wrong params/truncation")
        if self.G is not None and self.u_g is None:
            raise ValueError("G given without its exponent u_g")

    @property
    def height_exponent(self):
        """(p-1)*i: the x-power divided out by the quasi-inverse."""
        return (self.params.p - 1) * self.height


@dataclass(frozen=True)
class HeightWitness:
    V: tuple
    slack: int  # truncation at which F V = x^((p-1)i) Id was verified


@dataclass(frozen=True)
class GammaReport:
    trivial_mod_q1: bool
    commutes_with_phi: bool

    @property
    def ok(self):
        return self.trivial_mod_q1 and self.commutes_with_phi


def verify_height(module):
    """Produce V with F V = (q-1)^((p-1)i) Id, or raise HeightExceeded.

    Solved by exact linear algebra: V = adj(F) x^(h - delta) w^(-1)
    where det F = x^delta w with w a unit and h = (p-1)i.  A division by
    x that fails certifies that no quasi-inverse exists.  The witness is
    certified at truncation N - max(delta, h); for the generic case
    delta <= h this is the full N - (p-1)i.
    """
    h = module.height_exponent
    N = module.trunc
    if N <= h:
        raise TruncationTooLow(
            f"truncation {N} too low: need N > (p-1)*i = {h}",
            precondition="N > (p-1)i",
        )
    if module.rank == 0:
        return HeightWitness(V=(), slack=N - h)
    det = mat_det(module.F)
    if det.is_zero():
        raise HeightExceeded(
            "det F = 0 at this truncation: Frobenius is not injective"
        )
    delta = det.valuation()
    if N <= delta:
        raise TruncationTooLow(
            f"det F has valuation {delta} >= truncation {N}",
            precondition="N > val(det F)",
        )
    w = try_divide(det, delta)          # unit, truncation N - delta
    w_inv = invert_unit(w)
    slack = N - max(delta, h)

    def build_entry(a):
        if h >= delta:
            a = a.shift(h - delta)
        else:
            try:
                a = try_divide(a, delta - h)
            except NotDivisible as exc:
                raise HeightExceeded(
                    f"height > {module.height}: adjugate entry not divisible "
                    f"by x^{delta - h}"
                ) from exc
        t = min(a.trunc, w_inv.trunc, slack)
        return (a.retrunc(t) * w_inv.retrunc(t)).retrunc(slack)

    V = mat_map(build_entry, mat_adjugate(module.F))
    # re-multiply and assert the defining identity at the certified slack
    target = QPoly.monomial(module.params, slack, h) if h < slack else \
        QPoly.zero(module.params, slack)
    F_cut = mat_map(lambda a: a.retrunc(slack), module.F)
    prod = mat_mul(F_cut, V)
    zero = QPoly.zero(module.params, slack)
    for i in range(module.rank):
        for j in range(module.rank):
            want = target if i == j else zero
            if prod[i][j] != want:
                raise HeightExceeded(
                    f"height > {module.height}: F V != x^{h} Id at entry ({i},{j})"
                )
    return HeightWitness(V=V, slack=slack)


def verify_gamma(module):
    """Check the two Galois conditions; report-valued, never raises.

    (a) G = Id mod (q-1);
    (b) G * gamma(F) = F * phi(G), the semilinear commutation of the
        generator with Frobenius.  A failure of (b) alone is reported
        separately rather than rejecting the module.
    """
    if module.G is None:
        raise ValueError("module carries no Galois generator matrix")
    d = module.rank
    N = module.trunc
    ident = mat_identity(module.params, N, d)
    trivial = all(
        module.G[i][j].constant_term() == ident[i][j].constant_term()
        for i in range(d) for j in range(d)
    )
    gamma_F = mat_map(lambda a: gamma_q(a, module.u_g), module.F)
    phi_G = mat_map(frobenius_q, module.G)
    lhs = mat_mul(module.G, gamma_F)
    rhs = mat_mul(module.F, phi_G)
    commutes = lhs == rhs
    return GammaReport(trivial_mod_q1=trivial, commutes_with_phi=commutes)


def _gamma_minus_one(module, vec):
    """One application of (gamma - 1) to a coefficient column vector."""
    d = module.rank
    gv = [gamma_q(a, module.u_g) for a in vec]
    out = []
    for i in range(d):
        acc = None
        for k in range(d):
            term = module.G[i][k] * gv[k]
            acc = term if acc is None else acc + term
        out.append(acc - vec[i])
    return out


def gamma_power_containment(module, s):
    """Check (gamma - 1)^(p^s) e_j is divisible by (q-1)^(p^s) for all j.

    The operator power is computed directly (on p-torsion it coincides
    with gamma^(p^s) - 1), avoiding huge group exponents.  Each
    iteration consumes one factor q(q-1)^p, so the truncation floor is
    N > p^s + (p-1)i; below it a failure could be a truncation artifact.
    For s >= 1 the iteration step needs the generator exponent to lie
    in 1 + pZ (the standard wild generator); other units only satisfy
    the s = 0 statement.
    """
    if module.G is None:
        raise ValueError("module carries no Galois generator matrix")
    p = module.params.p
    power = p**s
    if module.trunc <= power + module.height_exponent:
        raise TruncationTooLow(
            f"need N > p^s + (p-1)i = {power + module.height_exponent}, "
            f"have N = {module.trunc}",
            precondition="N > p^s + (p-1)i",
        )
    if s >= 1 and module.u_g % p != 1:
        raise RegimeViolation(
            f"generator exponent {module.u_g} is not 1 mod p; the iterated "
            "containment only applies to the wild generator",
            precondition="u_G = 1 (mod p) for s >= 1",
        )
    d = module.rank
    N = module.trunc
    for j in range(d):
        vec = [
            QPoly.one(module.params, N) if i == j else QPoly.zero(module.params, N)
            for i in range(d)
        ]
        for _ in range(power):
            vec = _gamma_minus_one(module, vec)
        for a in vec:
            v = a.valuation()
            if v is not None and v < power:
                return False
    return True


def specialize(module, spec, witness=None):
    """Push (F, V) into the valued ring given by spec.

    Entries go through embed_q; in untilted mode at level s the
    coefficients are first twisted by the inverse s-th Frobenius of k
    (trivial for f = 1).  The identity F_t V_t = (image of q-1)^((p-1)i)
    is re-asserted at the target cut.
    """
    if witness is None:
        witness = verify_height(module)
    k = module.params

    if spec.mode == tiltring.UNTILTED and k.f > 1:
        s = spec.level

        def twist(a):
            return QPoly(a.params, a.trunc,
                         {e: k.frobenius_pow(c, -s) for e, c in a.coeffs.items()})
    else:
        def twist(a):
            return a

    def push(a):
        return tiltring.embed_q(twist(a), spec)

    F_t = mat_map(push, module.F)
    V_t = mat_map(push, witness.V)
    d = module.rank
    target_idx = module.height_exponent * spec.embed_exponent
    target = (
        tiltring.ValuedTrunc(spec, {target_idx: 1})
        if target_idx <= spec.m_max
        else tiltring.ValuedTrunc.zero(spec)
    )
    zero = tiltring.ValuedTrunc.zero(spec)
    prod = _vmat_mul(F_t, V_t, spec)
    for i in range(d):
        for j in range(d):
            want = target if i == j else zero
            if prod[i][j] != want:
                raise HeightExceeded(
                    f"specialized F V != (image of q-1)^((p-1)i) at ({i},{j})"
                )
    return F_t, V_t


def _vmat_mul(A, B, spec):
    d = len(A)
    if d == 0:
        return ()
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = tiltring.ValuedTrunc.zero(spec)
            for k in range(d):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


# -- standard rank-1 family ---------------------------------------------------

def standard_rank1_gamma(params, trunc, i, u):
    """Generator matrix entry for the rank-1 module with F = (q-1)^((p-1)i).

    Solves g / phi(g) = ((q-1)/(q^u-1))^((p-1)i) by the convergent
    product g = prod_n phi^n(rho) with rho = ([u]_q / u)^(-(p-1)i),
    where [u]_q = (q^u-1)/(q-1) is the q-analogue of u.  Each factor is
    1 mod (q-1)^(p^n), so finitely many factors matter at truncation.
    """
    k = params
    p = k.p
    h = (p - 1) * i
    # [u]_q = ((1+x)^u - 1)/x, a unit with constant term u
    q_analog = try_divide(qring.one_plus_x_pow(params, trunc + 1, u), 1)
    rho = invert_unit(q_analog**h).scale(k.pow(u % p, h))
    g = QPoly.one(params, trunc)
    factor = rho
    power = 1
    while power < trunc:
        g = g * factor
        factor = frobenius_q(factor)
        power *= p
    return g


def random_module(rng, p, rank, height, trunc, f=1, u=None):
    """A random module passing verification, for randomized checks.

    F = L diag(x^(h_1), .., x^(h_d)) U with unit-triangular L, U and
    h_j <= (p-1)*height, so the claimed height bound holds.  G is
    Id + x * (random matrix), trivial mod (q-1) by construction; the
    generator exponent defaults to a random element of 1 + pZ so the
    iterated containment bounds apply.
    """
    params = FiniteFieldParams(p, f)

    def rand_poly(min_exp=0):
        coeffs = {}
        for e in range(min_exp, trunc):
            if rng.random() < 0.35:
                c = rng.randrange(params.order)
                if c:
                    coeffs[e] = c
        return QPoly(params, trunc, coeffs)

    d = rank
    ident = mat_identity(params, trunc, d)
    L = [list(row) for row in ident]
    U = [list(row) for row in ident]
    for r in range(d):
        for c in range(d):
            if r > c:
                L[r][c] = rand_poly()
            elif r < c:
                U[r][c] = rand_poly()
    hmax = (p - 1) * height
    diag = tuple(
        tuple(
            QPoly.monomial(params, trunc, rng.randint(0, hmax)) if r == c
            else QPoly.zero(params, trunc)
            for c in range(d)
        )
        for r in range(d)
    )
    F = mat_mul(mat_mul(tuple(map(tuple, L)), diag), tuple(map(tuple, U)))
    G = tuple(
        tuple(ident[r][c] + rand_poly(min_exp=1) for c in range(d))
        for r in range(d)
    )
    u_g = u if u is not None else 1 + p * rng.randint(1, 4)
    return WachModuleModP(params=params, trunc=trunc, rank=d, height=height,
                          F=F, G=G, u_g=u_g)


def make_rank1_module(p, i, f=1, trunc=None, with_gamma=False, u=None):
    """The height-i rank-1 module with F = (q-1)^((p-1)i).

    Default truncation leaves room for solver specialization at the
    inflated working cut (a + i plus margin in tilt depth 1).
    """
    params = FiniteFieldParams(p, f)
    if trunc is None:
        trunc = (4 * p - 3) * i + 12
    F = ((QPoly.monomial(params, trunc, (p - 1) * i),),) if i > 0 else (
        (QPoly.one(params, trunc),),
    )
    G = None
    u_g = None
    if with_gamma:
        u_g = u if u is not None else p + 1
        G = ((standard_rank1_gamma(params, trunc, i, u_g),),)
    return WachModuleModP(params=params, trunc=trunc, rank=1, height=i,
                          F=F, G=G, u_g=u_g)


# -- module files -------------------------------------------------------------

def module_to_dict(module, name=None, description=None):
    doc = {
        "p": module.params.p,
        "f": module.params.f,
        "N": module.trunc,
        "d": module.rank,
        "i": module.height,
        "F": [[a.terms_str() for a in row] for row in module.F],
    }
    if module.G is not None:
        doc["G"] = [[a.terms_str() for a in row] for row in module.G]
        doc["uG"] = module.u_g
    if name:
        doc["name"] = name
    if description:
        doc["description"] = description
    return doc


def module_from_dict(doc):
    params = FiniteFieldParams(int(doc["p"]), int(doc.get("f", 1)))
    trunc = int(doc["N"])
    d = int(doc["d"])
    F = tuple(
        tuple(qring.parse_terms(cell, params, trunc) for cell in row)
        for row in doc["F"]
    )
    G = None
    u_g = None
    if "G" in doc:
        G = tuple(
            tuple(qring.parse_terms(cell, params, trunc) for cell in row)
            for row in doc["G"]
        )
        u_g = int(doc["uG"])
    return WachModuleModP(params=params, trunc=trunc, rank=d,
                          height=int(doc["i"]), F=F, G=G, u_g=u_g)


def load_module_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return module_from_dict(json.load(fh))
