"""Independent oracles used by the test suite.

These recompute expected values by routes disjoint from the library:
dense polynomial arithmetic, Sylvester resultants over Z with a Bareiss
determinant, and direct valuation computations of conjugate differences
in explicit number rings.
"""

from fractions import Fraction


# -- dense polynomial arithmetic over F_p (schoolbook) -----------------------

def dense_mul(a, b, p, n):
    """Coefficient lists (ascending), product truncated below degree n."""
    out = [0] * n
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if i + j < n:
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def dense_pow(a, e, p, n):
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = dense_mul(out, a, p, n)
    return out


# -- integer polynomial helpers ----------------------------------------------

def poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod_monic(f, g):
    """Remainder of f by monic g, over Z (ascending coefficients)."""
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg and poly_trim(f):
        shift = len(f) - 1 - dg
        c = f[-1]
        for k in range(dg + 1):
            f[shift + k] -= c * g[k]
        poly_trim(f)
    return f


def bareiss_det(matrix):
    """Exact integer determinant (fraction-free Gaussian elimination)."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) // prev
            m[r][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f, g):
    """Res(f, g) for integer polynomials, via the Sylvester determinant."""
    f = poly_trim(list(f))
    g = poly_trim(list(g))
    df, dg = len(f) - 1, len(g) - 1
    if df < 0 or dg < 0:
        return 0
    n = df + dg
    if n == 0:
        return 1
    rows = []
    frev = f[::-1]
    grev = g[::-1]
    for r in range(dg):
        rows.append([0] * r + frev + [0] * (n - df - 1 - r))
    for r in range(df):
        rows.append([0] * r + grev + [0] * (n - dg - 1 - r))
    return bareiss_det(rows)


def vp(n, p):
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- cyclotomic filtration oracle --------------------------------------------

def cyclotomic_poly_prime_power(p, n):
    """Phi_{p^n}(X) = sum_j X^(j p^(n-1)), ascending coefficients."""
    deg = p ** (n - 1) * (p - 1)
    out = [0] * (deg + 1)
    for j in range(p):
        out[j * p ** (n - 1)] = 1
    return out


def cyclotomic_conjugate_valuations(p, n):
    """v_L(sigma_a(zeta) - zeta) for all a != 1 in (Z/p^n)^x.

    Computed as v_p of the resultant of Phi_{p^n} with X^a - X, valid
    because the extension is totally ramified, so the norm valuation is
    the extension valuation.
    """
    phi = cyclotomic_poly_prime_power(p, n)
    vals = []
    for a in range(2, p**n):
        if a % p == 0:
            continue
        g = [0] * (a + 1)
        g[a] = 1
        g[1] -= 1
        g = poly_mod_monic(g, phi)
        res = resultant(phi, g)
        vals.append(vp(abs(res), p))
    return vals


def breaks_from_valuations(total_order, vals):
    """Reconstruct shifted break data from conjugate valuations.

    The group at parameter s consists of the identity and the elements
    with valuation >= s; breaks sit at the distinct valuations.
    """
    assert total_order == len(vals) + 1
    pairs = []
    for v in sorted(set(vals)):
        order_after = 1 + sum(1 for w in vals if w > v)
        pairs.append((Fraction(v), order_after))
    return pairs


# -- Kummer-Tate filtration oracle -------------------------------------------

def kummer_tate_conjugate_valuations(p):
    """v_L(g(pi) - pi) over nontrivial g for L = Q_p(zeta_p, p^(1/p)).

    With pi = (zeta - 1)/t, t = p^(1/p), and g = (a, j) acting by
    zeta -> zeta^a, t -> zeta^j t:

        g(pi) - pi = t^(-1) [ zeta^(a-j) - zeta^(-j) - zeta + 1 ],

    a pure Z[zeta_p] element over t.  The extension L/Q_p(zeta_p) is
    totally ramified of degree p, so v_L(bracket) = p * v_F(bracket)
    with v_F computed from the norm (a resultant against Phi_p), and
    v_L(t) = p - 1.
    """
    phi = cyclotomic_poly_prime_power(p, 1)

    def zeta_pow(k):
        out = [0] * (k % (p if p > 2 else 2) + 1)
        out[-1] = 1
        return poly_mod_monic(out, phi)

    def add(f, g, sign=1):
        out = [0] * max(len(f), len(g))
        for idx, c in enumerate(f):
            out[idx] += c
        for idx, c in enumerate(g):
            out[idx] += sign * c
        return poly_trim(out)

    vals = []
    for a in range(1, p):
        for j in range(p):
            if a == 1 and j == 0:
                continue
            bracket = add(
                add(zeta_pow((a - j) % p), zeta_pow((-j) % p), sign=-1),
                add(zeta_pow(1), [1], sign=-1),
                sign=-1,
            )
            res = resultant(phi, bracket)
            v_f = vp(abs(res), p)
            vals.append(p * v_f - (p - 1))
    return vals
