"""Independent brute-force computations whose outputs are frozen into the C++ tests.

Run: python3 tests/oracle/oracle.py
"""
import itertools
from math import gcd

import sympy
from sympy import GF, Poly, symbols, expand

x, y, X, Y, Z = symbols("x y X Y Z")


def smallest_irreducible(p, k):
    # lexicographic from the constant term upward
    for coeffs in itertools.product(range(p), repeat=k):
        poly = Poly([1] + list(reversed(coeffs)), x, modulus=p)
        if poly.is_irreducible:
            return list(coeffs) + [1]


def quartic_vector(expr, p):
    F = Poly(expand(expr), x, y, modulus=p)
    out = []
    for a in range(5):
        for b in range(5 - a):
            c = 4 - a - b
            out.append(int(F.coeff_monomial(x**a * y**b)) % p)
    return out


def interior(verts):
    n = len(verts)
    pts = []
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    for i in range(min(xs), max(xs) + 1):
        for j in range(min(ys), max(ys) + 1):
            ok = True
            for t in range(n):
                a, b = verts[t], verts[(t + 1) % n]
                cross = (b[0] - a[0]) * (j - a[1]) - (b[1] - a[1]) * (i - a[0])
                if cross <= 0:
                    ok = False
            if ok:
                pts.append((i, j))
    return pts


def pgl3_size(q):
    return (q**3 - 1) * (q**3 - q) * (q**3 - q**2) // (q - 1)


class GFq:
    """F_{p^k} as lists of digits; independent of the C++ packing."""

    def __init__(self, p, modulus):
        self.p, self.mod, self.k = p, modulus, len(modulus) - 1
        self.elems = list(itertools.product(range(p), repeat=self.k))

    def add(self, a, b):
        return tuple((u + v) % self.p for u, v in zip(a, b))

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for t in range(k + 1):
                    prod[d - k + t] = (prod[d - k + t] - c * self.mod[t]) % p
        return tuple(prod[:k])

    def const(self, c):
        return tuple([c % self.p] + [0] * (self.k - 1))


def count_c3_over_f27():
    mod = smallest_irreducible(3, 3)
    F = GFq(3, mod)
    one = F.const(1)
    cnt = 0
    # affine: y^3 - y - (x^2+1)^2 = 0
    for xv in F.elems:
        x2 = F.add(F.mul(xv, xv), one)
        rhs = F.mul(x2, x2)
        for yv in F.elems:
            y3 = F.mul(F.mul(yv, yv), yv)
            lhs = F.add(y3, tuple((-c) % 3 for c in yv))
            if lhs == rhs:
                cnt += 1
    # infinity: Z = 0 in homogenization: Y^3 Z - Y Z^3 - (X^2+Z^2)^2 -> X^4 = 0 -> (0:1:0)
    return cnt + 1


def gf2_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a, b):
    db = b.bit_length()
    while a and a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def gf2_gcd(a, b):
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def gf2_deriv(a):
    # odd-degree terms survive, shifted down
    r, i = 0, 1
    while (a >> i):
        if (a >> i) & 1 and i % 2 == 1:
            r |= 1 << (i - 1)
        i += 1
    return r


def gf2_squarefree(a):
    return a != 0 and gf2_gcd(a, gf2_deriv(a)) == 1


def f2_substitution_failures(g):
    """Models y^2 + r y = p over F2 (r != 0, deg r <= g+1, deg p <= 2g+2) with no
    squarefree p + r t + t^2 for deg t <= g+1."""
    out = []
    for r in range(1, 1 << (g + 2)):
        for p in range(1 << (2 * g + 3)):
            if not any(gf2_squarefree(p ^ gf2_mul(r, t) ^ gf2_mul(t, t)) for t in range(1 << (g + 2))):
                out.append((r, p))
    return out


def hull(pts):
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    def half(seq):
        out = []
        for q in seq:
            while len(out) >= 2 and (out[-1][0] - out[-2][0]) * (q[1] - out[-2][1]) - (out[-1][1] - out[-2][1]) * (q[0] - out[-2][0]) <= 0:
                out.pop()
            out.append(q)
        return out
    lo, up = half(pts), half(pts[::-1])
    return lo[:-1] + up[:-1]


def f2_stage_counts(points, genus):
    """Stage counts over F2 for candidates supported on points: (total, 2-dim,
    interior ok, some edge restriction not squarefree)."""
    total = dim2 = inter = failed = 0
    for bits in range(1 << len(points)):
        total += 1
        supp = [points[t] for t in range(len(points)) if bits >> (len(points) - 1 - t) & 1]
        v = hull(supp)
        if len(v) < 3:
            continue
        dim2 += 1
        if len(interior(v)) != genus:
            continue
        inter += 1
        bad = False
        for t in range(len(v)):
            a, b = v[t], v[(t + 1) % len(v)]
            on = [pt for pt in points
                  if (b[0] - a[0]) * (pt[1] - a[1]) == (b[1] - a[1]) * (pt[0] - a[0])
                  and min(a[0], b[0]) <= pt[0] <= max(a[0], b[0])
                  and min(a[1], b[1]) <= pt[1] <= max(a[1], b[1])]
            on.sort(key=lambda pt: abs(pt[0] - a[0]) + abs(pt[1] - a[1]))
            poly = 0
            for k, pt in enumerate(on):
                if pt in supp:
                    poly |= 1 << k
            if not gf2_squarefree(poly):
                bad = True
        failed += bad
    return total, dim2, inter, failed


def quartic_points():
    return [(i, j) for j in range(5) for i in range(5 - j)]


def hyper_points(g):
    return [(i, 0) for i in range(2 * g + 3)] + [(i, 1) for i in range(g + 2)] + [(0, 2)]


def main():
    print("F27 modulus (c0..c3):", smallest_irreducible(3, 3))
    print("F8 modulus:", smallest_irreducible(2, 3))
    print("F32 modulus:", smallest_irreducible(2, 5))
    f2 = (x + y) ** 4 + (x * y) ** 2 + x * y * (x + y + 1) + (x + y + 1) ** 2
    print("f2 quartic vector:", quartic_vector(f2, 2))
    f3 = y**3 - y - (x**2 + 1) ** 2
    print("f3 quartic vector:", quartic_vector(f3, 3))
    R = sympy.resultant(y**2 - x, y, y)
    print("Res_y(y^2-x, y):", R)
    print("interior 4S:", interior([(0, 0), (4, 0), (0, 4)]))
    print("interior g2:", interior([(0, 0), (6, 0), (0, 2)]))
    print("interior g3:", interior([(0, 0), (8, 0), (0, 2)]))
    print("interior flip g3:", interior([(8, 0), (0, 0), (-4, 2)][::-1]))
    print("PGL3 sizes:", pgl3_size(2), pgl3_size(3))
    print("x^4+x+1 over F2 factors:", Poly(x**4 + x + 1, x, modulus=2).factor_list())
    print("x^7+x over F2:", Poly(x**7 + x, x, modulus=2).factor_list())
    print("C3 over F27:", count_c3_over_f27())
    L = Poly(expand((1 + 27 * x**2) ** 3), x).all_coeffs()[::-1]
    print("L coeffs:", L)
    # N_m = q^m + 1 - sum alpha^m ; alphas = +-sqrt(-27) each thrice
    for m in (1, 2, 3, 4):
        s = 6 * ((-27) ** (m // 2)) if m % 2 == 0 else 0
        print(f"N_{m} over 27^{m}:", 27**m + 1 - s)
    for g in (1, 2, 3):
        fails = f2_substitution_failures(g)
        print(f"F2 g={g} substitution failures (bit i = x^i):", [(bin(r), bin(p)) for r, p in fails])
    print("F2 quartic stage counts:", f2_stage_counts(quartic_points(), 3))
    for g in (2, 3):
        print(f"F2 hyperelliptic g={g} stage counts:", f2_stage_counts(hyper_points(g), g))


if __name__ == "__main__":
    main()
