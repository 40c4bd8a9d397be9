"""Independent symbolic expansion of the P_n kernel, the DR series and the
closed-form one/two-point functions with sympy.

Used once to freeze expected values into the C++ unit tests. Runs the
permutation sum literally with symbolic a, so it shares no code path with
the numeric-evaluation-plus-interpolation route of the library.
"""
import itertools
import sympy as sp

t = sp.Symbol("t")


def zeta(z):
    return sp.exp(z / 2) - sp.exp(-z / 2)


def det(a, b, c, d):
    return a * d - b * c


def pn(a, x):
    n = len(a)
    total = 0
    for rest in itertools.permutations(range(1, n)):
        s = (0,) + rest
        ap = [a[i] for i in s]
        xp = [x[i] for i in s]
        num = sp.Integer(1)
        for k in range(1, n - 1):
            num *= xp[k]
        for k in range(1, n):
            num *= zeta(det(sum(ap[:k]), ap[k], sum(xp[:k]), xp[k]))
        den = sp.Integer(1)
        for k in range(n - 1):
            den *= det(ap[k], ap[k + 1], xp[k], xp[k + 1])
        total += num / den
    return total


def graded(expr, x, order):
    """Homogeneous parts of expr in x up to `order` (scaling x -> t x)."""
    scaled = expr.subs({xi: t * xi for xi in x}, simultaneous=True)
    ser = sp.series(scaled, t, 0, order + 1).removeO()
    return [sp.factor(sp.cancel(sp.expand(ser.coeff(t, d)))) for d in range(order + 1)]


if __name__ == "__main__":
    X = sp.symbols("x1:5")
    A = sp.symbols("a1:5")

    # S(X)^{-1} through order 4
    z = sp.Symbol("z")
    print("1/S:", sp.series(z / zeta(z), z, 0, 5))

    # P_3 symbolic, degrees 0..3
    x3, a3 = X[:3], A[:3]
    parts = graded(pn(a3, x3), x3, 3)
    for d, p in enumerate(parts):
        print("P3 deg", d, ":", sp.expand(p))

    # P_3 at a = (1,2,5), degrees 0..3
    num = pn((1, 2, 5), x3)
    for d, p in enumerate(graded(num, x3, 3)):
        print("P3(1,2,5) deg", d, ":", sp.expand(p))

    # P_4 at a = (1,2,3,7), degrees 0..3
    x4 = X[:4]
    for d, p in enumerate(graded(pn((1, 2, 3, 7), x4), x4, 3)):
        print("P4(1,2,3,7) deg", d, ":", sp.expand(p))

    # DR series for n = 3, a = (1,1,-2) through order 3
    s = sum(x3)
    dr = pn((1, 1, -2), x3) / zeta(s)
    for d, p in enumerate(graded(dr, x3, 3)):
        print("DR(1,1,-2) deg", d, ":", sp.expand(p))

    # DR series for n = 2, a = (k,-k)
    k = sp.Symbol("k")
    x2 = X[:2]
    dr2 = pn((k, -k), x2) / zeta(sum(x2)) - 1 / sum(x2)
    for d, p in enumerate(graded(dr2, x2, 3)):
        print("DR(k,-k) deg", d, ":", sp.expand(p))

    # two-point closed form through degree 6
    x1, y1 = X[0], X[1]
    u = x1 * y1 * (x1 + y1) / 2
    ser = sum(sp.factorial(j) / sp.factorial(2 * j + 1) * u**j for j in range(6))
    two = (sp.exp((x1**3 + y1**3) / 24) * ser - 1) / (x1 + y1)
    for d, p in enumerate(graded(two, [x1, y1], 6)):
        print("F2 deg", d, ":", sp.expand(p))
