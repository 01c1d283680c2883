"""Independent sympy re-derivation of the polynomial normalization pipeline.

Prints the intermediates for each polynomial in the builtin family so the
C++ tests can freeze them. Not used by the build.
"""
import sympy as sp

xi = sp.symbols("xi1:8")  # xi[0] is xi_1


def pipeline(Q):
    Qp = sp.Poly(sp.expand(Q ** 2), *xi[1:])
    plus, minus = 0, 0
    for mon, c in Qp.terms():
        t = sp.Mul(*[v ** e for v, e in zip(xi[1:], mon)])
        if c > 0:
            plus += c * t
        else:
            minus += -c * t
    P1 = sp.expand(minus + 1)
    P2 = sp.expand(plus)
    mons = set(sp.Poly(P1, *xi[1:]).monoms()) | set(sp.Poly(P2, *xi[1:]).monoms())
    T = [sp.Mul(*[v ** e for v, e in zip(xi[1:], m)]) for m in mons]
    P = sum(T)
    P1p, P2p = sp.expand(P1 + P), sp.expand(P2 + P)
    d = 1 + max(sp.Poly(t, *xi[1:]).total_degree() for t in T)
    hom = lambda p: sp.expand(sum(c * sp.Mul(*[v ** e for v, e in zip(xi[1:], m)]) * xi[0] ** (d - sum(m))
                                  for m, c in sp.Poly(p, *xi[1:]).terms()))
    P1pp, P2pp = hom(P1p), hom(P2p)
    cfrak = max(sp.Poly(P1pp, *xi).coeffs())
    return dict(P1=P1, P2=P2, P1p=P1p, P2p=P2p, d=d, Ps=P1pp, Pb=sp.expand(cfrak * P2pp), cfrak=cfrak)


family = {
    "xi2-1": xi[1] - 1,
    "1": sp.Integer(1),
    "2xi2+1": 2 * xi[1] + 1,
    "xi2*xi3-6": xi[1] * xi[2] - 6,
    "xi2^2+1": xi[1] ** 2 + 1,
}
for name, Q in family.items():
    r = pipeline(Q)
    print(name)
    for k, v in r.items():
        print("  ", k, "=", v)
    Ps, Pb = r["Ps"], r["Pb"]
    print("   Ps(1,1)=", Ps.subs({xi[0]: 1, xi[1]: 1, xi[2]: 1}), " Pb(1,1)=", Pb.subs({xi[0]: 1, xi[1]: 1, xi[2]: 1}))
    print("   Ps(1,2)=", Ps.subs({xi[0]: 1, xi[1]: 2, xi[2]: 1}))
