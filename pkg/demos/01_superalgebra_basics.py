"""Tour of the basic layer: exact scalars, brackets, and the two actions.

Run with:  python demos/01_superalgebra_basics.py
"""

from fractions import Fraction

from nscheck import (
    AElement,
    AlgebraMode,
    B,
    LAMBDA,
    LieElement,
    G,
    L,
    bracket,
    compatibility_residual,
    half,
    k_action_on_A,
    A_action_on_k,
)

KHAT = AlgebraMode.KHAT
K = AlgebraMode.K


def show(label, value):
    print(f"  {label:<38} {value}")


print("Exact scalars live in the rational-function field Q(l, b):")
show("(l^2 - b^2)/(l - b) =", ((LAMBDA * LAMBDA - B * B) / (LAMBDA - B)).render())
show("(l + b) at l=1/3, b=1/4 =", (LAMBDA + B).substitute(Fraction(1, 3), Fraction(1, 4)).render())

print()
print("Brackets of the centered superalgebra, cocycle terms included:")
lie = lambda g: LieElement.basis(g, KHAT)
show("[L(2), L(3)] =", bracket(lie(L(2)), lie(L(3))).render())
show("[L(2), L(-2)] =", bracket(lie(L(2)), lie(L(-2))).render())
show("[G(1/2), G(-1/2)] =", bracket(lie(G(half(1))), lie(G(half(-1)))).render())
show("[G(3/2), G(-3/2)] =", bracket(lie(G(half(3))), lie(G(half(-3)))).render())

print()
print("The superderivation action on the coefficient algebra:")
lk = lambda g: LieElement.basis(g, K)
show("L(1) . t^2 =", k_action_on_A(lk(L(1)), AElement.monomial(2)).render())
show("G(1/2) . xi =", k_action_on_A(lk(G(half(1))), AElement.monomial(0, 1)).render())

print()
print("The module action of the coefficient algebra on the Lie algebra:")
show("t^2 L(3) =", A_action_on_k(AElement.monomial(2), lk(L(3))).render())
show("xi L(3) =", A_action_on_k(AElement.monomial(0, 1), lk(L(3))).render())
show("xi G(1/2) =", A_action_on_k(AElement.monomial(0, 1), lk(G(half(1)))).render())

print()
print("Compatibility of the two structures (residuals are identically zero):")
for v, a, x in [(L(2), (1, 0), L(-1)), (G(half(3)), (0, 1), G(half(-1)))]:
    r = compatibility_residual(lk(v), AElement.monomial(*a), lk(x))
    mono = AElement.monomial(*a).render()
    show(f"residual({v.render()}, {mono}, {x.render()}) =", r.render())
