"""The intermediate-series modules: actions, the sign anomaly, and the
window-certified classification data.

Run with:  python demos/03_weight_modules_and_classification.py
"""

from fractions import Fraction

from nscheck import (
    AlgebraMode,
    B,
    BasisKey,
    G,
    L,
    LAMBDA,
    ModuleVector,
    SignConvention,
    Window,
    act,
    classification_table,
    find_intertwiner,
    gamma,
    gamma_plus,
    gamma_prime,
    half,
    minimal_annihilator,
    module_axiom_residual,
    parity_change,
    reachability_closure,
    simplicity_verdict,
)

F = Fraction
W = Window(-10, 10, 3)


def show(label, value):
    print(f"  {label:<44} {value}")


print("Generator actions on gamma(l, b) with formal parameters:")
m = gamma(LAMBDA, B)
show("L(1) . t^2 =", act(L(1), ModuleVector.basis(BasisKey(2, 0)), m).render())
show("G(1/2) . t^0 =", act(G(half(1)), ModuleVector.basis(BasisKey(0, 0)), m).render())
show("G(1/2) . t^0 xi =", act(G(half(1)), ModuleVector.basis(BasisKey(0, 1)), m).render())

print()
print("The printed odd-action signs fail the odd-odd module axiom;")
print("the corrected convention repairs it:")
printed = gamma(LAMBDA, B, convention=SignConvention.PAPER_PRINTED)
r = module_axiom_residual(G(half(1)), G(half(-1)), BasisKey(2, 0), printed)
show("printed residual at t^2:", r.render())
r = module_axiom_residual(G(half(1)), G(half(-1)), BasisKey(2, 0), m)
show("corrected residual at t^2:", r.render())

print()
print("Reachability closures certify submodules on a finite window:")
m00 = gamma(0, 0)
c = reachability_closure(m00, BasisKey(0, 0), W, 3)
show("gamma(0,0), seed t^0:", "{" + ", ".join(k.render() for k in sorted(c)) + "}")
mhalf = gamma(0, F(1, 2))
c = reachability_closure(mhalf, BasisKey(2, 0), W, 3)
show("gamma(0,1/2), seed t^2:", f"{len(c)} keys, t^-1 xi unreachable")

print()
print("Simplicity verdicts across the parameter space:")
for lam, b in [(F(1, 3), F(1, 4)), (0, 0), (0, F(1, 2)), (0, 1)]:
    v = simplicity_verdict(gamma(F(lam), F(b)), W, 3)
    show(f"gamma({lam},{b}) over the centered algebra:", v.kind)
v = simplicity_verdict(gamma(F(1, 3), F(1, 4), AlgebraMode.KPLUS), W, 3)
show("gamma(1/3,1/4) over the contact subalgebra:", v.kind)
v = simplicity_verdict(gamma_plus(F(1, 4)), W, 3)
show("gamma+(0,1/4) with its jet structure:", v.kind)

print()
print("Isomorphism witnesses (per-key scalings found exactly):")
w1 = find_intertwiner(gamma(F(1, 3), F(1, 4)), gamma(F(4, 3), F(1, 4)), W, 3)
show("gamma(1/3,1/4) ~ gamma(4/3,1/4):", w1.parity)
w2 = find_intertwiner(gamma(F(1, 3), F(1, 2)), gamma(F(4, 3), 0), W, 3)
show("gamma(1/3,1/2) ~ gamma(4/3,0):", w2.parity)
w3 = find_intertwiner(gamma_prime(0, 0), parity_change(gamma_prime(0, F(1, 2))), W, 3)
show("gamma'(0,0) ~ pi(gamma'(0,1/2)):", w3.parity)
w4 = find_intertwiner(gamma(F(1, 3), 0), gamma(F(1, 3), F(1, 4)), W, 3)
show("gamma(1/3,0) ~ gamma(1/3,1/4):", "none" if w4 is None else w4.parity)

print()
print("Minimal annihilator order (quadratic operator sweeps):")
mnum = gamma(F(1, 3), F(1, 4))
order, rep = minimal_annihilator(mnum, Window(-8, 8, 0), 6)
show("gamma(1/3,1/4):", f"m = {order}")
show("minimality evidence:", rep.params.split("minimality: ")[1])

print()
print("Classification table:")
for row in classification_table():
    cert = f"  [{row['certificate']}]" if row["certificate"] else ""
    print(f"  {row['algebra']:>5} | {row['family']:<44} | {row['conditions']}{cert}")
