"""Verification suites and classification engines.

Every check produces a :class:`CheckReport` carrying a name, the identity
being verified, a pass/fail/info status and, on failure, a rendered
residual witness.  Reports are deterministic: fixed sweep orders, fixed
name ordering, canonical scalar rendering.

Module-level verdicts (simplicity, isomorphism, annihilator order) are
window-certified: they are exact statements about the margin-restricted
interior of a finite key window, pinned by the acceptance grid to the
global classification facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .algebra import (
    AElement,
    AMonomial,
    AlgebraMode,
    C,
    G,
    Gen,
    HalfInt,
    L,
    LieElement,
    bracket,
    compatibility_residual,
    k_action_on_A,
)
from .enveloping import (
    SmashElement,
    SmashMode,
    TElementLabel,
    g_prime,
    gl_sum,
    l_prime,
    omega,
    smash_bracket,
    verify_reconstruction,
)
from .modules import (
    BasisKey,
    Family,
    GammaModule,
    ModuleError,
    ModuleVector,
    Window,
    act,
    gamma,
)
from .scalars import B, LAMBDA, Scalar


class AnnihilatorBoundError(RuntimeError):
    """No annihilator order within the allowed bound."""


@dataclass(frozen=True)
class CheckReport:
    """Named verification outcome.  ``fail`` always carries a witness."""

    name: str
    paper_anchor: str
    status: str
    params: str = ""
    residual_witness: str | None = None

    def __post_init__(self):
        if self.status not in ("pass", "fail", "info"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.residual_witness is None:
            raise ValueError("fail reports must carry a residual witness")

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "params": self.params,
        }
        if self.residual_witness is not None:
            d["witness"] = self.residual_witness
        return d


@dataclass(frozen=True)
class EdgeRecord:
    """One nonzero action edge of the weight digraph."""

    source: BasisKey
    target: BasisKey
    generator: str
    coefficient: Scalar


@dataclass(frozen=True)
class Verdict:
    """Simplicity verdict over a window interior."""

    kind: str  # simple | reducible | inconclusive
    window: Window
    gen_range: int
    certificate: tuple[BasisKey, ...] | None = None
    locus: dict | None = None
    detail: str = ""


def sort_reports(reports) -> list[CheckReport]:
    return sorted(reports, key=lambda r: r.name)


def _ok(name, anchor, params, residual_render: str | None) -> CheckReport:
    if residual_render is None:
        return CheckReport(name, anchor, "pass", params)
    return CheckReport(name, anchor, "fail", params, residual_render)


# ---------------------------------------------------------------------------
# structural suites: Jacobi, compatibility, derivation action
# ---------------------------------------------------------------------------

JACOBI_ANCHOR = "[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] with the 2-cocycle terms"
COMPAT_ANCHOR = "v(a x) - (-1)^{|v||a|} a(v x) = (v o a) x"
ACTION_ANCHOR = "x o (y o a) - (-1)^{|x||y|} y o (x o a) = [x,y] o a"


def khat_basis(index_range: int, with_center: bool = True) -> list[Gen]:
    """Basis generators with |index| bounded, half-integers included."""
    gens: list[Gen] = [C] if with_center else []
    gens += [L(n) for n in range(-index_range, index_range + 1)]
    gens += [G(Fraction(d, 2)) for d in range(-2 * index_range + 1, 2 * index_range, 2)]
    return gens


def jacobi_residual(x: Gen, y: Gen, z: Gen, mode: AlgebraMode = AlgebraMode.KHAT) -> LieElement:
    ex, ey, ez = (LieElement.basis(g, mode) for g in (x, y, z))
    lhs = bracket(ex, bracket(ey, ez))
    rhs = bracket(bracket(ex, ey), ez)
    inner = bracket(ey, bracket(ex, ez))
    if x.parity and y.parity:
        rhs = rhs - inner
    else:
        rhs = rhs + inner
    return lhs - rhs


def _triple_family(x: Gen, y: Gen, z: Gen) -> str:
    kinds = [g.kind for g in (x, y, z)]
    if "C" in kinds:
        return "center"
    return "".join(sorted(kinds))


def verify_jacobi(index_range: int, family: str | None = None) -> CheckReport:
    """Graded Jacobi residual over all homogeneous basis triples with
    |index| <= index_range, central contributions included."""
    if index_range < 2:
        raise ValueError("index_range must be at least 2")
    gens = khat_basis(index_range)
    witness = None
    culprit = ""
    for x, y, z in product(gens, repeat=3):
        if family is not None and _triple_family(x, y, z) != family:
            continue
        r = jacobi_residual(x, y, z)
        if not r.is_zero():
            witness = r.render()
            culprit = f" at ({x.render()},{y.render()},{z.render()})"
            break
    name = f"jacobi/{family or 'all'}/range={index_range}"
    return _ok(name, JACOBI_ANCHOR, f"range={index_range}{culprit}", witness)


JACOBI_FAMILIES = ("LLL", "LLG", "LGG", "GGG", "center")


def jacobi_family_reports(index_range: int) -> list[CheckReport]:
    return [verify_jacobi(index_range, fam) for fam in JACOBI_FAMILIES]


def compat_reports(index_range: int) -> list[CheckReport]:
    """The eight compatibility displays tying brackets, the derivation
    action and the module action of the coefficient algebra."""
    mode = AlgebraMode.K
    out = []
    vgens = [("L", [L(m) for m in range(-index_range, index_range + 1)]),
             ("G", [G(Fraction(d, 2)) for d in range(-2 * index_range + 1, 2 * index_range, 2)])]
    for vkind, vs in vgens:
        for aeps, aname in ((0, "t"), (1, "t*xi")):
            for xkind, xs in vgens:
                witness = None
                culprit = ""
                for v in vs:
                    for i in range(-index_range, index_range + 1):
                        a = AElement.monomial(i, aeps)
                        for x in xs:
                            r = compatibility_residual(
                                LieElement.basis(v, mode), a, LieElement.basis(x, mode)
                            )
                            if not r.is_zero():
                                witness = r.render()
                                culprit = f" at ({v.render()},{a.render()},{x.render()})"
                                break
                        if witness:
                            break
                    if witness:
                        break
                name = f"compat/({vkind},{aname},{xkind})"
                out.append(_ok(name, COMPAT_ANCHOR, f"range={index_range}{culprit}", witness))
    return out


def action_rep_reports(index_range: int) -> list[CheckReport]:
    """The derivation action is a representation on the coefficient algebra."""
    mode = AlgebraMode.K
    gens = khat_basis(index_range, with_center=False)
    out = []
    for xkind, ykind in (("L", "L"), ("L", "G"), ("G", "L"), ("G", "G")):
        witness = None
        culprit = ""
        for x in gens:
            if x.kind != xkind:
                continue
            for y in gens:
                if y.kind != ykind:
                    continue
                ex, ey = LieElement.basis(x, mode), LieElement.basis(y, mode)
                for i in range(-index_range, index_range + 1):
                    for eps in (0, 1):
                        a = AElement.monomial(i, eps)
                        r = k_action_on_A(ex, k_action_on_A(ey, a))
                        swap = k_action_on_A(ey, k_action_on_A(ex, a))
                        r = r + swap if (x.parity and y.parity) else r - swap
                        r = r - k_action_on_A(bracket(ex, ey), a)
                        if not r.is_zero():
                            witness = r.render()
                            culprit = f" at ({x.render()},{y.render()},{a.render()})"
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        out.append(_ok(f"action-rep/({xkind},{ykind})", ACTION_ANCHOR,
                       f"range={index_range}{culprit}", witness))
    return out


# ---------------------------------------------------------------------------
# smash-algebra identity suites
# ---------------------------------------------------------------------------

RECON_L_ANCHOR = ("sum_k (-1)^k binom(n+1,k+1) t^{n-k}(L'_k - (k+1)/2 xi G'_{k-1/2})"
                  " + t^{n+1} L_{-1} = L_n")
RECON_G_ANCHOR = "sum_k (-1)^k binom(n,k) t^{n-k}(G'_{k-1/2} - 2 xi L'_{k-1}) = G_{n-1/2}"
CENTRALIZER_ANCHOR = "[x, A] = [x, G_{-1/2}] = 0 for x in the primed family"
PSI_LL_ANCHOR = "[L'_m, L'_n] = (n-m) L'_{m+n}"
PSI_LG_ANCHOR = "[L'_m, G'_{n+1/2}] = (n + 1/2 - m/2) G'_{m+n+1/2}"
PSI_GG_ANCHOR = "[G'_r, G'_s] = 2 L'_{r+s}"


def reconstruction_reports(max_n: int, mutate_extension: bool = False) -> list[CheckReport]:
    out = []
    for n in range(max_n + 1):
        res_l, res_g = verify_reconstruction(n, mutate_extension=mutate_extension)
        wit = None
        if not res_l.is_zero():
            wit = res_l.render()
        elif not res_g.is_zero():
            wit = res_g.render()
        out.append(_ok(f"reconstruction/n={n}", f"{RECON_L_ANCHOR} ; {RECON_G_ANCHOR}",
                       f"n={n}; extension L'(-1) = {'+' if mutate_extension else '-'}L(-1)", wit))
    return out


def centralizer_reports(max_n: int, max_k: int) -> list[CheckReport]:
    """Brackets of the primed family with the coefficient algebra and with
    G_{-1/2} vanish in smash normal form.

    A-brackets run over the centralizer range (L'(n) for n >= 0, G'(n-1/2)
    for n >= 1); the G_{-1/2} brackets extend to the boundary elements
    L'(-1) and G'(-1/2), where they also vanish.
    """
    mode = SmashMode.AK
    gm = SmashElement.gen(G(Fraction(-1, 2)), mode)
    out = []

    def a_bracket_witness(x: SmashElement) -> tuple[str | None, str]:
        for k in range(-max_k, max_k + 1):
            for eps in (0, 1):
                r = smash_bracket(x, SmashElement.amon(k, eps, mode))
                if not r.is_zero():
                    return r.render(), f" at t^{k}{'*xi' if eps else ''}"
        return None, ""

    a_labels = [TElementLabel("L", n) for n in range(0, max_n + 1)]
    a_labels += [TElementLabel("G", n) for n in range(1, max_n + 1)]
    for label in a_labels:
        wit, where = a_bracket_witness(label.build(mode))
        out.append(_ok(f"centralizer/{label.render()}/A", CENTRALIZER_ANCHOR,
                       f"n={label.n}; |k|<={max_k}{where}", wit))
    g_labels = [TElementLabel("L", n) for n in range(-1, max_n + 1)]
    g_labels += [TElementLabel("G", n) for n in range(0, max_n + 1)]
    for label in g_labels:
        r = smash_bracket(gm, label.build(mode))
        out.append(_ok(f"centralizer/{label.render()}/G(-1/2)", CENTRALIZER_ANCHOR,
                       f"n={label.n}", None if r.is_zero() else r.render()))
    return out


def psi_table_reports(max_index: int, mutate_lg_entry: bool = False) -> list[CheckReport]:
    """The bracket table of the primed family, verified by normal-form
    computation.  ``mutate_lg_entry`` corrupts the (m, n) = (0, 1)
    coefficient 3/2 -> 1 to demonstrate failure detection."""
    mode = SmashMode.AK
    out = []
    for m in range(0, max_index + 1):
        for n in range(0, max_index + 1):
            r = smash_bracket(l_prime(m, mode), l_prime(n, mode))
            r = r - l_prime(m + n, mode).scale(Fraction(n - m))
            out.append(_ok(f"psi-table/LL/m={m}/n={n}", PSI_LL_ANCHOR, f"m={m}, n={n}",
                           None if r.is_zero() else r.render()))
    for m in range(0, max_index + 1):
        for n in range(0, max_index):
            coeff = Fraction(2 * n + 1 - m, 2)
            if mutate_lg_entry and (m, n) == (0, 1):
                coeff = Fraction(1)
            r = smash_bracket(l_prime(m, mode), g_prime(n + 1, mode))
            r = r - g_prime(m + n + 1, mode).scale(coeff)
            out.append(_ok(f"psi-table/LG/m={m}/n={n}", PSI_LG_ANCHOR, f"m={m}, n={n}",
                           None if r.is_zero() else r.render()))
    for n1 in range(0, max_index):
        for n2 in range(0, max_index):
            r = smash_bracket(g_prime(n1 + 1, mode), g_prime(n2 + 1, mode))
            r = r - l_prime(n1 + n2 + 1, mode).scale(Fraction(2))
            out.append(_ok(f"psi-table/GG/r={2*n1+1}/2/s={2*n2+1}/2", PSI_GG_ANCHOR,
                           f"r={n1}+1/2, s={n2}+1/2",
                           None if r.is_zero() else r.render()))
    return out


# ---------------------------------------------------------------------------
# annihilating operators and consequence chains on module windows
# ---------------------------------------------------------------------------

OMEGA_ANCHOR = "Omega^{(m)}_{k,s} = sum_i (-1)^i binom(m,i) L_{k-i} L_{s+i} annihilates the window"
GL_ANCHOR = "sum_i (-1)^i binom(m,i) G_{k-i} L_{p+i} annihilates the window"
CHAIN_TL_ANCHOR = "sum_i (-1)^i binom(m+2,i) t^{a-i} . L_{s+i} annihilates the window"
CHAIN_TG_ANCHOR = "sum_i (-1)^i binom(m+3,i) t^{a-i} . G_{p+i} annihilates the window"
CHAIN_GL_ANCHOR = "sum_i (-1)^i binom(m+2,i) G_{q-i} L_{p+i} annihilates the window"


def window_keys(mod: GammaModule, window: Window, interior_only: bool = False) -> list[BasisKey]:
    rng = window.interior() if interior_only else window.full()
    return [BasisKey(k, eps) for k in rng for eps in (0, 1) if mod.admissible(BasisKey(k, eps))]


def _smash_mode_for(mod: GammaModule) -> SmashMode:
    if mod.algebra_mode is AlgebraMode.KPLUS:
        return SmashMode.APKP
    if mod.algebra_mode is AlgebraMode.KHAT:
        return SmashMode.U
    return SmashMode.AK


def _annihilates(elem: SmashElement, keys, mod: GammaModule):
    """First nonzero image, or None when the operator kills every key."""
    for key in keys:
        img = act(elem, ModuleVector.basis(key), mod)
        if not img.is_zero():
            return key, img
    return None


def a_l_chain(a: int, s: int, order: int, mode: SmashMode) -> SmashElement:
    terms = SmashElement.zero(mode)
    for i in range(order + 1):
        terms = terms + SmashElement.term(
            AMonomial(a - i, 0), (L(s + i),), mode, Fraction((-1) ** i * comb(order, i))
        )
    return terms


def a_g_chain(a: int, p_doubled: int, order: int, mode: SmashMode) -> SmashElement:
    terms = SmashElement.zero(mode)
    for i in range(order + 1):
        terms = terms + SmashElement.term(
            AMonomial(a - i, 0), (G(Fraction(p_doubled + 2 * i, 2)),), mode,
            Fraction((-1) ** i * comb(order, i)),
        )
    return terms


def minimal_annihilator(
    mod: GammaModule, window: Window, max_m: int, sweep: int = 2
) -> tuple[int, CheckReport]:
    """Smallest m <= max_m whose quadratic operators kill every window
    vector for every sweep index, plus the odd companion sums at that m.

    In contact mode the sweeps are index-shifted so that every generator
    stays within bounds.
    """
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    kplus = mod.algebra_mode is AlgebraMode.KPLUS
    smode = _smash_mode_for(mod)
    keys = window_keys(mod, window)

    def omega_pairs(m: int):
        if kplus:
            return [(k + m - 1, s - 1) for k in range(0, sweep + 1) for s in range(0, sweep + 1)]
        return list(product(range(-sweep, sweep + 1), repeat=2))

    def omega_witness(m: int):
        for k, s in omega_pairs(m):
            hit = _annihilates(omega(k, s, m, smode), keys, mod)
            if hit is not None:
                return (k, s), hit
        return None

    found = None
    for m in range(1, max_m + 1):
        if omega_witness(m) is None:
            found = m
            break
    if found is None:
        raise AnnihilatorBoundError(
            f"annihilator order exceeds bound {max_m} on {mod.descriptor()}"
        )

    params = [f"module={mod.descriptor()}", f"window={window.render()}",
              f"sweep={sweep}", f"m={found}"]
    if found > 1:
        (k, s), (key, img) = omega_witness(found - 1)
        params.append(
            f"minimality: Omega^({found - 1})_{{{k},{s}}} {key.render()} = {img.render()}"
        )
    else:
        params.append("minimality: m=1 is the least admissible order")

    # odd companion sums at the discovered order
    witness = None
    if kplus:
        gl_args = [(HalfInt(2 * (found - 1) + 2 * j + 1), p - 1)
                   for j in range(0, sweep + 1) for p in range(0, sweep + 1)]
    else:
        gl_args = [(HalfInt(2 * j + 1), p)
                   for j in range(-sweep, sweep + 1) for p in range(-sweep, sweep + 1)]
    for q, p in gl_args:
        hit = _annihilates(gl_sum(q, p, found, smode), keys, mod)
        if hit is not None:
            witness = (f"G-L sum m={found}, k={q.render()}, p={p} "
                       f"on {hit[0].render()}: {hit[1].render()}")
            break
    report = _ok(f"annihilator/{mod.descriptor()}", f"{OMEGA_ANCHOR} ; {GL_ANCHOR}",
                 "; ".join(params), witness)
    return found, report


def chain_reports(
    mod: GammaModule, m: int, window: Window, sweep: int = 2, algebra_level: bool = False
) -> list[CheckReport]:
    """The three consequence chains evaluated as operators on the window.

    With ``algebra_level`` also reports (status info) whether each chain
    vanishes identically in the smash algebra; it does not, which is why
    the module-level check is the normative one.
    """
    kplus = mod.algebra_mode is AlgebraMode.KPLUS
    smode = SmashMode.APKP if kplus else SmashMode.AK
    keys = window_keys(mod, window)
    out = []

    def sweep_range(lo_shift: int = 0):
        if kplus:
            return range(lo_shift, lo_shift + sweep + 1)
        return range(-sweep, sweep + 1)

    # t-L chain at order m+2
    order = m + 2
    wit = None
    where = ""
    for a in (sweep_range(order) if kplus else sweep_range()):
        for s in (sweep_range(-1) if kplus else sweep_range()):
            hit = _annihilates(a_l_chain(a, s, order, smode), keys, mod)
            if hit is not None:
                wit = hit[1].render()
                where = f" at a={a}, s={s}, {hit[0].render()}"
                break
        if wit:
            break
    out.append(_ok("chain/t-L", CHAIN_TL_ANCHOR,
                   f"module={mod.descriptor()}; order={order}; sweep={sweep}{where}", wit))

    # t-G chain at order m+3
    order = m + 3
    wit = None
    where = ""
    for a in (sweep_range(order) if kplus else sweep_range()):
        for j in (sweep_range() if kplus else sweep_range()):
            p_doubled = 2 * j + 1
            hit = _annihilates(a_g_chain(a, p_doubled, order, smode), keys, mod)
            if hit is not None:
                wit = hit[1].render()
                where = f" at a={a}, p={p_doubled}/2, {hit[0].render()}"
                break
        if wit:
            break
    out.append(_ok("chain/t-G", CHAIN_TG_ANCHOR,
                   f"module={mod.descriptor()}; order={order}; sweep={sweep}{where}", wit))

    # G-L chain at order m+2
    order = m + 2
    wit = None
    where = ""
    smode_u = _smash_mode_for(mod)
    for j in (sweep_range(order) if kplus else sweep_range()):
        q = HalfInt(2 * j + 1)
        for p in (sweep_range(-1) if kplus else sweep_range()):
            hit = _annihilates(gl_sum(q, p, order, smode_u), keys, mod)
            if hit is not None:
                wit = hit[1].render()
                where = f" at q={q.render()}, p={p}, {hit[0].render()}"
                break
        if wit:
            break
    out.append(_ok("chain/G-L", CHAIN_GL_ANCHOR,
                   f"module={mod.descriptor()}; order={order}; sweep={sweep}{where}", wit))

    if algebra_level:
        probes = [
            ("chain/t-L/algebra-level", a_l_chain(m + 2 + (m + 2 if kplus else 0), -1 if kplus else 0, m + 2, smode)),
            ("chain/t-G/algebra-level", a_g_chain(m + 3 + (m + 3 if kplus else 0), 1, m + 3, smode)),
            ("chain/G-L/algebra-level", gl_sum(HalfInt(2 * (m + 2) + 1 if kplus else 1), 0, m + 2, smode_u)),
        ]
        for name, elem in probes:
            zero = elem.is_zero()
            out.append(CheckReport(
                name, "the chains vanish on cuspidal modules, not in the smash algebra",
                "info",
                f"identically zero in normal form: {zero}",
                None if zero else elem.render(),
            ))
    return out


# ---------------------------------------------------------------------------
# reachability, simplicity, intertwiners
# ---------------------------------------------------------------------------

SIMPLE_ANCHOR = "simple iff the interior action digraph is strongly connected"
ISO_ANCHOR = "weight-matched per-key scalings commuting with every generator"


def edge_generators(algebra_mode: AlgebraMode, gen_range: int) -> list[Gen]:
    lmin = -1 if algebra_mode is AlgebraMode.KPLUS else -gen_range
    gens = [L(n) for n in range(lmin, gen_range + 1)]
    dmin = -1 if algebra_mode is AlgebraMode.KPLUS else -(2 * gen_range - 1)
    gens += [G(Fraction(d, 2)) for d in range(dmin, 2 * gen_range, 2)]
    return gens


def _uses_a_edges(mod: GammaModule, include_a_action: bool | None) -> bool:
    if include_a_action is not None:
        return include_a_action
    # the plus/minus families are classified as jet modules: the polynomial
    # coefficient algebra is part of their structure
    return mod.family in (Family.GAMMA_PLUS, Family.GAMMA_MINUS)


def module_edges(
    mod: GammaModule,
    window: Window,
    gen_range: int,
    include_a_action: bool | None = None,
) -> dict[BasisKey, list[EdgeRecord]]:
    """All nonzero interior-to-interior action edges.

    Symbolic coefficients count as nonzero unless identically zero.
    """
    interior = set(window_keys(mod, window, interior_only=True))
    gens = [g for g in edge_generators(mod.algebra_mode, gen_range) if mod.gen_admissible(g)]
    amons = [AMonomial(1, 0), AMonomial(0, 1)] if _uses_a_edges(mod, include_a_action) else []
    edges: dict[BasisKey, list[EdgeRecord]] = {key: [] for key in interior}
    for key in sorted(interior):
        for g in gens:
            for target, coeff in mod.gen_action(g, key):
                if target in interior:
                    edges[key].append(EdgeRecord(key, target, g.render(), coeff))
        for a in amons:
            for target, coeff in mod.amon_action(a, key):
                if target in interior:
                    edges[key].append(EdgeRecord(key, target, a.render(), coeff))
    return edges


def reachability_closure(
    mod: GammaModule,
    seed: BasisKey,
    window: Window,
    gen_range: int,
    include_a_action: bool | None = None,
) -> frozenset[BasisKey]:
    """Smallest out-closed set of interior keys containing the seed."""
    interior = set(window_keys(mod, window, interior_only=True))
    if seed not in interior:
        raise ModuleError(f"seed {seed.render()} outside the window interior")
    edges = module_edges(mod, window, gen_range, include_a_action)
    seen = {seed}
    stack = [seed]
    while stack:
        cur = stack.pop()
        for e in edges[cur]:
            if e.target not in seen:
                seen.add(e.target)
                stack.append(e.target)
    return frozenset(seen)


def _sccs(nodes: list[BasisKey], adj: dict[BasisKey, set[BasisKey]]) -> list[list[BasisKey]]:
    """Strongly connected components (iterative Kosaraju)."""
    order: list[BasisKey] = []
    seen: set[BasisKey] = set()
    for start in nodes:
        if start in seen:
            continue
        stack = [(start, iter(sorted(adj[start])))]
        seen.add(start)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(sorted(adj[nxt]))))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    radj: dict[BasisKey, set[BasisKey]] = {n: set() for n in nodes}
    for src, targets in adj.items():
        for t in targets:
            radj[t].add(src)
    comps: list[list[BasisKey]] = []
    assigned: set[BasisKey] = set()
    for start in reversed(order):
        if start in assigned:
            continue
        comp = [start]
        assigned.add(start)
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in sorted(radj[node]):
                if nxt not in assigned:
                    assigned.add(nxt)
                    comp.append(nxt)
                    stack.append(nxt)
        comps.append(sorted(comp))
    return comps


def _generic_locus(mod: GammaModule, gen_range: int) -> dict:
    """Edge-coefficient polynomials at the representative keys (0, eps).

    Simultaneous vanishing of an "out" list creates a one-key submodule
    certificate at a translate of that key; vanishing of an "in" list
    creates a complement (quotient-type) certificate.
    """
    plain = gamma(mod.lam, mod.b, mod.algebra_mode, mod.convention)
    gens = edge_generators(mod.algebra_mode, gen_range)
    locus: dict[str, list[str]] = {}
    for eps in (0, 1):
        key = BasisKey(0, eps)
        outs, ins = set(), set()
        for g in gens:
            for _, coeff in plain.gen_action(g, key):
                outs.add(coeff.render())
            if g.kind == "L":
                src = BasisKey(0 - g.index.as_int(), eps)
            elif eps == 1:
                src = BasisKey(-int(g.index.as_fraction() - Fraction(1, 2)), 0)
            else:
                src = BasisKey(-int(g.index.as_fraction() + Fraction(1, 2)), 1)
            for target, coeff in plain.gen_action(g, src):
                if target == key:
                    ins.add(coeff.render())
        locus[f"out@{key.render()}"] = sorted(outs)
        locus[f"in@{key.render()}"] = sorted(ins)
    return locus


def simplicity_verdict(
    mod: GammaModule, window: Window, gen_range: int, include_a_action: bool | None = None
) -> Verdict:
    """Simple iff the interior digraph is strongly connected; reducible
    verdicts carry a verified out-closed certificate."""
    if window.kmax - window.kmin < 4 * gen_range:
        return Verdict("inconclusive", window, gen_range,
                       detail="window narrower than 4*gen_range")
    interior = sorted(window_keys(mod, window, interior_only=True))
    edges = module_edges(mod, window, gen_range, include_a_action)
    adj = {k: {e.target for e in edges[k]} for k in interior}
    comps = _sccs(interior, adj)
    locus = _generic_locus(mod, gen_range) if not mod.is_numeric() else None
    if len(comps) == 1:
        return Verdict("simple", window, gen_range, locus=locus,
                       detail="interior digraph strongly connected")
    comp_of = {}
    for idx, comp in enumerate(comps):
        for k in comp:
            comp_of[k] = idx
    sinks = []
    for idx, comp in enumerate(comps):
        if all(comp_of[t] == idx for k in comp for t in adj[k]):
            sinks.append(comp)
    cert = sorted(min(sinks, key=lambda c: c[0]))
    # soundness: re-verify out-closure by direct action evaluation
    cert_set = set(cert)
    for k in cert:
        for e in edges[k]:
            if e.target not in cert_set:
                raise AssertionError("unsound certificate: edge leaves the closed set")
    return Verdict("reducible", window, gen_range, certificate=tuple(cert), locus=locus,
                   detail=f"{len(comps)} strongly connected components")


@dataclass(frozen=True)
class IntertwinerWitness:
    """Per-key scaling table of a found intertwiner."""

    mapping: tuple[tuple[BasisKey, BasisKey, Scalar], ...]
    parity: str  # even | odd | mixed

    def render(self) -> str:
        head = ", ".join(
            f"{src.render()} -> {dst.render()} x {c.render()}" for src, dst, c in self.mapping[:4]
        )
        return f"{self.parity} intertwiner on {len(self.mapping)} keys: {head}, ..."


def find_intertwiner(
    m1: GammaModule, m2: GammaModule, window: Window, gen_range: int
) -> IntertwinerWitness | None:
    """Search for a weight-preserving linear map commuting with every
    generator of bounded index; exact per-key scalings on the interior.

    Requires numeric parameters.  The witness records whether the map
    preserves or reverses the parity assignment of the two modules.
    """
    if not (m1.is_numeric() and m2.is_numeric()):
        raise ModuleError("numeric parameters required for intertwiner search")
    if m1.algebra_mode is not m2.algebra_mode:
        raise ModuleError("intertwiner search needs a common algebra mode")
    off = (m1.lam.numeric_value() + m1.b.numeric_value()
           - m2.lam.numeric_value() - m2.b.numeric_value())
    if (2 * off).denominator != 1:
        return None
    flip = off.denominator == 2

    def match(key: BasisKey) -> BasisKey:
        if not flip:
            return BasisKey(key.k + int(off), key.eps)
        return BasisKey(key.k + int(off - Fraction(1, 2)) + key.eps, 1 - key.eps)

    def match_inverse(key: BasisKey) -> BasisKey:
        if not flip:
            return BasisKey(key.k - int(off), key.eps)
        if key.eps:
            return BasisKey(key.k - int(off - Fraction(1, 2)), 0)
        return BasisKey(key.k - int(off + Fraction(1, 2)), 1)

    interior_k = set(window.interior())
    keys1 = list(window_keys(m1, window, interior_only=True))
    tracked = []
    for key in keys1:
        img = match(key)
        if img.k in interior_k:
            if not m2.admissible(img):
                return None  # weight space present on one side only
            tracked.append(key)
    # bijectivity: every matched key of m2 needs an admissible preimage,
    # otherwise the solved map is a proper embedding, not an isomorphism
    for key2 in window_keys(m2, window, interior_only=True):
        pre = match_inverse(key2)
        if pre.k in interior_k and not m1.admissible(pre):
            return None
    if not tracked:
        return None
    tracked_set = set(tracked)
    gens = [g for g in edge_generators(m1.algebra_mode, gen_range) if m1.gen_admissible(g)]

    def constraints(gen_list):
        for key in sorted(tracked_set):
            img = match(key)
            for g in gen_list:
                a1 = m1.gen_action(g, key)
                a2 = m2.gen_action(g, img)
                yield key, g, a1, a2

    scale: dict[BasisKey, Scalar] = {}
    adj: dict[BasisKey, list[tuple[BasisKey, Scalar]]] = {k: [] for k in tracked_set}
    for key, g, a1, a2 in constraints(gens):
        if a1 and a2:
            (t1, c1), (t2, c2) = a1[0], a2[0]
            if t1 in tracked_set:
                if match(t1) != t2:
                    return None
                ratio = c2 / c1
                adj[key].append((t1, ratio))
                adj[t1].append((key, Scalar.of(1) / ratio))
        elif a1 and not a2:
            if a1[0][0] in tracked_set:
                return None  # forces a zero scaling
        elif a2 and not a1:
            return None
    for start in sorted(tracked_set):
        if start in scale:
            continue
        scale[start] = Scalar.of(1)
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt, ratio in adj[cur]:
                val = scale[cur] * ratio
                if nxt in scale:
                    if scale[nxt] != val:
                        return None
                else:
                    scale[nxt] = val
                    stack.append(nxt)
    # re-verify on a fresh, wider batch of (generator, key) pairs
    wide = [g for g in edge_generators(m1.algebra_mode, gen_range + 1) if m1.gen_admissible(g)]
    for key, g, a1, a2 in constraints(wide):
        if a1 and a2:
            (t1, c1), (t2, c2) = a1[0], a2[0]
            if t1 in tracked_set:
                if match(t1) != t2 or not (c1 * scale[t1] == c2 * scale[key]):
                    return None
        elif a1 and a1[0][0] in tracked_set:
            return None
        elif a2 and not a1:
            return None
    parities = {(m1.vector_parity(k), m2.vector_parity(match(k))) for k in tracked_set}
    if all(p == q for p, q in parities):
        parity = "even"
    elif all(p != q for p, q in parities):
        parity = "odd"
    else:
        parity = "mixed"
    mapping = tuple((k, match(k), scale[k]) for k in sorted(tracked_set))
    return IntertwinerWitness(mapping, parity)


# ---------------------------------------------------------------------------
# catalogue and classification table
# ---------------------------------------------------------------------------


def verify_identity_catalogue(
    max_n: int,
    algebra_level: bool = False,
    mutate_lg_entry: bool = False,
    window: Window | None = None,
    max_m: int = 6,
    sweep: int = 2,
) -> list[CheckReport]:
    """The displayed-identity inventory: compatibility displays, the
    reconstruction identities, the centralizer suite, the primed bracket
    table, and the consequence chains on a formal-parameter module window."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    window = window or Window(-8, 8, 0)
    small = min(max_n, 3)
    reports: list[CheckReport] = []
    reports += compat_reports(small)
    reports += action_rep_reports(small)
    reports += reconstruction_reports(max_n)
    reports += centralizer_reports(max_n, max_n)
    reports += psi_table_reports(min(max_n, 5), mutate_lg_entry=mutate_lg_entry)
    formal = gamma(LAMBDA, B)
    m, ann_report = minimal_annihilator(formal, window, max_m, sweep)
    reports.append(ann_report)
    reports += chain_reports(formal, m, window, sweep, algebra_level=algebra_level)
    return sort_reports(reports)


def classification_table() -> list[dict]:
    """Classification rows with the names of the certifying checks."""
    rows = [
        {
            "algebra": "khat",
            "family": "highest weight modules",
            "conditions": "support bounded above",
            "status": "out-of-scope",
            "certificate": None,
        },
        {
            "algebra": "khat",
            "family": "lowest weight modules",
            "conditions": "support bounded below",
            "status": "out-of-scope",
            "certificate": None,
        },
        {
            "algebra": "khat",
            "family": "gamma(l,b) and pi twists",
            "conditions": "l not integral, or b not in {0, 1/2}",
            "status": "simple",
            "certificate": "simplicity-grid/khat",
        },
        {
            "algebra": "khat",
            "family": "gamma(l,b), l integral, b in {0, 1/2}",
            "conditions": "reducible with simple sub-quotient gamma'(l,b)",
            "status": "reducible",
            "certificate": "simplicity-grid/khat",
        },
        {
            "algebra": "khat",
            "family": "gamma(l1,b1) ~ gamma(l2,b2)",
            "conditions": "l1-l2 integral and b1=b2; or l1 not integral, "
                          "l1-l2 integral and {b1,b2}={1/2,0} (parity-reversing)",
            "status": "isomorphism law",
            "certificate": "iso-suite",
        },
        {
            "algebra": "khat",
            "family": "gamma'(0,0) ~ pi(gamma'(0,1/2))",
            "conditions": "even isomorphism after one parity change",
            "status": "isomorphism law",
            "certificate": "iso-suite",
        },
        {
            "algebra": "kplus",
            "family": "gamma(l,b)",
            "conditions": "simple iff l not integral",
            "status": "simple",
            "certificate": "simplicity-grid/kplus",
        },
        {
            "algebra": "kplus",
            "family": "gamma+(0,b)",
            "conditions": "simple for every b (jet structure)",
            "status": "simple",
            "certificate": "simplicity-grid/kplus",
        },
        {
            "algebra": "kplus",
            "family": "gamma-(0,b)",
            "conditions": "simple for every b (jet structure)",
            "status": "simple",
            "certificate": "simplicity-grid/kplus",
        },
    ]
    return rows
