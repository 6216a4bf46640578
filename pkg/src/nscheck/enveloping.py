"""PBW normal forms for the enveloping and smash algebras.

Elements are finite sums  coefficient * (A-monomial (x) PBW monomial),
where the A-part sits fully to the left and the PBW part is a product of
generators sorted by ascending index (C, when present, first).  Products
are reduced to this normal form by the rewriting rules

    g * f      = (-1)^{|g||f|} f * g + (g o f)        (f an A-monomial)
    x * y      = (-1)^{|x||y|} y * x + [x, y]          (x, y out of order)
    g * g      = 1/2 [g, g]                            (g odd)

Three modes:

* ``U``    - the enveloping algebra of the centered algebra alone
  (unit A-part, central terms kept);
* ``AK``   - the smash product of A with the centerless algebra;
* ``APKP`` - the smash product of A+ with the contact subalgebra.

The named quadratic elements Omega and the degree-one families L'(n),
G'(n - 1/2) live here, together with the identities rebuilding L_n and
G_{n-1/2} from them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .algebra import (
    A_ONE,
    AMode,
    AMonomial,
    AlgebraError,
    AlgebraMode,
    C,
    G,
    Gen,
    HalfInt,
    L,
    LieElement,
    bracket_basis,
)
from .scalars import Scalar

# Products whose combined PBW degree exceeds this are rejected as runaway.
DEGREE_GUARD = 6

PBWMonomial = tuple[Gen, ...]


class SmashMode(enum.Enum):
    U = "U"        # pure enveloping algebra, center kept
    AK = "A-k"     # A smash centerless algebra
    APKP = "A+-k+"  # A+ smash contact subalgebra

    @property
    def algebra_mode(self) -> AlgebraMode:
        return {
            SmashMode.U: AlgebraMode.KHAT,
            SmashMode.AK: AlgebraMode.K,
            SmashMode.APKP: AlgebraMode.KPLUS,
        }[self]

    @property
    def a_mode(self) -> AMode:
        return AMode.APLUS if self is SmashMode.APKP else AMode.A

    @property
    def pure(self) -> bool:
        return self is SmashMode.U


def _validate_pbw(p: PBWMonomial, mode: SmashMode) -> None:
    amode = mode.algebra_mode
    prev = None
    for g in p:
        if not amode.admits(g):
            raise AlgebraError(f"generator {g.render()} not admissible in mode {mode.value}")
        key = g.sort_key()
        if prev is not None:
            if key < prev:
                raise AlgebraError("PBW monomial out of order")
            if key == prev and g.parity:
                raise AlgebraError("repeated odd generator in PBW monomial")
        prev = key


@lru_cache(maxsize=None)
def _gen_act_amon(g: Gen, m: AMonomial) -> tuple[tuple[AMonomial, Fraction], ...]:
    """Action g o (t^k xi^e) as a list of (monomial, coefficient)."""
    if g.kind == "L":
        i = g.index.as_int()
        coeff = Fraction(m.k) + Fraction(m.eps) * Fraction(i + 1, 2)
        if coeff:
            return ((AMonomial(i + m.k, m.eps), coeff),)
        return ()
    r = g.index.as_fraction()
    if m.eps == 0:
        if m.k:
            return ((AMonomial(int(r - Fraction(1, 2)) + m.k, 1), Fraction(m.k)),)
        return ()
    return ((AMonomial(int(r + Fraction(1, 2)) + m.k, 0), Fraction(-1)),)


@lru_cache(maxsize=None)
def _insert_gen(p: PBWMonomial, g: Gen, with_center: bool) -> tuple[tuple[PBWMonomial, Fraction], ...]:
    """Normal form of the product (p) * g as sorted PBW monomials."""
    if not p:
        return (((g,), Fraction(1)),)
    last = p[-1]
    lk, gk = last.sort_key(), g.sort_key()
    if lk < gk:
        return ((p + (g,), Fraction(1)),)
    out: dict[PBWMonomial, Fraction] = {}
    if lk == gk:
        if g.parity == 0:
            return ((p + (g,), Fraction(1)),)
        # odd square: g*g = 1/2 [g, g]
        for h, c in bracket_basis(g, g, with_center):
            for q, c2 in _insert_gen(p[:-1], h, with_center):
                _acc(out, q, Fraction(1, 2) * c * c2)
        return tuple(out.items())
    # last > g: swap, p * g = +/- (p' * g) * last + p' * [last, g]
    sign = Fraction(-1) if (last.parity and g.parity) else Fraction(1)
    for q, c in _insert_gen(p[:-1], g, with_center):
        for q2, c2 in _insert_gen(q, last, with_center):
            _acc(out, q2, sign * c * c2)
    for h, c in bracket_basis(last, g, with_center):
        for q, c2 in _insert_gen(p[:-1], h, with_center):
            _acc(out, q, c * c2)
    return tuple(out.items())


def _acc(table: dict, key, coeff: Fraction) -> None:
    s = table.get(key, Fraction(0)) + coeff
    if s:
        table[key] = s
    else:
        table.pop(key, None)


@lru_cache(maxsize=None)
def _pbw_mul(p: PBWMonomial, q: PBWMonomial, with_center: bool) -> tuple[tuple[PBWMonomial, Fraction], ...]:
    acc: dict[PBWMonomial, Fraction] = {p: Fraction(1)}
    for g in q:
        nxt: dict[PBWMonomial, Fraction] = {}
        for mono, c in acc.items():
            for m2, c2 in _insert_gen(mono, g, with_center):
                _acc(nxt, m2, c * c2)
        acc = nxt
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _pbw_past_amon(p: PBWMonomial, b: AMonomial) -> tuple[tuple[AMonomial, PBWMonomial, Fraction], ...]:
    """Normal form of (p) * b: the A-monomial commuted fully to the left.

    Generator subsequences stay sorted, so no PBW reordering is needed.
    """
    if not p:
        return ((b, (), Fraction(1)),)
    last = p[-1]
    sign = Fraction(-1) if (last.parity and b.parity) else Fraction(1)
    pieces: list[tuple[AMonomial, PBWMonomial, Fraction]] = [(b, (last,), sign)]
    for m2, c in _gen_act_amon(last, b):
        pieces.append((m2, (), c))
    out: dict[tuple[AMonomial, PBWMonomial], Fraction] = {}
    for bmid, tail, c in pieces:
        for bout, mid, c2 in _pbw_past_amon(p[:-1], bmid):
            _acc(out, (bout, mid + tail), c * c2)
    return tuple((a, m, c) for (a, m), c in out.items())


class SmashElement:
    """Normal-formed element of one of the smash algebras."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: dict[tuple[AMonomial, PBWMonomial], Scalar], mode: SmashMode):
        clean: dict[tuple[AMonomial, PBWMonomial], Scalar] = {}
        for (a, p), c in terms.items():
            if c.is_zero():
                continue
            if mode.pure and a != A_ONE:
                raise AlgebraError("pure enveloping mode admits no A-part")
            if not mode.a_mode.admits(a):
                raise AlgebraError(f"A-monomial {a.render()} not admissible in mode {mode.value}")
            _validate_pbw(p, mode)
            clean[(a, p)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("SmashElement is immutable")

    @staticmethod
    def zero(mode: SmashMode) -> "SmashElement":
        return SmashElement({}, mode)

    @staticmethod
    def one(mode: SmashMode) -> "SmashElement":
        return SmashElement({(A_ONE, ()): Scalar.of(1)}, mode)

    @staticmethod
    def gen(g: Gen, mode: SmashMode, coeff=1) -> "SmashElement":
        return SmashElement({(A_ONE, (g,)): Scalar.of(coeff)}, mode)

    @staticmethod
    def amon(k: int, eps: int = 0, mode: SmashMode = SmashMode.AK, coeff=1) -> "SmashElement":
        return SmashElement({(AMonomial(k, eps), ()): Scalar.of(coeff)}, mode)

    @staticmethod
    def term(a: AMonomial, gens: PBWMonomial, mode: SmashMode, coeff=1) -> "SmashElement":
        return SmashElement({(a, gens): Scalar.of(coeff)}, mode)

    @staticmethod
    def from_lie(x: LieElement) -> "SmashElement":
        mode = {
            AlgebraMode.KHAT: SmashMode.U,
            AlgebraMode.K: SmashMode.AK,
            AlgebraMode.KPLUS: SmashMode.APKP,
        }[x.mode]
        return SmashElement({(A_ONE, (g,)): c for g, c in x.terms.items()}, mode)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        ps = {(a.eps + sum(g.parity for g in p)) % 2 for a, p in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def pbw_degree(self) -> int:
        return max((len(p) for _, p in self.terms), default=0)

    def __add__(self, other: "SmashElement") -> "SmashElement":
        self._check_mode(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            cur = out.get(key)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.pop(key, None)
            else:
                out[key] = cur
        return SmashElement(out, self.mode)

    def __sub__(self, other: "SmashElement") -> "SmashElement":
        return self + (-other)

    def __neg__(self) -> "SmashElement":
        return SmashElement({k: -c for k, c in self.terms.items()}, self.mode)

    def scale(self, c) -> "SmashElement":
        c = Scalar.of(c)
        return SmashElement({k: v * c for k, v in self.terms.items()}, self.mode)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SmashElement)
            and self.mode is other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))

    def _check_mode(self, other: "SmashElement") -> None:
        if self.mode is not other.mode:
            raise AlgebraError(f"mode mismatch: {self.mode.value} vs {other.mode.value}")

    def render(self) -> str:
        if not self.terms:
            return "0"
        def key(item):
            (a, p), _ = item
            return (a.sort_key(), tuple(g.sort_key() for g in p))
        pieces = []
        for (a, p), c in sorted(self.terms.items(), key=key):
            body = f"{a.render()} (x) {''.join(g.render() for g in p) or '1'}"
            cs = c.render_coeff()
            if cs == "-1":
                body = f"-{body}"
            elif cs != "1":
                body = f"{cs}*{body}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            else:
                pieces.append(f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"SmashElement({self.render()}, {self.mode.value})"


def smash_product(x: SmashElement, y: SmashElement, degree_guard: int | None = None) -> SmashElement:
    """Associative product in normal form."""
    x._check_mode(y)
    guard = DEGREE_GUARD if degree_guard is None else degree_guard
    if x.pbw_degree() + y.pbw_degree() > guard:
        raise AlgebraError(
            f"product would exceed PBW degree guard {guard}; raise degree_guard explicitly"
        )
    wc = x.mode.algebra_mode.has_center
    out: dict[tuple[AMonomial, PBWMonomial], Scalar] = {}
    for (ax, px), cx in x.terms.items():
        for (ay, py), cy in y.terms.items():
            base = cx * cy
            for amid, pmid, c1 in _pbw_past_amon(px, ay):
                afull = ax.times(amid)
                if afull is None:
                    continue
                for pout, c2 in _pbw_mul(pmid, py, wc):
                    key = (afull, pout)
                    add = base * Scalar.of(c1 * c2)
                    cur = out.get(key)
                    cur = add if cur is None else cur + add
                    if cur.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = cur
    return SmashElement(out, x.mode)


def smash_bracket(x: SmashElement, y: SmashElement, degree_guard: int | None = None) -> SmashElement:
    """Super-commutator x y - (-1)^{|x||y|} y x of homogeneous elements."""
    if x.is_zero() or y.is_zero():
        x._check_mode(y)
        return SmashElement.zero(x.mode)
    px, py = x.parity(), y.parity()
    if px is None or py is None:
        raise AlgebraError("smash_bracket needs parity-homogeneous inputs")
    xy = smash_product(x, y, degree_guard)
    yx = smash_product(y, x, degree_guard)
    if px and py:
        return xy + yx
    return xy - yx


def omega(k: int, s: int, m: int, mode: SmashMode = SmashMode.U) -> SmashElement:
    """Normal form of sum_i (-1)^i binom(m, i) L_{k-i} L_{s+i}."""
    if m < 0:
        raise AlgebraError("omega order m must be non-negative")
    out = SmashElement.zero(mode)
    for i in range(m + 1):
        term = smash_product(
            SmashElement.gen(L(k - i), mode),
            SmashElement.gen(L(s + i), mode),
        )
        out = out + term.scale(Fraction((-1) ** i * comb(m, i)))
    return out


def gl_sum(k: HalfInt, p: int, m: int, mode: SmashMode = SmashMode.U) -> SmashElement:
    """Normal form of sum_i (-1)^i binom(m, i) G_{k-i} L_{p+i}."""
    out = SmashElement.zero(mode)
    for i in range(m + 1):
        term = smash_product(
            SmashElement.gen(Gen("G", k - HalfInt.of(i)), mode),
            SmashElement.gen(L(p + i), mode),
        )
        out = out + term.scale(Fraction((-1) ** i * comb(m, i)))
    return out


def l_prime(n: int, mode: SmashMode = SmashMode.AK) -> SmashElement:
    """The degree-one element

    L'(n) = sum_{i=0}^{n+1} (-1)^{i+1} binom(n+1, i) t^{n-i+1} (x) L_{i-1}
          + (n+1)/2 sum_{i=0}^{n} (-1)^i binom(n, i) t^{n-i} xi (x) G_{i-1/2}.

    Defined for n >= -1: the n = -1 value of the defining sum is -L_{-1},
    the unique extension compatible with the reconstruction identities.
    """
    if n < -1:
        raise AlgebraError("l_prime defined for n >= -1 only")
    terms: dict[tuple[AMonomial, PBWMonomial], Scalar] = {}
    for i in range(n + 2):
        c = Fraction((-1) ** (i + 1) * comb(n + 1, i))
        _sm_acc(terms, AMonomial(n - i + 1, 0), (L(i - 1),), c)
    for i in range(n + 1):
        c = Fraction(n + 1, 2) * Fraction((-1) ** i * comb(n, i))
        _sm_acc(terms, AMonomial(n - i, 1), (G(Fraction(2 * i - 1, 2)),), c)
    return SmashElement(terms, mode)


def g_prime(n: int, mode: SmashMode = SmashMode.AK) -> SmashElement:
    """The degree-one element

    G'(n - 1/2) = sum_{i=0}^{n} (-1)^i binom(n, i)
                  (t^{n-i} (x) G_{i-1/2} - 2 t^{n-i} xi (x) L_{i-1}),

    defined for n >= 0.
    """
    if n < 0:
        raise AlgebraError("g_prime defined for n >= 0 only")
    terms: dict[tuple[AMonomial, PBWMonomial], Scalar] = {}
    for i in range(n + 1):
        c = Fraction((-1) ** i * comb(n, i))
        _sm_acc(terms, AMonomial(n - i, 0), (G(Fraction(2 * i - 1, 2)),), c)
        _sm_acc(terms, AMonomial(n - i, 1), (L(i - 1),), -2 * c)
    return SmashElement(terms, mode)


@dataclass(frozen=True)
class TElementLabel:
    """Name of a primed element: kind "L" labels L'(n) with n >= -1,
    kind "G" labels G'(n - 1/2) with n >= 0."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind == "L":
            if self.n < -1:
                raise AlgebraError("L' labels need n >= -1")
        elif self.kind == "G":
            if self.n < 0:
                raise AlgebraError("G' labels need n >= 0")
        else:
            raise AlgebraError(f"unknown primed kind {self.kind!r}")

    def build(self, mode: SmashMode = SmashMode.AK) -> SmashElement:
        if self.kind == "L":
            return l_prime(self.n, mode)
        return g_prime(self.n, mode)

    def render(self) -> str:
        if self.kind == "L":
            return f"L'({self.n})"
        return f"G'({2 * self.n - 1}/2)"


def _sm_acc(table: dict, a: AMonomial, p: PBWMonomial, c: Fraction) -> None:
    key = (a, p)
    cur = table.get(key)
    cur = Scalar.of(c) if cur is None else cur + Scalar.of(c)
    if cur.is_zero():
        table.pop(key, None)
    else:
        table[key] = cur


def verify_reconstruction(n: int, mutate_extension: bool = False, mode: SmashMode = SmashMode.APKP):
    """Residuals of the two identities rebuilding L_n and G_{n-1/2} from
    the primed family:

        sum_{k=0}^n (-1)^k binom(n+1, k+1) t^{n-k} (L'_k - (k+1)/2 xi G'_{k-1/2})
            + t^{n+1} L_{-1}                                  = L_n
        sum_{k=0}^n (-1)^k binom(n, k) t^{n-k} (G'_{k-1/2} - 2 xi L'_{k-1})
                                                              = G_{n-1/2}

    Both residuals are zero; ``mutate_extension`` flips the sign of the
    L'(-1) extension to demonstrate that the extension is forced.
    """
    if n < 0:
        raise AlgebraError("reconstruction defined for n >= 0")

    def lp(k: int) -> SmashElement:
        e = l_prime(k, mode)
        if k == -1 and mutate_extension:
            return -e
        return e

    xi_mono = SmashElement.amon(0, 1, mode)
    lhs_l = SmashElement.zero(mode)
    for k in range(n + 1):
        c = Fraction((-1) ** k * comb(n + 1, k + 1))
        inner = lp(k) - smash_product(xi_mono, g_prime(k, mode)).scale(Fraction(k + 1, 2))
        lhs_l = lhs_l + smash_product(SmashElement.amon(n - k, 0, mode), inner).scale(c)
    lhs_l = lhs_l + smash_product(
        SmashElement.amon(n + 1, 0, mode), SmashElement.gen(L(-1), mode)
    )
    res_l = lhs_l - SmashElement.gen(L(n), mode)

    lhs_g = SmashElement.zero(mode)
    for k in range(n + 1):
        c = Fraction((-1) ** k * comb(n, k))
        inner = g_prime(k, mode) - smash_product(xi_mono, lp(k - 1)).scale(Fraction(2))
        lhs_g = lhs_g + smash_product(SmashElement.amon(n - k, 0, mode), inner).scale(c)
    res_g = lhs_g - SmashElement.gen(G(Fraction(2 * n - 1, 2)), mode)

    return res_l, res_g
