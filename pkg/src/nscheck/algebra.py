"""The Neveu-Schwarz superalgebra, its centerless and contact variants,
and the Grassmann coefficient algebra A = C[t, t^-1] (x) Lambda(xi).

Three algebra modes share one code path:

* ``KHAT``  - central extension: basis L(n), G(r), C, with the 2-cocycle
  terms (m^3 - m)/12 and (r^2 - 1/4)/3;
* ``K``     - the quotient by C (no central terms);
* ``KPLUS`` - the contact subalgebra: L(n) for n >= -1, G(r) for r >= -1/2.

Bracket table on basis elements (Koszul convention, [x,y] = -(-1)^{|x||y|}[y,x]):

    [L_m, L_n] = (n - m) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 C
    [L_m, G_r] = (r - m/2) G_{m+r}
    [G_r, G_s] = -2 L_{r+s} + delta_{r+s,0} (r^2 - 1/4)/3 C

A carries the superderivation action of the algebra and the algebra is in
turn a module over A:

    t^i L_j = L_{i+j},  t^i G_m = G_{m+i},  xi L_j = 1/2 G_{j+1/2},  xi G_m = 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .scalars import Scalar


class AlgebraError(ValueError):
    """Mode violations: bad indices, central element misuse, mode mixing."""


@dataclass(frozen=True, order=True)
class HalfInt:
    """Element of (1/2)Z stored as twice its value."""

    doubled: int

    @staticmethod
    def of(value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        f = Fraction(value)
        if f.denominator not in (1, 2):
            raise AlgebraError(f"{value} is not a half-integer")
        return HalfInt(int(f * 2))

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.doubled + HalfInt.of(other).doubled)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.doubled - HalfInt.of(other).doubled)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer():
            raise AlgebraError(f"{self.render()} is not an integer")
        return self.doubled // 2

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def as_scalar(self) -> Scalar:
        return Scalar.of(self.as_fraction())

    def render(self) -> str:
        if self.is_integer():
            return str(self.doubled // 2)
        return f"{self.doubled}/2"


def half(p: int) -> HalfInt:
    """The half-integer p/2."""
    return HalfInt(p)


class AlgebraMode(enum.Enum):
    KHAT = "khat"
    K = "k"
    KPLUS = "kplus"

    @property
    def has_center(self) -> bool:
        return self is AlgebraMode.KHAT

    def admits(self, gen: "Gen") -> bool:
        if gen.kind == "C":
            return self.has_center
        if self is AlgebraMode.KPLUS:
            return gen.index.doubled >= -2
        return True

    @staticmethod
    def parse(text: str) -> "AlgebraMode":
        try:
            return AlgebraMode(text)
        except ValueError:
            raise AlgebraError(f"unknown algebra mode {text!r}") from None


class AMode(enum.Enum):
    A = "A"
    APLUS = "A+"

    def admits(self, mono: "AMonomial") -> bool:
        return self is AMode.A or mono.k >= 0


@dataclass(frozen=True)
class Gen:
    """Basis generator: L(n) with n integral, G(r) with r strictly
    half-integral, or the central element C."""

    kind: str  # "L" | "G" | "C"
    index: HalfInt = HalfInt(0)

    def __post_init__(self):
        if self.kind == "L":
            if not self.index.is_integer():
                raise AlgebraError(f"L index must be an integer, got {self.index.render()}")
        elif self.kind == "G":
            if self.index.is_integer():
                raise AlgebraError(f"G index must be strictly half-integral, got {self.index.render()}")
        elif self.kind != "C":
            raise AlgebraError(f"unknown generator kind {self.kind!r}")

    @property
    def parity(self) -> int:
        return 1 if self.kind == "G" else 0

    @property
    def degree(self) -> HalfInt:
        """Eigenvalue of ad L_0."""
        return HalfInt(0) if self.kind == "C" else self.index

    def sort_key(self) -> tuple[int, int]:
        # C sorts before everything; then ascending index
        return (0, 0) if self.kind == "C" else (1, self.index.doubled)

    def render(self) -> str:
        if self.kind == "C":
            return "C"
        return f"{self.kind}({self.index.render()})"


def L(n: int) -> Gen:
    return Gen("L", HalfInt.of(n))


def G(r) -> Gen:
    return Gen("G", HalfInt.of(r))


C = Gen("C")


@dataclass(frozen=True)
class AMonomial:
    """Monomial t^k xi^eps of A; parity equals eps."""

    k: int
    eps: int = 0

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise AlgebraError("xi exponent must be 0 or 1")

    @property
    def parity(self) -> int:
        return self.eps

    @property
    def degree(self) -> HalfInt:
        """Eigenvalue of L_0 acting by superderivation."""
        return HalfInt(2 * self.k + self.eps)

    def sort_key(self) -> tuple[int, int]:
        return (self.k, self.eps)

    def times(self, other: "AMonomial") -> "AMonomial | None":
        """Product in A; None encodes xi*xi = 0."""
        if self.eps and other.eps:
            return None
        return AMonomial(self.k + other.k, self.eps + other.eps)

    def render(self) -> str:
        if self.eps == 0:
            if self.k == 0:
                return "1"
            return "t" if self.k == 1 else f"t^{self.k}"
        if self.k == 0:
            return "xi"
        head = "t" if self.k == 1 else f"t^{self.k}"
        return f"{head}*xi"


A_ONE = AMonomial(0, 0)
XI = AMonomial(0, 1)


def _merge(table: dict, key, coeff: Scalar) -> None:
    cur = table.get(key)
    cur = coeff if cur is None else cur + coeff
    if cur.is_zero():
        table.pop(key, None)
    else:
        table[key] = cur


class LieElement:
    """Finite Scalar-linear combination of basis generators in one mode."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: dict[Gen, Scalar], mode: AlgebraMode):
        clean: dict[Gen, Scalar] = {}
        for g, c in terms.items():
            if not mode.admits(g):
                raise AlgebraError(f"generator {g.render()} not admissible in mode {mode.value}")
            if not c.is_zero():
                clean[g] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("LieElement is immutable")

    @staticmethod
    def zero(mode: AlgebraMode) -> "LieElement":
        return LieElement({}, mode)

    @staticmethod
    def basis(gen: Gen, mode: AlgebraMode, coeff=1) -> "LieElement":
        return LieElement({gen: Scalar.of(coeff)}, mode)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """0 or 1 when homogeneous, None when mixed or zero."""
        ps = {g.parity for g in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check_mode(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            _merge(out, g, c)
        return LieElement(out, self.mode)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement({g: -c for g, c in self.terms.items()}, self.mode)

    def scale(self, c) -> "LieElement":
        c = Scalar.of(c)
        return LieElement({g: v * c for g, v in self.terms.items()}, self.mode)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElement)
            and self.mode is other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))

    def _check_mode(self, other: "LieElement") -> None:
        if self.mode is not other.mode:
            raise AlgebraError(f"mode mismatch: {self.mode.value} vs {other.mode.value}")

    def items(self) -> Iterator[tuple[Gen, Scalar]]:
        return iter(sorted(self.terms.items(), key=lambda kv: _render_order(kv[0])))

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for g, c in self.items():
            cs = c.render_coeff()
            if cs == "1":
                body = g.render()
            elif cs == "-1":
                body = f"-{g.render()}"
            else:
                body = f"{cs}*{g.render()}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            else:
                pieces.append(f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"LieElement({self.render()}, {self.mode.value})"


def _render_order(g: Gen) -> tuple[int, int]:
    # L's by index, then G's by index, then C last
    if g.kind == "L":
        return (0, g.index.doubled)
    if g.kind == "G":
        return (1, g.index.doubled)
    return (2, 0)


class AElement:
    """Finite Scalar-linear combination of A-monomials."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: dict[AMonomial, Scalar], mode: AMode = AMode.A):
        clean: dict[AMonomial, Scalar] = {}
        for m, c in terms.items():
            if not mode.admits(m):
                raise AlgebraError(f"monomial {m.render()} not admissible in mode {mode.value}")
            if not c.is_zero():
                clean[m] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("AElement is immutable")

    @staticmethod
    def monomial(k: int, eps: int = 0, mode: AMode = AMode.A, coeff=1) -> "AElement":
        return AElement({AMonomial(k, eps): Scalar.of(coeff)}, mode)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        ps = {m.parity for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def __add__(self, other: "AElement") -> "AElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            _merge(out, m, c)
        return AElement(out, self.mode)

    def __neg__(self) -> "AElement":
        return AElement({m: -c for m, c in self.terms.items()}, self.mode)

    def __sub__(self, other: "AElement") -> "AElement":
        return self + (-other)

    def __mul__(self, other: "AElement") -> "AElement":
        out: dict[AMonomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = m1.times(m2)
                if prod is not None:
                    _merge(out, prod, c1 * c2)
        return AElement(out, self.mode)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AElement)
            and self.mode is other.mode
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=AMonomial.sort_key):
            c = self.terms[m]
            cs = c.render_coeff()
            mono = m.render()
            if mono == "1":
                body = cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = f"-{mono}"
            else:
                body = f"{cs}*{mono}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            else:
                pieces.append(f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"AElement({self.render()})"


def bracket_basis(x: Gen, y: Gen, with_center: bool) -> list[tuple[Gen, Fraction]]:
    """Structure constants of [x, y] on basis generators."""
    if x.kind == "C" or y.kind == "C":
        return []
    out: list[tuple[Gen, Fraction]] = []
    if x.kind == "L" and y.kind == "L":
        m, n = x.index.as_int(), y.index.as_int()
        if m != n:
            out.append((L(m + n), Fraction(n - m)))
        if with_center and m + n == 0:
            c = Fraction(m**3 - m, 12)
            if c:
                out.append((C, c))
    elif x.kind == "L" and y.kind == "G":
        m, r = x.index.as_int(), y.index.as_fraction()
        coeff = r - Fraction(m, 2)
        if coeff:
            out.append((G(r + m), coeff))
    elif x.kind == "G" and y.kind == "L":
        # [G_r, L_n] = -[L_n, G_r]
        n, r = y.index.as_int(), x.index.as_fraction()
        coeff = -(r - Fraction(n, 2))
        if coeff:
            out.append((G(r + n), coeff))
    else:
        r, s = x.index.as_fraction(), y.index.as_fraction()
        out.append((L(int(r + s)), Fraction(-2)))
        if with_center and r + s == 0:
            c = Fraction(1, 3) * (r * r - Fraction(1, 4))
            if c:
                out.append((C, c))
    return out


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Super-bracket, bilinear over Scalar coefficients.

    Central terms appear only in KHAT mode.
    """
    x._check_mode(y)
    out: dict[Gen, Scalar] = {}
    wc = x.mode.has_center
    for gx, cx in x.terms.items():
        for gy, cy in y.terms.items():
            c = cx * cy
            for g, k in bracket_basis(gx, gy, wc):
                _merge(out, g, c * Scalar.of(k))
    return LieElement(out, x.mode)


def k_action_on_A(x: LieElement, a: AElement) -> AElement:
    """Superderivation action of the centerless algebra on A.

    L_i . t^k xi^e = (k + e (i+1)/2) t^{i+k} xi^e
    G_m . t^k      = k t^{m+k-1/2} xi
    G_m . t^k xi   = -t^{m+k+1/2}
    """
    out: dict[AMonomial, Scalar] = {}
    for g, cg in x.terms.items():
        if g.kind == "C":
            raise AlgebraError("the central element does not act on A")
        for m, cm in a.terms.items():
            c = cg * cm
            if g.kind == "L":
                i = g.index.as_int()
                coeff = Fraction(m.k) + Fraction(m.eps) * Fraction(i + 1, 2)
                if coeff:
                    _merge(out, AMonomial(i + m.k, m.eps), c * Scalar.of(coeff))
            else:
                r = g.index.as_fraction()
                if m.eps == 0:
                    if m.k:
                        _merge(out, AMonomial(int(r - Fraction(1, 2)) + m.k, 1), c * Scalar.of(m.k))
                else:
                    _merge(out, AMonomial(int(r + Fraction(1, 2)) + m.k, 0), -c)
    return AElement(out, a.mode)


def A_action_on_k(a: AElement, x: LieElement) -> LieElement:
    """Module action of A on the algebra:

    t^i L_j = L_{i+j}, t^i G_m = G_{m+i}, xi L_j = 1/2 G_{j+1/2}, xi G_m = 0.
    """
    out: dict[Gen, Scalar] = {}
    for g, cg in x.terms.items():
        if g.kind == "C":
            raise AlgebraError("A does not act on the central element")
        for m, cm in a.terms.items():
            c = cg * cm
            if m.eps == 0:
                shifted = Gen(g.kind, g.index + HalfInt(2 * m.k))
                if not x.mode.admits(shifted):
                    raise AlgebraError(
                        f"action result {shifted.render()} violates mode {x.mode.value}"
                    )
                _merge(out, shifted, c)
            else:
                if g.kind == "L":
                    target = G(g.index.as_fraction() + m.k + Fraction(1, 2))
                    if not x.mode.admits(target):
                        raise AlgebraError(
                            f"action result {target.render()} violates mode {x.mode.value}"
                        )
                    _merge(out, target, c * Scalar.of(Fraction(1, 2)))
                # xi G_m = 0
    return LieElement(out, x.mode)


def compatibility_residual(v: LieElement, a: AElement, x: LieElement):
    """Residual of v(ax) - (-1)^{|v||a|} a(vx) - (v o a) x on the module
    structure of the algebra over A; expected zero for all homogeneous
    inputs.  Returned embedded in the smash algebra.
    """
    pv, pa = v.parity(), a.parity()
    if pv is None or pa is None or x.parity() is None:
        raise AlgebraError("compatibility residual needs homogeneous inputs")
    first = bracket(v, A_action_on_k(a, x))
    second = A_action_on_k(a, bracket(v, x))
    if pv and pa:
        second = -second
    third = A_action_on_k(k_action_on_A(v, a), x)
    residual = first - second - third
    from .enveloping import SmashElement  # local import: no cycle at module load

    return SmashElement.from_lie(residual)
