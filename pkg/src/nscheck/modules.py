"""The intermediate-series weight modules Gamma(lambda, b) and variants.

The underlying space is spanned by keys (k, eps) standing for t^k xi^eps.
Generators act by

    L_n . t^k          = (l + k + b(n+1)) t^{n+k}
    L_n . t^k xi       = (l + k + (n+1)(b + 1/2)) t^{n+k} xi
    G_{n+1/2} . t^k    = sigma (k + l + 2b(n+1)) t^{n+k} xi
    G_{n+1/2} . t^k xi = -t^{n+k+1}

with sigma = +1 under the default "corrected" sign convention and
sigma = -1 under "paper-printed".  The printed pair of odd-action signs
fails the odd-odd module axiom by a global sign; the corrected choice is
one of the two consistent repairs (they differ by G -> -G and give
identical classification data).  Lambda and b may be exact rationals or
the formal parameters; everything stays symbolic in that case.

Families:

* ``GAMMA``        - the full family over any algebra mode (center acts 0);
* ``GAMMA_PLUS``   - the submodule on keys k >= 0 at lambda = 0 (contact
  mode only; it is a module over A+ and the contact subalgebra);
* ``GAMMA_MINUS``  - the quotient by GAMMA_PLUS: keys k <= -1, action
  coefficients targeting k >= 0 projected away;
* ``GAMMA_PRIME``  - an excluded-key sub or quotient at the reducibility
  locus (integral lambda with b in {0, 1/2}).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    AElement,
    AMonomial,
    AlgebraMode,
    Gen,
    HalfInt,
    LieElement,
    bracket_basis,
)
from .enveloping import SmashElement
from .scalars import B, LAMBDA, Scalar, parse_rational


class ModuleError(ValueError):
    """Invalid family parameters or inadmissible actions."""


class Family(enum.Enum):
    GAMMA = "gamma"
    GAMMA_PLUS = "gamma+"
    GAMMA_MINUS = "gamma-"
    GAMMA_PRIME = "gamma'"


class SignConvention(enum.Enum):
    CORRECTED = "corrected"
    PAPER_PRINTED = "paper-printed"

    @staticmethod
    def parse(text: str) -> "SignConvention":
        try:
            return SignConvention(text)
        except ValueError:
            raise ModuleError(f"unknown sign convention {text!r}") from None


class ExclusionRole(enum.Enum):
    SUB = "sub"
    QUOTIENT = "quotient"


@dataclass(frozen=True, order=True)
class BasisKey:
    """Key (k, eps) for the basis vector t^k xi^eps."""

    k: int
    eps: int

    def render(self) -> str:
        return f"t^{self.k}" + (" xi" if self.eps else "")


@dataclass(frozen=True)
class Window:
    """Finite truncation [kmin, kmax] of the integer key line, with an
    interior margin so that bounded-index actions stay observable."""

    kmin: int
    kmax: int
    margin: int = 0

    def __post_init__(self):
        if self.margin < 0 or self.kmin + self.margin > self.kmax - self.margin:
            raise ModuleError(f"invalid window {self.kmin}..{self.kmax} margin {self.margin}")

    def interior(self) -> range:
        return range(self.kmin + self.margin, self.kmax - self.margin + 1)

    def full(self) -> range:
        return range(self.kmin, self.kmax + 1)

    def render(self) -> str:
        return f"{self.kmin}..{self.kmax}(margin {self.margin})"


@dataclass(frozen=True)
class ModuleParams:
    lam: Scalar
    b: Scalar
    family: Family = Family.GAMMA
    excluded: tuple[BasisKey, ExclusionRole] | None = None
    convention: SignConvention = SignConvention.CORRECTED
    algebra_mode: AlgebraMode = AlgebraMode.KHAT
    parity_flipped: bool = False


class ModuleVector:
    """Finite Scalar combination of basis keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[BasisKey, Scalar] | None = None):
        clean = {k: c for k, c in (terms or {}).items() if not c.is_zero()}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ModuleVector is immutable")

    @staticmethod
    def basis(key: BasisKey, coeff=1) -> "ModuleVector":
        return ModuleVector({key: Scalar.of(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.terms)
        for k, c in other.terms.items():
            cur = out.get(k)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                out.pop(k, None)
            else:
                out[k] = cur
        return ModuleVector(out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scale(-1)

    def scale(self, c) -> "ModuleVector":
        c = Scalar.of(c)
        return ModuleVector({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for key in sorted(self.terms):
            cs = self.terms[key].render_coeff()
            body = f"{cs} * {key.render()}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(f" - {body[1:]}")
            else:
                pieces.append(f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"ModuleVector({self.render()})"


@dataclass(frozen=True)
class GammaModule:
    """Handle for one member of the weight-module family."""

    params: ModuleParams

    @property
    def lam(self) -> Scalar:
        return self.params.lam

    @property
    def b(self) -> Scalar:
        return self.params.b

    @property
    def family(self) -> Family:
        return self.params.family

    @property
    def algebra_mode(self) -> AlgebraMode:
        return self.params.algebra_mode

    @property
    def convention(self) -> SignConvention:
        return self.params.convention

    @property
    def parity_flipped(self) -> bool:
        return self.params.parity_flipped

    @property
    def excluded(self) -> tuple[BasisKey, ExclusionRole] | None:
        return self.params.excluded

    def is_numeric(self) -> bool:
        return self.lam.is_numeric() and self.b.is_numeric()

    def admissible(self, key: BasisKey) -> bool:
        if self.family is Family.GAMMA_PLUS and key.k < 0:
            return False
        if self.family is Family.GAMMA_MINUS and key.k >= 0:
            return False
        if self.excluded is not None and key == self.excluded[0]:
            return False
        return True

    def vector_parity(self, key: BasisKey) -> int:
        return key.eps ^ (1 if self.parity_flipped else 0)

    def gen_admissible(self, gen: Gen) -> bool:
        if gen.kind == "C":
            return self.algebra_mode is AlgebraMode.KHAT
        return self.algebra_mode.admits(gen)

    def gen_action(self, gen: Gen, key: BasisKey) -> list[tuple[BasisKey, Scalar]]:
        """Action of a basis generator on a basis vector: at most one
        target key with its exact coefficient, after family filtering."""
        return list(_gen_action_cached(self, gen, key))

    def _gen_action_raw(self, gen: Gen, key: BasisKey) -> list[tuple[BasisKey, Scalar]]:
        if not self.admissible(key):
            raise ModuleError(f"key {key.render()} not admissible for {self.descriptor()}")
        if not self.gen_admissible(gen):
            raise ModuleError(
                f"generator {gen.render()} not admissible on {self.descriptor()} "
                f"in mode {self.algebra_mode.value}"
            )
        if gen.kind == "C":
            return []
        lam, b = self.lam, self.b
        k = key.k
        if gen.kind == "L":
            n = gen.index.as_int()
            if key.eps == 0:
                coeff = lam + k + b * (n + 1)
                target = BasisKey(k + n, 0)
            else:
                coeff = lam + k + (b + Fraction(1, 2)) * (n + 1)
                target = BasisKey(k + n, 1)
        else:
            n = int(gen.index.as_fraction() - Fraction(1, 2))
            if key.eps == 0:
                sigma = 1 if self.convention is SignConvention.CORRECTED else -1
                coeff = (lam + k + 2 * b * (n + 1)) * sigma
                target = BasisKey(k + n, 1)
            else:
                coeff = Scalar.of(-1)
                target = BasisKey(k + n + 1, 0)
        return self._filter(coeff, target)

    def amon_action(self, mono: AMonomial, key: BasisKey) -> list[tuple[BasisKey, Scalar]]:
        """Multiplication action of an A-monomial."""
        if not self.admissible(key):
            raise ModuleError(f"key {key.render()} not admissible for {self.descriptor()}")
        if self.family in (Family.GAMMA_PLUS, Family.GAMMA_MINUS) and mono.k < 0:
            raise ModuleError(
                f"A-monomial {mono.render()} does not act on {self.descriptor()}: "
                "only the polynomial coefficient algebra does"
            )
        if self.family is Family.GAMMA_PRIME and self.excluded is not None and mono != AMonomial(0, 0):
            raise ModuleError(
                f"the coefficient algebra does not act on the sub-quotient {self.descriptor()}"
            )
        if mono.eps and key.eps:
            return []
        return self._filter(Scalar.of(1), BasisKey(key.k + mono.k, key.eps + mono.eps))

    def _filter(self, coeff: Scalar, target: BasisKey) -> list[tuple[BasisKey, Scalar]]:
        if coeff.is_zero():
            return []
        if self.family is Family.GAMMA_PLUS and target.k < 0:
            raise ModuleError(
                f"nonzero coefficient escapes the submodule at {target.render()}"
            )
        if self.family is Family.GAMMA_MINUS and target.k >= 0:
            return []  # projected away by the quotient
        if self.excluded is not None and target == self.excluded[0]:
            if self.excluded[1] is ExclusionRole.QUOTIENT:
                return []
            raise ModuleError(
                f"nonzero coefficient into excluded key {target.render()} of a sub-type module"
            )
        return [(target, coeff)]

    def weight(self, key: BasisKey) -> Scalar:
        """The diagonal eigenvalue l + k + b + eps/2 of the grading operator."""
        return self.lam + key.k + self.b + Scalar.of(Fraction(key.eps, 2))

    def descriptor(self) -> str:
        def par(s: Scalar) -> str:
            return s.render()

        body = f"{self.family.value}({par(self.lam)},{par(self.b)})"
        if self.parity_flipped:
            return f"pi({body})"
        return body

    def __repr__(self):
        return f"GammaModule({self.descriptor()}, {self.algebra_mode.value})"


@lru_cache(maxsize=None)
def _gen_action_cached(mod: GammaModule, gen: Gen, key: BasisKey):
    return tuple(mod._gen_action_raw(gen, key))


# family validation probes: action coefficients are affine in the generator
# index, so vanishing at three consecutive indices decides identical vanishing
_PROBE = 3


def make_module(params: ModuleParams) -> GammaModule:
    """Validate parameters and return a module handle."""
    fam = params.family
    if fam in (Family.GAMMA_PLUS, Family.GAMMA_MINUS):
        if not params.lam.is_zero():
            raise ModuleError(f"{fam.value} requires lambda = 0, got {params.lam.render()}")
        if params.algebra_mode is not AlgebraMode.KPLUS:
            raise ModuleError(f"{fam.value} is a contact-subalgebra module; use kplus mode")
        if params.excluded is not None:
            raise ModuleError(f"{fam.value} carries no excluded key")
    if params.excluded is not None and fam is not Family.GAMMA_PRIME:
        raise ModuleError("excluded keys are reserved for the gamma' family")
    mod = GammaModule(params)
    if fam is Family.GAMMA_PRIME and params.excluded is not None:
        _validate_exclusion(mod)
    return mod


def _edge_coeffs_at(mod: GammaModule, key: BasisKey, incoming: bool) -> list[Scalar]:
    """Coefficients of all probe edges into or out of ``key``."""
    plain = GammaModule(replace(mod.params, family=Family.GAMMA, excluded=None))
    coeffs = []
    for n in range(-_PROBE, _PROBE + 1):
        gens = [Gen("L", HalfInt(2 * n)), Gen("G", HalfInt(2 * n + 1))]
        for g in gens:
            if incoming:
                # source key that would land on `key` under g
                if g.kind == "L":
                    src = BasisKey(key.k - n, key.eps)
                elif key.eps == 1:
                    src = BasisKey(key.k - n, 0)
                else:
                    src = BasisKey(key.k - n - 1, 1)
            else:
                src = key
            for target, c in plain.gen_action(g, src):
                if (target == key) if incoming else True:
                    coeffs.append(c)
    return coeffs


def _validate_exclusion(mod: GammaModule) -> None:
    key, role = mod.excluded
    out_zero = all(c.is_zero() for c in _edge_coeffs_at(mod, key, incoming=False))
    in_zero = all(c.is_zero() for c in _edge_coeffs_at(mod, key, incoming=True))
    if role is ExclusionRole.QUOTIENT and not out_zero:
        raise ModuleError(
            f"excluded key {key.render()} does not span an invariant line; "
            "quotient-type exclusion is invalid here"
        )
    if role is ExclusionRole.SUB and not in_zero:
        if out_zero:
            raise ModuleError(
                f"excluded key {key.render()} spans an invariant line; "
                "the exclusion role must be \"quotient\", not \"sub\""
            )
        raise ModuleError(
            f"complement of {key.render()} is not invariant; "
            "sub-type exclusion is invalid here"
        )


def gamma(lam, b, algebra_mode: AlgebraMode = AlgebraMode.KHAT,
          convention: SignConvention = SignConvention.CORRECTED) -> GammaModule:
    return make_module(
        ModuleParams(Scalar.of(lam) if not isinstance(lam, Scalar) else lam,
                     Scalar.of(b) if not isinstance(b, Scalar) else b,
                     Family.GAMMA, None, convention, algebra_mode)
    )


def gamma_plus(b, convention: SignConvention = SignConvention.CORRECTED) -> GammaModule:
    return make_module(
        ModuleParams(Scalar.of(0), Scalar.of(b) if not isinstance(b, Scalar) else b,
                     Family.GAMMA_PLUS, None, convention, AlgebraMode.KPLUS)
    )


def gamma_minus(b, convention: SignConvention = SignConvention.CORRECTED) -> GammaModule:
    return make_module(
        ModuleParams(Scalar.of(0), Scalar.of(b) if not isinstance(b, Scalar) else b,
                     Family.GAMMA_MINUS, None, convention, AlgebraMode.KPLUS)
    )


def gamma_prime(lam, b, algebra_mode: AlgebraMode = AlgebraMode.KHAT,
                convention: SignConvention = SignConvention.CORRECTED) -> GammaModule:
    """Gamma'(lambda, b): the distinguished simple sub-quotient.

    At the reducibility locus (integral lambda, b in {0, 1/2}) the excluded
    key and its role are derived; elsewhere the module coincides with
    gamma(lambda, b).
    """
    lam_s = Scalar.of(lam) if not isinstance(lam, Scalar) else lam
    b_s = Scalar.of(b) if not isinstance(b, Scalar) else b
    excluded = None
    if lam_s.is_numeric() and b_s.is_numeric():
        lv, bv = lam_s.numeric_value(), b_s.numeric_value()
        if lv.denominator == 1:
            if bv == 0:
                excluded = (BasisKey(-int(lv), 0), ExclusionRole.QUOTIENT)
            elif bv == Fraction(1, 2):
                excluded = (BasisKey(-int(lv) - 1, 1), ExclusionRole.SUB)
    return make_module(
        ModuleParams(lam_s, b_s, Family.GAMMA_PRIME, excluded, convention, algebra_mode)
    )


def parity_change(mod: GammaModule) -> GammaModule:
    """The parity-change twin: same vectors, same action, flipped parity."""
    return GammaModule(replace(mod.params, parity_flipped=not mod.parity_flipped))


def weight(key: BasisKey, mod: GammaModule) -> Scalar:
    return mod.weight(key)


def act(x, v: ModuleVector, mod: GammaModule) -> ModuleVector:
    """Evaluate x on v.  x may be a Gen, LieElement, AElement or
    SmashElement; smash terms apply PBW factors right-to-left and the
    A-part last."""
    if isinstance(x, Gen):
        return _act_gen(x, v, mod)
    if isinstance(x, LieElement):
        out = ModuleVector()
        for g, c in x.terms.items():
            out = out + _act_gen(g, v, mod).scale(c)
        return out
    if isinstance(x, AElement):
        out = ModuleVector()
        for m, c in x.terms.items():
            out = out + _act_amon(m, v, mod).scale(c)
        return out
    if isinstance(x, SmashElement):
        out = ModuleVector()
        for (a, pbw), c in x.terms.items():
            w = v
            for g in reversed(pbw):
                w = _act_gen(g, w, mod)
                if w.is_zero():
                    break
            if w.is_zero():
                continue
            w = _act_amon(a, w, mod)
            out = out + w.scale(c)
        return out
    raise ModuleError(f"cannot act with object of type {type(x).__name__}")


def _act_gen(g: Gen, v: ModuleVector, mod: GammaModule) -> ModuleVector:
    out: dict[BasisKey, Scalar] = {}
    for key, c in v.terms.items():
        for target, coeff in mod.gen_action(g, key):
            cur = out.get(target)
            add = c * coeff
            cur = add if cur is None else cur + add
            if cur.is_zero():
                out.pop(target, None)
            else:
                out[target] = cur
    return ModuleVector(out)


def _act_amon(m: AMonomial, v: ModuleVector, mod: GammaModule) -> ModuleVector:
    if m == AMonomial(0, 0):
        return v
    out: dict[BasisKey, Scalar] = {}
    for key, c in v.terms.items():
        for target, coeff in mod.amon_action(m, key):
            cur = out.get(target)
            add = c * coeff
            cur = add if cur is None else cur + add
            if cur.is_zero():
                out.pop(target, None)
            else:
                out[target] = cur
    return ModuleVector(out)


def module_axiom_residual(x: Gen, y: Gen, key: BasisKey, mod: GammaModule) -> ModuleVector:
    """Residual of the module axiom on a basis vector:

        (x (y v) - (-1)^{|x||y|} y (x v)) - [x, y] v

    Zero for every pair exactly when the action is a representation.
    """
    e = ModuleVector.basis(key)
    comp = act(x, act(y, e, mod), mod)
    swap = act(y, act(x, e, mod), mod)
    if x.parity and y.parity:
        comp = comp + swap
    else:
        comp = comp - swap
    br = ModuleVector()
    wc = mod.algebra_mode is AlgebraMode.KHAT
    for g, c in bracket_basis(x, y, wc):
        if g.kind == "C":
            continue  # central charge zero on these modules
        br = br + act(g, e, mod).scale(Scalar.of(c))
    return comp - br


def parse_module_descriptor(
    text: str,
    lam_value: Fraction | None = None,
    b_value: Fraction | None = None,
    algebra_mode: AlgebraMode | None = None,
    convention: SignConvention = SignConvention.CORRECTED,
) -> GammaModule:
    """Parse descriptors like gamma(1/3,1/4), gamma+(0,b), gamma'(0,1/2),
    pi(gamma'(0,0)).  The symbols l and b stand for formal parameters and
    may be pinned by lam_value / b_value."""
    s = text.strip()
    flips = 0
    while s.startswith("pi(") and s.endswith(")"):
        s = s[3:-1].strip()
        flips += 1
    for prefix, family in (
        ("gamma+", Family.GAMMA_PLUS),
        ("gamma-", Family.GAMMA_MINUS),
        ("gamma'", Family.GAMMA_PRIME),
        ("gamma", Family.GAMMA),
    ):
        if s.startswith(prefix + "(") and s.endswith(")"):
            inner = s[len(prefix) + 1 : -1]
            break
    else:
        raise ModuleError(f"unrecognized module descriptor {text!r}")
    parts = inner.split(",")
    if len(parts) != 2:
        raise ModuleError(f"descriptor needs two parameters: {text!r}")

    def param(tok: str, override, formal: Scalar) -> Scalar:
        tok = tok.strip()
        if tok in ("l", "b"):
            want = LAMBDA if tok == "l" else B
            if want is not formal:
                raise ModuleError(f"symbol {tok!r} in the wrong parameter slot of {text!r}")
            return Scalar.of(override) if override is not None else formal
        try:
            return Scalar.of(parse_rational(tok))
        except (ValueError, ZeroDivisionError):
            raise ModuleError(f"malformed rational {tok!r} in {text!r}") from None

    lam_s = param(parts[0], lam_value, LAMBDA)
    b_s = param(parts[1], b_value, B)

    if family in (Family.GAMMA_PLUS, Family.GAMMA_MINUS):
        if algebra_mode not in (None, AlgebraMode.KPLUS):
            raise ModuleError(f"{family.value} modules live over the contact subalgebra")
        if not lam_s.is_zero():
            raise ModuleError(f"{family.value} requires lambda = 0")
        mod = gamma_plus(b_s, convention) if family is Family.GAMMA_PLUS else gamma_minus(b_s, convention)
    elif family is Family.GAMMA_PRIME:
        mod = gamma_prime(lam_s, b_s, algebra_mode or AlgebraMode.KHAT, convention)
    else:
        mod = gamma(lam_s, b_s, algebra_mode or AlgebraMode.KHAT, convention)
    for _ in range(flips):
        mod = parity_change(mod)
    return mod
