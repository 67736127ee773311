"""Free bimodule tensor powers in normal form, duals and adjoints.

A :class:`TensorWord` is an alternating string ``a0 c1 a1 ... cn an`` where
each ``aj`` is a single basis word of the coefficient algebra and the ``ci``
are generator names.  Sums are pushed to the outer scalar combination, so
an element of the tensor algebra is a sparse map word -> scalar.  Moving an
algebra factor across a tensor sign rewrites the adjacent slots, which is
exactly the balanced-product relation; multiplication below performs that
normalisation.

:class:`DualElement` is the left-coefficient presentation of a bimodule
functional into the algebra: a finite sum of terms ``b * c`` meaning "send
the generator c to b and every other generator to zero".
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, NamedTuple, Sequence

from .algebra import AlgebraElement, CoefficientAlgebra
from .errors import (
    AlgebraMismatchError,
    ArityMismatchError,
    BoundTooSmallError,
    NotHermitianError,
    ZeroArityTargetError,
)


class TensorWord(NamedTuple):
    coeffs: tuple  # n + 1 algebra basis words
    gens: tuple    # n generator names

    @property
    def arity(self) -> int:
        return len(self.gens)


def word_key(algebra: CoefficientAlgebra, tw: TensorWord):
    return (
        tw.arity,
        tw.gens,
        tuple(algebra.word_key(w) for w in tw.coeffs),
    )


class TensorElement:
    """Sparse element of the tensor algebra over a coefficient algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CoefficientAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, algebra: CoefficientAlgebra) -> "TensorElement":
        return cls(algebra, {})

    @classmethod
    def from_algebra(cls, element: AlgebraElement) -> "TensorElement":
        return cls(
            element.algebra,
            {TensorWord((w,), ()): c for w, c in element.terms.items()},
        )

    @classmethod
    def from_scalar(cls, algebra: CoefficientAlgebra, scalar) -> "TensorElement":
        return cls.from_algebra(algebra.unit().scale(scalar))

    @classmethod
    def generator(cls, algebra: CoefficientAlgebra, name: str) -> "TensorElement":
        one = algebra.ring.one
        units = algebra.unit_words()
        return cls(
            algebra,
            {TensorWord((u, v), (name,)): one for u in units for v in units},
        )

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def arities(self) -> set[int]:
        return {tw.arity for tw in self.terms}

    @property
    def arity(self) -> int:
        """Common arity of all words; raises when mixed or zero."""
        arities = self.arities()
        if len(arities) != 1:
            raise ArityMismatchError(f"element has arities {sorted(arities)}")
        return arities.pop()

    def component(self, n: int) -> "TensorElement":
        return TensorElement(
            self.algebra, {tw: c for tw, c in self.terms.items() if tw.arity == n}
        )

    def max_arity(self) -> int:
        return max((tw.arity for tw in self.terms), default=0)

    def constant_part(self) -> AlgebraElement:
        return self.algebra.from_terms(
            (tw.coeffs[0], c) for tw, c in self.terms.items() if tw.arity == 0
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: word_key(self.algebra, item[0]))

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "TensorElement"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        ring = self.algebra.ring
        out = dict(self.terms)
        for tw, c in other.terms.items():
            s = ring.add(out.get(tw, ring.zero), c)
            if ring.is_zero(s):
                out.pop(tw, None)
            else:
                out[tw] = s
        return TensorElement(self.algebra, out)

    def __neg__(self):
        ring = self.algebra.ring
        return TensorElement(self.algebra, {tw: ring.neg(c) for tw, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar) -> "TensorElement":
        ring = self.algebra.ring
        s = ring.coerce(scalar)
        if ring.is_zero(s):
            return TensorElement.zero(self.algebra)
        return TensorElement(self.algebra, {tw: ring.mul(s, c) for tw, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return TensorElement.from_algebra(other) * self
        return self.scale(other)

    def __mul__(self, other) -> "TensorElement":
        """Concatenation product; merges the boundary slots."""
        if isinstance(other, AlgebraElement):
            other = TensorElement.from_algebra(other)
        self._check(other)
        alg, ring = self.algebra, self.algebra.ring
        out: dict = {}
        for tw1, c1 in self.terms.items():
            for tw2, c2 in other.terms.items():
                mid = alg.mul_words(tw1.coeffs[-1], tw2.coeffs[0])
                if mid is None:
                    continue
                tw = TensorWord(
                    tw1.coeffs[:-1] + (mid,) + tw2.coeffs[1:],
                    tw1.gens + tw2.gens,
                )
                s = ring.add(out.get(tw, ring.zero), ring.mul(c1, c2))
                if ring.is_zero(s):
                    out.pop(tw, None)
                else:
                    out[tw] = s
        return TensorElement(alg, out)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.algebra == other.algebra
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        ring, alg = self.algebra.ring, self.algebra
        out = ""
        for tw, c in self.sorted_terms():
            factors = []
            for i, gen in enumerate(tw.gens):
                slot = alg.word_str(tw.coeffs[i])
                if slot != "1":
                    factors.append(slot)
                factors.append(gen)
            last = alg.word_str(tw.coeffs[-1])
            if last != "1":
                factors.append(last)
            if not factors:
                factors.append("1")
            negative, magnitude = ring.split_sign(c)
            body = "*".join(factors)
            if magnitude != ring.one:
                body = f"{ring.scalar_str(magnitude)}*{body}"
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    def __repr__(self):
        return f"<{self}>"


def tensor_product(factors: Sequence, algebra: CoefficientAlgebra | None = None) -> TensorElement:
    """Product of a mixed list of TensorElements / AlgebraElements."""
    items = [
        TensorElement.from_algebra(f) if isinstance(f, AlgebraElement) else f for f in factors
    ]
    if not items:
        if algebra is None:
            raise ArityMismatchError("empty product needs an explicit algebra")
        return TensorElement.from_scalar(algebra, 1)
    out = items[0]
    for f in items[1:]:
        out = out * f
    return out


class DualElement:
    """Functional on the degree-one part, as a sum of terms (b, c)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CoefficientAlgebra, terms: dict[str, AlgebraElement]):
        self.algebra = algebra
        self.terms = {g: b for g, b in terms.items() if not b.is_zero()}

    @classmethod
    def zero(cls, algebra: CoefficientAlgebra) -> "DualElement":
        return cls(algebra, {})

    @classmethod
    def term(cls, coeff: AlgebraElement, gen: str) -> "DualElement":
        return cls(coeff.algebra, {gen: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return set(self.terms)

    def __add__(self, other: "DualElement") -> "DualElement":
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(f"{self.algebra} vs {other.algebra}")
        out = dict(self.terms)
        for g, b in other.terms.items():
            out[g] = out[g] + b if g in out else b
        return DualElement(self.algebra, out)

    def __neg__(self):
        return DualElement(self.algebra, {g: -b for g, b in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar) -> "DualElement":
        return DualElement(self.algebra, {g: b.scale(scalar) for g, b in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, DualElement)
            and self.algebra == other.algebra
            and self.terms == other.terms
        )

    def eval_on(self, element: TensorElement) -> AlgebraElement:
        """Evaluate the bimodule functional on an arity-one element."""
        if element.algebra != self.algebra:
            raise AlgebraMismatchError("mixed algebras in dual evaluation")
        out = self.algebra.zero()
        for tw, c in element.terms.items():
            if tw.arity != 1:
                raise ArityMismatchError("dual evaluation needs an arity-1 element")
            b = self.terms.get(tw.gens[0])
            if b is None:
                continue
            left = self.algebra.element(tw.coeffs[0])
            right = self.algebra.element(tw.coeffs[1])
            out = out + (left * b * right).scale(c)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            b = self.terms[g]
            if b == self.algebra.unit():
                parts.append(g)
            else:
                body = str(b)
                if " + " in body:
                    body = f"({body})"
                parts.append(f"{body}*{g}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self}>"


def psi_eval(betas: Sequence[DualElement], element: TensorElement) -> AlgebraElement:
    """Evaluate beta_1 x ... x beta_n on an arity-n element, slotwise.

    On a word ``a0 c1 a1 ... cn an`` the value is ``a0 b1 a1 ... bn an``
    where ``bi`` is beta_i's coefficient at ``ci``; any mismatch kills the
    word.  Well defined on the balanced product because the betas are
    bimodule morphisms.
    """
    n = len(betas)
    if n < 1:
        raise ArityMismatchError("psi needs at least one functional")
    alg = element.algebra
    for beta in betas:
        if beta.algebra != alg:
            raise AlgebraMismatchError("mixed algebras in psi evaluation")
    out = alg.zero()
    for tw, c in element.terms.items():
        if tw.arity != n:
            raise ArityMismatchError(f"word of arity {tw.arity}, expected {n}")
        value = alg.element(tw.coeffs[0])
        for i, gen in enumerate(tw.gens):
            b = betas[i].terms.get(gen)
            if b is None:
                value = None
                break
            value = value * b * alg.element(tw.coeffs[i + 1])
        if value is not None:
            out = out + value.scale(c)
    return out


def _word_t(algebra: CoefficientAlgebra, w1, w2):
    """Trace pairing of two basis words (they are orthonormal)."""
    return algebra.ring.one if w1 == w2 else algebra.ring.zero


def iota_pair(x: TensorElement, y: TensorElement):
    """Pairing of two equal-arity elements: the product of the slotwise
    trace pairings when all generators match, extended bilinearly."""
    if x.algebra != y.algebra:
        raise AlgebraMismatchError("mixed algebras in pairing")
    alg, ring = x.algebra, x.algebra.ring
    if not alg.hermitian:
        raise NotHermitianError(f"{alg} has no trace pairing")
    if not x.is_zero() and not y.is_zero() and x.arity != y.arity:
        raise ArityMismatchError(f"arity {x.arity} vs {y.arity}")
    total = ring.zero
    for tw1, c1 in x.terms.items():
        for tw2, c2 in y.terms.items():
            if tw1.gens != tw2.gens:
                continue
            factor = ring.mul(c1, c2)
            for w1, w2 in zip(tw1.coeffs, tw2.coeffs):
                factor = ring.mul(factor, _word_t(alg, w1, w2))
                if ring.is_zero(factor):
                    break
            total = ring.add(total, factor)
    return total


def _morphism_arity(f_values: Mapping[str, TensorElement]) -> int:
    arities = {a for v in f_values.values() for a in v.arities()}
    if not arities:
        raise ZeroArityTargetError("morphism is zero; its target arity is ambiguous")
    if len(arities) != 1:
        raise ArityMismatchError(f"morphism images have mixed arities {sorted(arities)}")
    n = arities.pop()
    if n == 0:
        raise ZeroArityTargetError("adjoints into the zero-length part are rejected")
    return n


def apply_block(
    f_values: Mapping[str, TensorElement], k: int, l: int, x: TensorElement
) -> TensorElement:
    """Apply id^k x f x id^l, where f is given by generator images."""
    alg = x.algebra
    out = TensorElement.zero(alg)
    for tw, c in x.terms.items():
        if tw.arity != k + 1 + l:
            raise ArityMismatchError(f"word arity {tw.arity}, expected {k + 1 + l}")
        image = f_values.get(tw.gens[k])
        if image is None or image.is_zero():
            continue
        prefix = TensorElement(alg, {TensorWord(tw.coeffs[: k + 1], tw.gens[:k]): c})
        suffix = TensorElement(alg, {TensorWord(tw.coeffs[k + 1 :], tw.gens[k + 1 :]): alg.ring.one})
        out = out + prefix * image * suffix
    return out


def adjoint_formula(
    f_values: Mapping[str, TensorElement], k: int, l: int, y: TensorElement
) -> TensorElement:
    """Adjoint of id^k x f x id^l with respect to the trace pairings.

    For an image word ``a0 d1 a1 ... dn an`` of the generator c and an
    input block ``b_k d1' ... dn' b_{k+n}``, the contribution is nonzero
    only when the generators match, and then equals

        t(a1, b_{k+1}) ... t(a_{n-1}, b_{k+n-1}) . (b_k a0*) c (an* b_{k+n})

    inside the untouched outer slots.
    """
    alg = y.algebra
    if not alg.hermitian:
        raise NotHermitianError(f"{alg} has no star involution")
    ring = alg.ring
    n = _morphism_arity(f_values)
    out = TensorElement.zero(alg)
    for tw, cy in y.terms.items():
        if tw.arity != k + n + l:
            raise ArityMismatchError(f"input arity {tw.arity}, expected {k + n + l}")
        mid_gens = tw.gens[k : k + n]
        for gen, image in f_values.items():
            for fw, cf in image.terms.items():
                if fw.gens != mid_gens:
                    continue
                factor = ring.mul(cy, cf)
                for i in range(1, n):
                    factor = ring.mul(factor, _word_t(alg, fw.coeffs[i], tw.coeffs[k + i]))
                    if ring.is_zero(factor):
                        break
                if ring.is_zero(factor):
                    continue
                left = alg.mul_words(tw.coeffs[k], alg.star_word(fw.coeffs[0]))
                if left is None:
                    continue
                right = alg.mul_words(alg.star_word(fw.coeffs[-1]), tw.coeffs[k + n])
                if right is None:
                    continue
                word = TensorWord(
                    tw.coeffs[:k] + (left, right) + tw.coeffs[k + n + 1 :],
                    tw.gens[:k] + (gen,) + tw.gens[k + n :],
                )
                out = out + TensorElement(alg, {word: factor})
    return out


def adjoint_bruteforce(
    f_values: Mapping[str, TensorElement],
    k: int,
    l: int,
    y: TensorElement,
    generators: Iterable[str],
    slot_bound: int,
) -> TensorElement:
    """Transpose of id^k x f x id^l in the orthonormal word basis.

    Enumerates every source word whose slots have length at most
    ``slot_bound`` and reads off the matrix transpose entry by entry:
    the coefficient of a source word w in the adjoint of y is <y, F(w)>.
    Raises :class:`BoundTooSmallError` when the bound demonstrably cannot
    cover the support of the true adjoint (a slot of the input or of an
    image, or a boundary product of the two, may exceed it).
    """
    alg = y.algebra
    if not alg.hermitian:
        raise NotHermitianError(f"{alg} has no star involution")
    ring = alg.ring
    n = _morphism_arity(f_values)
    gens = sorted(set(generators))

    image_slots = [w for img in f_values.values() for fw in img.terms for w in fw.coeffs]
    input_slots = [w for tw in y.terms for w in tw.coeffs]
    for w in itertools.chain(image_slots, input_slots):
        if alg.word_len(w) > slot_bound:
            raise BoundTooSmallError(
                f"slot {alg.word_str(w)} exceeds the brute-force bound {slot_bound}"
            )
    for wi in input_slots:
        for wf in image_slots:
            if alg.product_len_bound(alg.word_len(wi), alg.word_len(wf)) > slot_bound:
                raise BoundTooSmallError(
                    "boundary products may exceed the brute-force bound"
                )

    slots = list(alg.words(slot_bound))
    arity = k + 1 + l
    out = TensorElement.zero(alg)
    for gen_choice in itertools.product(gens, repeat=arity):
        for coeff_choice in itertools.product(slots, repeat=arity + 1):
            w = TensorWord(tuple(coeff_choice), tuple(gen_choice))
            source = TensorElement(alg, {w: ring.one})
            value = iota_pair(y, apply_block(f_values, k, l, source))
            if not ring.is_zero(value):
                out = out + source.scale(value)
    return out
