"""Quotient algebra arithmetic over a presentation.

Monomials are index words (tuples of generator indices); a word is normal
when no adjacent pair matches a rule left side, and the normal words form
the linear basis of the quotient.  Tensor holds a finite TPoly-linear
combination of slot-tuples of words; rank 1 plays the role of an algebra
element, rank 0 of a bare coefficient.

Algebra bundles a presentation with memoized normal forms, products,
involutions and antipodes; Algebra.free() is the rule-free twin on the same
alphabet and braiding, used when something must be computed upstairs before
passing to the quotient.
"""

from __future__ import annotations

from fractions import Fraction

from .presentation import AlgebraPresentation, PresentationError, parse_element_terms
from .scalars import Scalar, TPoly, T_ONE, T_ZERO, as_tpoly


class Tensor:
    """Rank-n tensor: dict mapping n-tuples of words to TPoly coefficients.

    Zero coefficients are dropped on the fly, so equal tensors compare
    equal as dicts.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        self.terms = {}
        if terms:
            for key, c in terms.items():
                self.add_term(key, c)

    @classmethod
    def basis(cls, key) -> "Tensor":
        t = cls(len(key))
        t.terms[key] = T_ONE
        return t

    def zero_like(self) -> "Tensor":
        return Tensor(self.rank)

    def add_term(self, key, coeff):
        coeff = as_tpoly(coeff)
        if not coeff:
            return
        cur = self.terms.get(key)
        if cur is None:
            self.terms[key] = coeff
        else:
            s = cur + coeff
            if s:
                self.terms[key] = s
            else:
                del self.terms[key]

    def __add__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch in tensor sum")
        out = Tensor(self.rank)
        out.terms = dict(self.terms)
        for key, c in other.terms.items():
            out.add_term(key, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Tensor":
        c = as_tpoly(c)
        out = Tensor(self.rank)
        if not c:
            return out
        for key, v in self.terms.items():
            p = v * c
            if p:
                out.terms[key] = p
        return out

    def conj_coeffs(self) -> "Tensor":
        out = Tensor(self.rank)
        out.terms = {key: v.conj() for key, v in self.terms.items()}
        return out

    def substitute(self, r) -> "Tensor":
        """Evaluate every coefficient at the rational point r."""
        out = Tensor(self.rank)
        for key, v in self.terms.items():
            s = v.eval(r)
            if s:
                out.terms[key] = TPoly((s,))
        return out

    def coefficient(self, key) -> TPoly:
        return self.terms.get(key, T_ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Tensor):
            return self.rank == other.rank and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        raise TypeError("Tensor is not hashable")

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Tensor(rank={self.rank}, {len(self.terms)} terms)"


def tensor_product(u: Tensor, v: Tensor) -> Tensor:
    out = Tensor(u.rank + v.rank)
    for ku, cu in u.terms.items():
        for kv, cv in v.terms.items():
            out.add_term(ku + kv, cu * cv)
    return out


class Algebra:
    """A presented algebra with memoized quotient arithmetic."""

    def __init__(self, pres: AlgebraPresentation, apply_rules: bool = True):
        self.pres = pres
        self.apply_rules = apply_rules and bool(pres.rules)
        self._rules = {}
        if self.apply_rules:
            for rule in pres.rules:
                self._rules[rule.lhs] = rule.rhs  # inconsistent dups fail confluence
        self._nf: dict = {}
        self._inv: dict = {}
        self._anti: dict = {}
        self._basis: dict = {}
        self._free = None

    # -- construction -----------------------------------------------------

    def free(self) -> "Algebra":
        """The rule-free algebra on the same alphabet and braiding."""
        if not self.apply_rules:
            return self
        if self._free is None:
            self._free = Algebra(self.pres, apply_rules=False)
        return self._free

    def zero(self, rank: int) -> Tensor:
        return Tensor(rank)

    def one(self) -> Tensor:
        return Tensor.basis(((),))

    def unit_tensor(self, rank: int) -> Tensor:
        return Tensor.basis(((),) * rank)

    def element(self, terms: dict) -> Tensor:
        out = Tensor(1)
        for w, c in terms.items():
            out.add_term((tuple(w),), c)
        return out

    def generator(self, symbol: str) -> Tensor:
        return Tensor.basis(((self.pres.gen_index(symbol),),))

    def parse_element(self, text: str) -> Tensor:
        names = {g: k for k, g in enumerate(self.pres.generators)}
        terms = parse_element_terms(text, names)
        out = Tensor(1)
        for w, c in terms.items():
            for key, v in self.normal_form_word(w).terms.items():
                out.add_term(key, v * c)
        return out

    # -- grading and braiding --------------------------------------------

    def grade(self, w) -> int:
        g = self.pres.grades
        return sum(g[k] for k in w)

    def word_degree(self, w) -> int:
        return len(w)

    def braid_coeff(self, w1, w2, inverse: bool = False) -> Scalar:
        """Coefficient picked up when the word w1 crosses over w2 (or the
        inverse crossing when inverse is set)."""
        if inverse:
            return self.braid_coeff(w2, w1).inv()
        if self.pres.braiding_kind == "graded-sign":
            if (self.grade(w1) * self.grade(w2)) & 1:
                return Scalar(-1)
            return Scalar(1)
        table = self.pres.braiding_table
        c = Scalar(1)
        for a in w1:
            row = table[a]
            for b in w2:
                c = c * row[b]
        return c

    # -- normal forms and products ---------------------------------------

    def normal_form_word(self, w) -> Tensor:
        """Canonical representative of a word as a combination of normal
        monomials.  Rewrites the leftmost ill-ordered pair first; any order
        agrees once confluence holds."""
        w = tuple(w)
        cached = self._nf.get(w)
        if cached is not None:
            return cached
        rules = self._rules
        pos = -1
        if rules:
            for p in range(len(w) - 1):
                if (w[p], w[p + 1]) in rules:
                    pos = p
                    break
        if pos < 0:
            result = Tensor.basis((w,))
        else:
            result = Tensor(1)
            for rw, coeff in rules[(w[pos], w[pos + 1])]:
                sub = self.normal_form_word(w[:pos] + rw + w[pos + 2:])
                for key, c in sub.terms.items():
                    result.add_term(key, c * coeff)
        self._nf[w] = result
        return result

    def normal_form(self, symbols) -> Tensor:
        """Normal form of a word given as generator symbols (or indices)."""
        w = tuple(
            s if isinstance(s, int) else self.pres.gen_index(s) for s in symbols
        )
        return self.normal_form_word(w)

    def mul_words(self, w1, w2) -> Tensor:
        return self.normal_form_word(tuple(w1) + tuple(w2))

    def mul(self, a: Tensor, b: Tensor) -> Tensor:
        out = Tensor(1)
        for (w1,), c1 in a.terms.items():
            for (w2,), c2 in b.terms.items():
                prod = self.mul_words(w1, w2)
                c = c1 * c2
                for key, v in prod.terms.items():
                    out.add_term(key, v * c)
        return out

    # -- involution -------------------------------------------------------

    def involution_word(self, w) -> Tensor:
        w = tuple(w)
        cached = self._inv.get(w)
        if cached is None:
            star = self.pres.star
            cached = self.normal_form_word(tuple(star[k] for k in reversed(w)))
            self._inv[w] = cached
        return cached

    def involution(self, a: Tensor) -> Tensor:
        """The *-operation: antilinear, word-reversing."""
        out = Tensor(1)
        for (w,), c in a.terms.items():
            img = self.involution_word(w)
            cc = c.conj()
            for key, v in img.terms.items():
                out.add_term(key, v * cc)
        return out

    # -- antipode ---------------------------------------------------------

    def antipode_word(self, w) -> Tensor:
        """S on a basis word via S(g v) = mul(braid(S(g) (x) S(v)))."""
        w = tuple(w)
        cached = self._anti.get(w)
        if cached is not None:
            return cached
        if not w:
            result = self.one()
        else:
            sg = self.element(dict(self.pres.antipode[w[0]]))
            sv = self.antipode_word(w[1:])
            result = Tensor(1)
            for (u,), cu in sg.terms.items():
                for (v,), cv in sv.terms.items():
                    k = self.braid_coeff(u, v)
                    prod = self.mul_words(v, u)
                    c = cu * cv * k
                    for key, val in prod.terms.items():
                        result.add_term(key, val * c)
        self._anti[w] = result
        return result

    def antipode(self, a: Tensor) -> Tensor:
        out = Tensor(1)
        for (w,), c in a.terms.items():
            img = self.antipode_word(w)
            for key, v in img.terms.items():
                out.add_term(key, v * c)
        return out

    # -- basis enumeration -------------------------------------------------

    def basis(self, max_degree: int):
        """All normal monomials of length <= max_degree, shortlex order."""
        cached = self._basis.get(max_degree)
        if cached is not None:
            return cached
        rules = self._rules if self.apply_rules else {}
        out = [()]
        layer = [()]
        n = len(self.pres.generators)
        for _ in range(max_degree):
            nxt = []
            for w in layer:
                for g in range(n):
                    if w and (w[-1], g) in rules:
                        continue
                    nxt.append(w + (g,))
            layer = nxt
            out.extend(layer)
        self._basis[max_degree] = out
        return out

    # -- formatting --------------------------------------------------------

    def format_poly_coeff(self, p: TPoly) -> str:
        s = str(p)
        if len(p.coeffs) - sum(1 for c in p.coeffs if not c) > 1:
            return f"({s})"
        # single nonzero coefficient; parenthesize composite scalars
        for k, c in enumerate(p.coeffs):
            if c and c.re and c.im:
                return f"({s})"
        return s

    def format(self, t: Tensor) -> str:
        """Human-readable rendering; slots joined with a tensor sign."""
        if not t.terms:
            return "0"
        parts = []
        for key, c in sorted(
            t.terms.items(),
            key=lambda kv: (-sum(len(w) for w in kv[0]), kv[0]),
        ):
            if t.rank == 0:
                body = str(c)
                word = ""
            else:
                word = " (x) ".join(self.pres.word_str(w) for w in key)
            if t.rank > 0:
                if c == T_ONE:
                    body = word
                elif c == TPoly((Scalar(-1),)):
                    body = f"- {word}"
                else:
                    cs = self.format_poly_coeff(c)
                    if all(len(w) == 0 for w in key) and t.rank == 1:
                        body = str(c)
                    elif t.rank > 1:
                        body = f"{cs} ({word})"
                    else:
                        body = f"{cs} {word}"
            if parts:
                if body.startswith("-"):
                    rest = body[2:] if body.startswith("- ") else body[1:]
                    parts.append("- " + rest)
                else:
                    parts.append("+ " + body)
            else:
                parts.append(body)
        return " ".join(parts)


def normal_form(alg: Algebra, symbols) -> Tensor:
    """Free-function form of Algebra.normal_form."""
    return alg.normal_form(symbols)


def mul(alg: Algebra, a: Tensor, b: Tensor) -> Tensor:
    return alg.mul(a, b)


def involution(alg: Algebra, a: Tensor) -> Tensor:
    return alg.involution(a)


def antipode(alg: Algebra, a: Tensor) -> Tensor:
    return alg.antipode(a)
